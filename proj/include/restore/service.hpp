#pragma once

#include "restore/session.hpp"

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace restore {

struct ServiceConfig {
    /// Largest accepted width or height of an upload (413 beyond).
    int max_dim = 8192;
    /// Request body cap in bytes (413 beyond).
    std::size_t max_body_bytes = std::size_t{256} << 20;
    SessionLimits session;
    /// Static UI bundle served at "/".
    std::optional<std::filesystem::path> ui_dir;
};

/// HTTP/1.1 JSON API over the core library for the interactive workbench.
///
///   GET  /api/v1/health
///   POST /api/v1/images                       body: PNG/PGM bytes (raw or multipart)
///   GET  /api/v1/images/{id}?format=png|pgm
///   GET  /api/v1/images/{id}/spectrum?log=1   X-Spectrum-Width/Height headers
///   POST /api/v1/images/{id}/ops              {"op", "params", "inputs": [ids]}
///   POST /api/v1/images/{id}/fourier-filter   multipart field "mask" (or raw body)
///   GET  /api/v1/images/{id}/pipeline
///   GET  /api/v1/blobs/{sha256}
class WorkbenchService {
public:
    explicit WorkbenchService(ServiceConfig config = {});
    ~WorkbenchService();
    WorkbenchService(const WorkbenchService&) = delete;
    WorkbenchService& operator=(const WorkbenchService&) = delete;

    /// Binds to an ephemeral port and returns it (-1 on failure).
    int bind_any_port(const std::string& host = "127.0.0.1");
    bool bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    bool serve();
    void stop();
    void wait_until_ready() const;

    SessionStore& store() noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace restore
