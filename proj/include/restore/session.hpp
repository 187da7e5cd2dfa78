#pragma once

#include "restore/codec.hpp"
#include "restore/pipeline.hpp"
#include "restore/raster.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace restore {

/// Metadata of one workbench image. Roots come from uploads and reference
/// the uploaded bytes by content hash; derived images record the op that
/// produced them.
struct SessionImage {
    std::string id;
    std::uint64_t seq = 0;
    int width = 0;
    int height = 0;
    std::string op;  // empty for roots
    nlohmann::json params = nlohmann::json::object();
    std::vector<std::string> inputs;  // parent ids, in op input order
    std::string blob;                 // roots only: sha256 of uploaded bytes
    ImageFormat blob_format = ImageFormat::Png;

    bool is_root() const noexcept { return op.empty(); }
    std::optional<std::string> parent() const {
        return inputs.empty() ? std::nullopt : std::optional(inputs.front());
    }
};

struct SessionLimits {
    std::size_t max_images = 10000;
    /// Rasters kept in memory; older ones move to the spill directory.
    /// Ignored without a spill directory.
    std::size_t max_resident = 256;
    std::optional<std::filesystem::path> spill_dir;
};

class StoreFull : public Error {
public:
    using Error::Error;
};

/// Thread-safe map of immutable images plus content-addressed blobs.
class SessionStore {
public:
    explicit SessionStore(SessionLimits limits = {});

    std::string add_root(std::vector<std::uint8_t> bytes, ImageFormat format, Raster raster);
    std::string add_derived(std::string op, nlohmann::json params, std::vector<std::string> inputs,
                            Raster raster);

    std::optional<SessionImage> find(const std::string& id) const;
    /// nullptr for unknown ids.
    std::shared_ptr<const Raster> raster(const std::string& id) const;
    std::optional<std::vector<std::uint8_t>> blob(const std::string& sha256) const;

    /// Provenance chain of `id` as a replayable pipeline. Roots become
    /// inputs at "blobs/<sha256><ext>", the image itself is the single
    /// output "result.png".
    std::optional<PipelineSpec> export_pipeline(const std::string& id) const;

    std::size_t size() const;

private:
    struct Slot {
        SessionImage meta;
        mutable std::shared_ptr<const Raster> resident;
    };

    std::string insert(SessionImage meta, Raster raster);
    void spill_excess() const;  // requires mutex_
    std::filesystem::path spill_path(const std::string& id) const;

    SessionLimits limits_;
    mutable std::mutex mutex_;
    std::map<std::string, Slot> images_;
    std::map<std::string, std::vector<std::uint8_t>> blobs_;
    mutable std::deque<std::string> resident_order_;
    std::uint64_t next_seq_ = 1;
    std::uint64_t salt_;
};

}  // namespace restore
