#include "restore/service.hpp"

#include "restore/codec.hpp"
#include "restore/registry.hpp"
#include "restore/spectral.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <exception>

namespace restore {

using nlohmann::json;

namespace {

constexpr const char* kIdPattern = "([A-Za-z0-9_-]+)";

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, {{"error", message}});
}

const char* mime_for(ImageFormat f) {
    return f == ImageFormat::Png ? "image/png" : "image/x-portable-graymap";
}

// Raw body, or the first (preferably `field`) part of a multipart form.
std::vector<std::uint8_t> body_bytes(const httplib::Request& req, const std::string& field) {
    if (req.is_multipart_form_data()) {
        if (req.has_file(field)) {
            const auto& content = req.get_file_value(field).content;
            return {content.begin(), content.end()};
        }
        if (!req.files.empty()) {
            const auto& content = req.files.begin()->second.content;
            return {content.begin(), content.end()};
        }
        return {};
    }
    return {req.body.begin(), req.body.end()};
}

}  // namespace

struct WorkbenchService::Impl {
    explicit Impl(ServiceConfig cfg) : config(std::move(cfg)), store(config.session) { routes(); }

    void routes();
    void upload(const httplib::Request& req, httplib::Response& res);
    void get_image(const httplib::Request& req, httplib::Response& res);
    void spectrum(const httplib::Request& req, httplib::Response& res);
    void run_op(const httplib::Request& req, httplib::Response& res);
    void fourier_filter(const httplib::Request& req, httplib::Response& res);
    void pipeline(const httplib::Request& req, httplib::Response& res);
    void blob(const httplib::Request& req, httplib::Response& res);

    // Runs a registered op on stored images and records the result.
    void derive(httplib::Response& res, const std::string& op_name, const json& params,
                const std::vector<std::string>& input_ids);

    ServiceConfig config;
    SessionStore store;
    httplib::Server server;
};

void WorkbenchService::Impl::routes() {
    server.set_payload_max_length(config.max_body_bytes);
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
            if (ep) std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            message = e.what();
        } catch (...) {
        }
        send_error(res, 500, message);
    });

    const std::string images = "/api/v1/images";
    const std::string one = images + "/" + kIdPattern;

    server.Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, {{"status", "ok"}});
    });
    server.Post(images, [this](const auto& req, auto& res) { upload(req, res); });
    server.Get(one, [this](const auto& req, auto& res) { get_image(req, res); });
    server.Get(one + "/spectrum", [this](const auto& req, auto& res) { spectrum(req, res); });
    server.Post(one + "/ops", [this](const auto& req, auto& res) { run_op(req, res); });
    server.Post(one + "/fourier-filter", [this](const auto& req, auto& res) { fourier_filter(req, res); });
    server.Get(one + "/pipeline", [this](const auto& req, auto& res) { pipeline(req, res); });
    server.Get(std::string("/api/v1/blobs/") + kIdPattern, [this](const auto& req, auto& res) { blob(req, res); });

    if (config.ui_dir) {
        server.set_mount_point("/", config.ui_dir->string());
    } else {
        server.Get("/", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(
                "<!doctype html><title>restore workbench</title>"
                "<p>No UI bundle configured (start with --ui-dir). The JSON API lives under /api/v1/.</p>",
                "text/html");
        });
    }
}

void WorkbenchService::Impl::upload(const httplib::Request& req, httplib::Response& res) {
    auto bytes = body_bytes(req, "image");
    ImageInfo info{};
    try {
        info = probe_image(bytes);
    } catch (const DecodeError& e) {
        return send_error(res, 400, e.what());
    }
    if (info.width > config.max_dim || info.height > config.max_dim) {
        return send_error(res, 413, "image is " + std::to_string(info.width) + "x" +
                                        std::to_string(info.height) + "; the limit is " +
                                        std::to_string(config.max_dim) + " per side");
    }
    std::optional<Raster> raster;
    try {
        raster.emplace(decode_image(bytes, info.format));
    } catch (const Error& e) {
        return send_error(res, 400, e.what());
    }
    const int w = raster->width();
    const int h = raster->height();
    try {
        const auto id = store.add_root(std::move(bytes), info.format, std::move(*raster));
        send_json(res, 200, {{"id", id}, {"width", w}, {"height", h}});
    } catch (const StoreFull& e) {
        send_error(res, 507, e.what());
    }
}

void WorkbenchService::Impl::get_image(const httplib::Request& req, httplib::Response& res) {
    const auto raster = store.raster(req.matches[1]);
    if (!raster) return send_error(res, 404, "unknown image id");
    const std::string fmt = req.has_param("format") ? req.get_param_value("format") : "png";
    if (fmt != "png" && fmt != "pgm") return send_error(res, 400, "format must be png or pgm");
    const auto format = fmt == "png" ? ImageFormat::Png : ImageFormat::Pgm;
    const auto bytes = encode_image(*raster, format);
    res.set_content(reinterpret_cast<const char*>(bytes.data()), bytes.size(), mime_for(format));
}

void WorkbenchService::Impl::spectrum(const httplib::Request& req, httplib::Response& res) {
    const auto raster = store.raster(req.matches[1]);
    if (!raster) return send_error(res, 404, "unknown image id");
    const bool log_scale = !req.has_param("log") || req.get_param_value("log") != "0";
    const Spectrum s = forward_spectrum(*raster);
    const auto bytes = encode_image(spectrum_magnitude_view(s, log_scale), ImageFormat::Png);
    res.set_header("X-Spectrum-Width", std::to_string(s.width()));
    res.set_header("X-Spectrum-Height", std::to_string(s.height()));
    res.set_content(reinterpret_cast<const char*>(bytes.data()), bytes.size(), "image/png");
}

void WorkbenchService::Impl::derive(httplib::Response& res, const std::string& op_name,
                                    const json& params, const std::vector<std::string>& input_ids) {
    const auto& registry = OpRegistry::instance();
    const OpSpec* op = registry.find(op_name);
    if (!op) return send_error(res, 422, "unknown op '" + op_name + "'");

    std::vector<std::shared_ptr<const Raster>> holders;
    std::vector<const Raster*> inputs;
    for (const auto& id : input_ids) {
        auto r = store.raster(id);
        if (!r) return send_error(res, 404, "unknown image id '" + id + "'");
        inputs.push_back(r.get());
        holders.push_back(std::move(r));
    }
    std::vector<std::string> issues;
    json normalized = registry.normalize_params(*op, params, "", issues);
    for (std::size_t k = inputs.size(); k < op->inputs.size(); ++k) {
        issues.push_back("op '" + op->name + "' is missing input '" + op->inputs[k] + "'");
    }
    if (inputs.size() > op->inputs.size()) {
        issues.push_back("op '" + op->name + "' takes " + std::to_string(op->inputs.size()) + " input(s)");
    }
    if (!issues.empty()) {
        return send_json(res, 422, {{"error", ValidationError(issues).what()}, {"issues", issues}});
    }
    try {
        Raster result = registry.run(op_name, inputs, normalized);
        const int w = result.width();
        const int h = result.height();
        const auto id = store.add_derived(op_name, std::move(normalized), input_ids, std::move(result));
        send_json(res, 200, {{"id", id}, {"width", w}, {"height", h}});
    } catch (const StoreFull& e) {
        send_error(res, 507, e.what());
    } catch (const Error& e) {
        send_error(res, 422, e.what());
    }
}

void WorkbenchService::Impl::run_op(const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (!store.find(id)) return send_error(res, 404, "unknown image id");
    json body;
    try {
        body = json::parse(req.body);
    } catch (const json::exception& e) {
        return send_error(res, 400, std::string("malformed JSON: ") + e.what());
    }
    if (!body.is_object() || !body.contains("op") || !body.at("op").is_string()) {
        return send_error(res, 422, "body must be an object with a string field 'op'");
    }
    std::vector<std::string> input_ids{id};
    if (body.contains("inputs")) {
        const json& extra = body.at("inputs");
        if (!extra.is_array()) return send_error(res, 422, "'inputs' must be a list of image ids");
        for (const auto& e : extra) {
            if (!e.is_string()) return send_error(res, 422, "'inputs' must be a list of image ids");
            input_ids.push_back(e.get<std::string>());
        }
    }
    derive(res, body.at("op").get<std::string>(), body.value("params", json::object()), input_ids);
}

void WorkbenchService::Impl::fourier_filter(const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    const auto meta = store.find(id);
    if (!meta) return send_error(res, 404, "unknown image id");
    auto bytes = body_bytes(req, "mask");
    std::optional<Raster> mask;
    ImageFormat format{};
    try {
        format = probe_image(bytes).format;
        mask.emplace(decode_image(bytes, format));
    } catch (const Error& e) {
        return send_error(res, 400, std::string("mask: ") + e.what());
    }
    const int want_w = padded_extent(meta->width);
    const int want_h = padded_extent(meta->height);
    if (mask->width() != want_w || mask->height() != want_h) {
        return send_json(res, 422, {{"error", "mask is " + std::to_string(mask->width()) + "x" +
                                                  std::to_string(mask->height()) + ", expected " +
                                                  std::to_string(want_w) + "x" + std::to_string(want_h)},
                                    {"expected_width", want_w},
                                    {"expected_height", want_h}});
    }
    std::string mask_id;
    try {
        mask_id = store.add_root(std::move(bytes), format, std::move(*mask));
    } catch (const StoreFull& e) {
        return send_error(res, 507, e.what());
    }
    derive(res, "fourier_filter", {{"renormalize", true}}, {id, mask_id});
}

void WorkbenchService::Impl::pipeline(const httplib::Request& req, httplib::Response& res) {
    const auto spec = store.export_pipeline(req.matches[1]);
    if (!spec) return send_error(res, 404, "unknown image id");
    send_json(res, 200, to_json(*spec));
}

void WorkbenchService::Impl::blob(const httplib::Request& req, httplib::Response& res) {
    const auto bytes = store.blob(req.matches[1]);
    if (!bytes) return send_error(res, 404, "unknown blob");
    const auto format = detect_format(*bytes).value_or(ImageFormat::Png);
    res.set_content(reinterpret_cast<const char*>(bytes->data()), bytes->size(), mime_for(format));
}

WorkbenchService::WorkbenchService(ServiceConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

WorkbenchService::~WorkbenchService() { stop(); }

int WorkbenchService::bind_any_port(const std::string& host) {
    return impl_->server.bind_to_any_port(host);
}

bool WorkbenchService::bind(const std::string& host, int port) {
    return impl_->server.bind_to_port(host, port);
}

bool WorkbenchService::serve() { return impl_->server.listen_after_bind(); }

void WorkbenchService::stop() {
    if (impl_) impl_->server.stop();
}

void WorkbenchService::wait_until_ready() const { impl_->server.wait_until_ready(); }

SessionStore& WorkbenchService::store() noexcept { return impl_->store; }

}  // namespace restore
