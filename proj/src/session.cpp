#include "restore/session.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

namespace restore {

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_raw(const std::filesystem::path& path, const Raster& r) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    const std::int32_t dims[2] = {r.width(), r.height()};
    out.write(reinterpret_cast<const char*>(dims), sizeof dims);
    out.write(reinterpret_cast<const char*>(r.values().data()),
              static_cast<std::streamsize>(r.size() * sizeof(double)));
    if (!out) throw Error("spill write failed: " + path.string());
}

Raster read_raw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::int32_t dims[2] = {0, 0};
    in.read(reinterpret_cast<char*>(dims), sizeof dims);
    std::vector<double> values(static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]));
    in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!in) throw Error("spill read failed: " + path.string());
    return Raster::from_values(dims[0], dims[1], std::move(values));
}

}  // namespace

SessionStore::SessionStore(SessionLimits limits)
    : limits_(std::move(limits)), salt_(std::random_device{}() | (std::uint64_t{std::random_device{}()} << 32)) {
    if (limits_.spill_dir) {
        std::filesystem::create_directories(*limits_.spill_dir / "rasters");
        std::filesystem::create_directories(*limits_.spill_dir / "blobs");
    }
}

std::filesystem::path SessionStore::spill_path(const std::string& id) const {
    return *limits_.spill_dir / "rasters" / (id + ".f64");
}

std::string SessionStore::insert(SessionImage meta, Raster raster) {
    std::lock_guard lock(mutex_);
    if (images_.size() >= limits_.max_images) {
        throw StoreFull("session holds the maximum of " + std::to_string(limits_.max_images) + " images");
    }
    meta.seq = next_seq_++;
    // Odd multiplier: bijective on 64 bits, so ids never collide.
    meta.id = "img-" + hex64((meta.seq * 0x9e3779b97f4a7c15ULL) ^ salt_);
    meta.width = raster.width();
    meta.height = raster.height();
    const std::string id = meta.id;
    images_.emplace(id, Slot{std::move(meta), std::make_shared<const Raster>(std::move(raster))});
    resident_order_.push_back(id);
    spill_excess();
    return id;
}

void SessionStore::spill_excess() const {
    if (!limits_.spill_dir) return;
    while (resident_order_.size() > limits_.max_resident) {
        const std::string victim = resident_order_.front();
        resident_order_.pop_front();
        const Slot& slot = images_.at(victim);
        if (!slot.resident) continue;
        const auto path = spill_path(victim);
        if (!std::filesystem::exists(path)) write_raw(path, *slot.resident);
        slot.resident.reset();
    }
}

std::string SessionStore::add_root(std::vector<std::uint8_t> bytes, ImageFormat format, Raster raster) {
    SessionImage meta;
    meta.blob = sha256_hex(bytes);
    meta.blob_format = format;
    {
        std::lock_guard lock(mutex_);
        if (limits_.spill_dir) {
            const auto path = *limits_.spill_dir / "blobs" / (meta.blob + std::string(format_extension(format)));
            if (!std::filesystem::exists(path)) write_file(path.string(), bytes);
        }
        blobs_.try_emplace(meta.blob, std::move(bytes));
    }
    return insert(std::move(meta), std::move(raster));
}

std::string SessionStore::add_derived(std::string op, nlohmann::json params,
                                      std::vector<std::string> inputs, Raster raster) {
    SessionImage meta;
    meta.op = std::move(op);
    meta.params = std::move(params);
    meta.inputs = std::move(inputs);
    return insert(std::move(meta), std::move(raster));
}

std::optional<SessionImage> SessionStore::find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    const auto it = images_.find(id);
    if (it == images_.end()) return std::nullopt;
    return it->second.meta;
}

std::shared_ptr<const Raster> SessionStore::raster(const std::string& id) const {
    std::lock_guard lock(mutex_);
    const auto it = images_.find(id);
    if (it == images_.end()) return nullptr;
    if (!it->second.resident) {
        it->second.resident = std::make_shared<const Raster>(read_raw(spill_path(id)));
        resident_order_.push_back(id);
        auto keep = it->second.resident;
        spill_excess();
        return keep;
    }
    return it->second.resident;
}

std::optional<std::vector<std::uint8_t>> SessionStore::blob(const std::string& sha256) const {
    std::lock_guard lock(mutex_);
    const auto it = blobs_.find(sha256);
    if (it == blobs_.end()) return std::nullopt;
    return it->second;
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return images_.size();
}

std::optional<PipelineSpec> SessionStore::export_pipeline(const std::string& id) const {
    std::lock_guard lock(mutex_);
    if (!images_.contains(id)) return std::nullopt;

    std::set<std::string> seen;
    std::vector<const SessionImage*> chain;
    std::vector<std::string> stack{id};
    while (!stack.empty()) {
        const std::string cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second) continue;
        const SessionImage& meta = images_.at(cur).meta;
        chain.push_back(&meta);
        for (const auto& parent : meta.inputs) stack.push_back(parent);
    }
    std::sort(chain.begin(), chain.end(),
              [](const SessionImage* a, const SessionImage* b) { return a->seq < b->seq; });

    const auto name_of = [this](const std::string& image_id) {
        const SessionImage& meta = images_.at(image_id).meta;
        return (meta.is_root() ? "in_" : "s_") + std::to_string(meta.seq);
    };

    PipelineSpec spec;
    for (const SessionImage* meta : chain) {
        if (meta->is_root()) {
            spec.inputs[name_of(meta->id)] =
                "blobs/" + meta->blob + std::string(format_extension(meta->blob_format));
            continue;
        }
        PipelineStep step;
        step.op = meta->op;
        step.params = meta->params;
        for (const auto& parent : meta->inputs) step.in.push_back(name_of(parent));
        step.out = name_of(meta->id);
        spec.steps.push_back(std::move(step));
    }
    spec.outputs[name_of(id)] = "result.png";
    return spec;
}

}  // namespace restore
