#include "restore/compose.hpp"

#include "restore/kernels.hpp"

#include <cmath>
#include <string>

namespace restore {

namespace {

void require_same_size(const Raster& a, int w, int h, const char* op) {
    if (a.width() != w || a.height() != h) {
        throw InvalidArgument(std::string(op) + ": dimension mismatch " +
                              std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                              " vs " + std::to_string(w) + "x" + std::to_string(h));
    }
}

kernels::BlendKind to_kernel(BlendMode mode) {
    switch (mode) {
        case BlendMode::Alpha: return kernels::BlendKind::Alpha;
        case BlendMode::MultiplyDarken: return kernels::BlendKind::MultiplyDarken;
        case BlendMode::Min: return kernels::BlendKind::Min;
    }
    return kernels::BlendKind::Alpha;
}

}  // namespace

std::optional<BlendMode> parse_blend_mode(std::string_view name) noexcept {
    if (name == "alpha") return BlendMode::Alpha;
    if (name == "multiply_darken") return BlendMode::MultiplyDarken;
    if (name == "min") return BlendMode::Min;
    return std::nullopt;
}

std::string_view blend_mode_name(BlendMode mode) noexcept {
    switch (mode) {
        case BlendMode::Alpha: return "alpha";
        case BlendMode::MultiplyDarken: return "multiply_darken";
        case BlendMode::Min: return "min";
    }
    return "alpha";
}

Raster blend(const Raster& a, const Raster& b, BlendMode mode, double alpha) {
    require_same_size(a, b.width(), b.height(), "blend");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("blend alpha must lie in [0,1]");
    Field out(a.width(), a.height());
    kernels::omp::blend(a.values(), b.values(), to_kernel(mode), alpha, out.values());
    return Raster::from_field(std::move(out));
}

Raster overlay_edges(const Raster& img, const EdgeMap& e, double gain) {
    require_same_size(img, e.width(), e.height(), "overlay_edges");
    if (!(gain >= 0.0) || !std::isfinite(gain)) throw InvalidArgument("edge gain must be >= 0");
    Field out(img.width(), img.height());
    kernels::omp::overlay_edges(img.values(), e.values(), gain, out.values());
    return Raster::from_field(std::move(out));
}

Raster bas_relief(const Raster& img, const BasReliefParams& p) {
    if (std::abs(p.dx) > kMaxReliefOffset || std::abs(p.dy) > kMaxReliefOffset) {
        throw InvalidArgument("bas_relief offset must satisfy |dx|,|dy| <= " +
                              std::to_string(kMaxReliefOffset));
    }
    if (!(p.depth >= 0.0) || !std::isfinite(p.depth)) throw InvalidArgument("bas_relief depth must be >= 0");
    if (!std::isfinite(p.bias)) throw InvalidArgument("bas_relief bias must be finite");
    Field out(img.width(), img.height());
    kernels::omp::bas_relief(img.field(), p.dx, p.dy, p.depth, p.bias, out);
    return Raster::from_field(std::move(out));
}

Raster enhance_text(const Raster& img, const EnhanceParams& p) {
    if (!(p.mix >= 0.0 && p.mix <= 1.0)) throw InvalidArgument("enhance mix must lie in [0,1]");
    const double t = p.threshold ? *p.threshold : otsu_threshold(histogram(img));
    const Raster letters = threshold_binary(img, t);
    const EdgeMap edges = dipole_edge_map(img, p.radius);
    const Raster softened = blend(img, letters, BlendMode::Alpha, 0.5);
    const Raster strokes = overlay_edges(blend(img, softened, BlendMode::Min, 0.0), edges, p.edge_gain);
    return blend(img, strokes, BlendMode::Alpha, p.mix);
}

}  // namespace restore
