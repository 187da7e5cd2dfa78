#pragma once

#include "restore/edge.hpp"
#include "restore/raster.hpp"

#include <optional>
#include <string_view>

namespace restore {

enum class BlendMode { Alpha, MultiplyDarken, Min };

std::optional<BlendMode> parse_blend_mode(std::string_view name) noexcept;
std::string_view blend_mode_name(BlendMode mode) noexcept;

/// alpha:           (1 - alpha) * a + alpha * b
/// multiply_darken: a * (1 - alpha * (1 - b))
/// min:             min(a, b)
Raster blend(const Raster& a, const Raster& b, BlendMode mode, double alpha);

/// img * (1 - gain * E), clamped. Never brightens.
Raster overlay_edges(const Raster& img, const EdgeMap& e, double gain);

struct BasReliefParams {
    int dx = 1;
    int dy = 1;
    double depth = 1.0;
    double bias = 0.5;
};

inline constexpr int kMaxReliefOffset = 8;

/// bias + depth * (img(p) - img(p + (dx, dy))), clamped, replicate padding.
Raster bas_relief(const Raster& img, const BasReliefParams& params = {});

struct EnhanceParams {
    std::optional<double> threshold;  // nullopt: Otsu on a 256-bin histogram
    int radius = 2;
    double edge_gain = 0.8;
    double mix = 1.0;
};

/// Threshold + dipole-edge text enhancement:
///   letters  = threshold_binary(img, t)
///   softened = blend(img, letters, alpha, 0.5)
///   strokes  = overlay_edges(min(img, softened), dipole_edge_map(img, radius), edge_gain)
///   result   = blend(img, strokes, alpha, mix)
Raster enhance_text(const Raster& img, const EnhanceParams& params = {});

}  // namespace restore
