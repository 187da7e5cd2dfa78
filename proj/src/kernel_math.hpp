#pragma once

// Per-pixel arithmetic shared by the serial and OpenMP kernels. Keeping a
// single definition is what makes the two paths bit-identical.

#include "restore/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace restore::kernels::detail {

inline double clamp01(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

struct Moment {
    double dx = 0.0;
    double dy = 0.0;
};

// First moment of the (2r+1)^2 window about its center, accumulated as
// d * (I(+d) - I(-d)) pairs. Any constant offset cancels inside each pair.
template <class Sample>
inline Moment window_moment(Sample&& at, int x, int y, int radius) noexcept {
    Moment m;
    for (int d = 1; d <= radius; ++d) {
        double col = 0.0;
        double row = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            col += at(x + d, y + k) - at(x - d, y + k);
            row += at(x + k, y + d) - at(x + k, y - d);
        }
        m.dx += d * col;
        m.dy += d * row;
    }
    return m;
}

inline double moment_magnitude(const Moment& m, double norm) noexcept {
    return std::min(1.0, std::sqrt(m.dx * m.dx + m.dy * m.dy) / norm);
}

inline int histogram_bin(double v, int bins) noexcept {
    const auto b = static_cast<int>(std::floor(v * bins));
    return std::clamp(b, 0, bins - 1);
}

inline double threshold_pixel(double v, double t) noexcept { return v > t ? 1.0 : 0.0; }

inline double blend_pixel(double a, double b, BlendKind kind, double alpha) noexcept {
    switch (kind) {
        case BlendKind::Alpha:
            return clamp01((1.0 - alpha) * a + alpha * b);
        case BlendKind::MultiplyDarken:
            return clamp01(a * (1.0 - alpha * (1.0 - b)));
        case BlendKind::Min:
            return clamp01(std::min(a, b));
    }
    return a;
}

inline double overlay_pixel(double img, double edge, double gain) noexcept {
    return clamp01(img * (1.0 - gain * edge));
}

inline double relief_pixel(double here, double there, double depth, double bias) noexcept {
    return clamp01(bias + depth * (here - there));
}

inline double stretch_pixel(double v, double in_lo, double in_hi, double lo,
                            double hi) noexcept {
    if (in_hi == in_lo) return 0.5 * (lo + hi);
    return std::clamp(lo + (v - in_lo) / (in_hi - in_lo) * (hi - lo), lo, hi);
}

}  // namespace restore::kernels::detail
