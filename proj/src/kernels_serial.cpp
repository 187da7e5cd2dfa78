#include "restore/kernels.hpp"

#include "kernel_math.hpp"

#include <algorithm>

namespace restore::kernels::serial {

void dipole_magnitude(const Field& in, int radius, double norm, Field& out) {
    const auto at = [&in](int x, int y) { return in.clamped(x, y); };
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            out(x, y) = detail::moment_magnitude(detail::window_moment(at, x, y, radius), norm);
        }
    }
}

void histogram(std::span<const double> values, int bins, std::span<std::uint64_t> counts) {
    std::fill(counts.begin(), counts.end(), 0);
    for (double v : values) ++counts[detail::histogram_bin(v, bins)];
}

void threshold(std::span<const double> in, double t, std::span<double> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = detail::threshold_pixel(in[i], t);
}

void blend(std::span<const double> a, std::span<const double> b, BlendKind kind, double alpha,
           std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::blend_pixel(a[i], b[i], kind, alpha);
}

void overlay_edges(std::span<const double> img, std::span<const double> edges, double gain,
                   std::span<double> out) {
    for (std::size_t i = 0; i < img.size(); ++i)
        out[i] = detail::overlay_pixel(img[i], edges[i], gain);
}

void bas_relief(const Field& in, int dx, int dy, double depth, double bias, Field& out) {
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            out(x, y) = detail::relief_pixel(in(x, y), in.clamped(x + dx, y + dy), depth, bias);
        }
    }
}

void stretch(std::span<const double> in, double in_lo, double in_hi, double lo, double hi,
             std::span<double> out) {
    for (std::size_t i = 0; i < in.size(); ++i)
        out[i] = detail::stretch_pixel(in[i], in_lo, in_hi, lo, hi);
}

}  // namespace restore::kernels::serial
