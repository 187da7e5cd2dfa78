#include "restore/kernels.hpp"

#include "kernel_math.hpp"

#include <omp.h>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace restore::kernels::omp {

namespace {

// Elementwise loops are split by index; OpenMP's static schedule keeps the
// per-element arithmetic identical to the serial path.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

}  // namespace

void dipole_magnitude(const Field& in, int radius, double norm, Field& out) {
    const int w = in.width();
    const int h = in.height();
    // Clamped column lookup covering x in [-radius, w + radius).
    std::vector<int> col_index(static_cast<std::size_t>(w + 2 * radius));
    for (int i = 0; i < w + 2 * radius; ++i) col_index[i] = std::clamp(i - radius, 0, w - 1);
    const auto data = in.values();

#pragma omp parallel
    {
        std::vector<const double*> rows(static_cast<std::size_t>(2 * radius + 1));
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            for (int k = -radius; k <= radius; ++k) {
                const int yy = std::clamp(y + k, 0, h - 1);
                rows[k + radius] = data.data() + static_cast<std::size_t>(yy) * w;
            }
            const auto at = [&](int sx, int sy) {
                return rows[sy - y + radius][col_index[sx + radius]];
            };
            for (int x = 0; x < w; ++x) {
                out(x, y) = detail::moment_magnitude(detail::window_moment(at, x, y, radius), norm);
            }
        }
    }
}

void histogram(std::span<const double> values, int bins, std::span<std::uint64_t> counts) {
    std::fill(counts.begin(), counts.end(), 0);
    const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(static_cast<std::size_t>(bins), 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) ++local[detail::histogram_bin(values[i], bins)];
#pragma omp critical
        for (int b = 0; b < bins; ++b) counts[b] += local[b];
    }
}

void threshold(std::span<const double> in, double t, std::span<double> out) {
    for_each_index(in.size(), [&](std::size_t i) { out[i] = detail::threshold_pixel(in[i], t); });
}

void blend(std::span<const double> a, std::span<const double> b, BlendKind kind, double alpha,
           std::span<double> out) {
    for_each_index(a.size(),
                   [&](std::size_t i) { out[i] = detail::blend_pixel(a[i], b[i], kind, alpha); });
}

void overlay_edges(std::span<const double> img, std::span<const double> edges, double gain,
                   std::span<double> out) {
    for_each_index(img.size(), [&](std::size_t i) {
        out[i] = detail::overlay_pixel(img[i], edges[i], gain);
    });
}

void bas_relief(const Field& in, int dx, int dy, double depth, double bias, Field& out) {
    const int h = in.height();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < in.width(); ++x) {
            out(x, y) = detail::relief_pixel(in(x, y), in.clamped(x + dx, y + dy), depth, bias);
        }
    }
}

void stretch(std::span<const double> in, double in_lo, double in_hi, double lo, double hi,
             std::span<double> out) {
    for_each_index(in.size(), [&](std::size_t i) {
        out[i] = detail::stretch_pixel(in[i], in_lo, in_hi, lo, hi);
    });
}

}  // namespace restore::kernels::omp
