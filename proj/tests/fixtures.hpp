#pragma once

// Synthetic fixtures and independent oracles shared by the unit and
// acceptance suites. Nothing here calls into the code paths it checks.

#include "restore/edge.hpp"
#include "restore/raster.hpp"
#include "restore/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace restore::testing {

inline Raster random_raster(int w, int h, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (auto& x : v) x = u(rng);
    return Raster::from_values(w, h, std::move(v));
}

/// Values k/256 with k in [lo, hi]. Sums of such values times small
/// integers are exact in double precision.
inline Raster random_dyadic_raster(int w, int h, std::mt19937_64& rng, int lo = 0, int hi = 256) {
    std::uniform_int_distribution<int> k(lo, hi);
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (auto& x : v) x = k(rng) / 256.0;
    return Raster::from_values(w, h, std::move(v));
}

inline Raster constant_raster(int w, int h, double value) { return Raster(w, h, value); }

/// 0 for x < step_x, 1 for x >= step_x.
inline Raster vertical_step(int w, int h, int step_x) {
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) v[static_cast<std::size_t>(y) * w + x] = x >= step_x ? 1.0 : 0.0;
    return Raster::from_values(w, h, std::move(v));
}

/// 0.5 + amplitude * cos(2 pi x / period): vertical lines.
inline Raster vertical_grating(int w, int h, int period, double amplitude = 0.5) {
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            v[static_cast<std::size_t>(y) * w + x] =
                std::clamp(0.5 + amplitude * std::cos(2 * std::numbers::pi * x / period), 0.0, 1.0);
    return Raster::from_values(w, h, std::move(v));
}

inline Raster add_constant(const Raster& r, double c) {
    std::vector<double> v(r.values().begin(), r.values().end());
    for (auto& x : v) x += c;
    return Raster::from_values(r.width(), r.height(), std::move(v));
}

inline Raster mirror_x(const Raster& r) {
    std::vector<double> v(r.size());
    for (int y = 0; y < r.height(); ++y)
        for (int x = 0; x < r.width(); ++x)
            v[static_cast<std::size_t>(y) * r.width() + x] = r(r.width() - 1 - x, y);
    return Raster::from_values(r.width(), r.height(), std::move(v));
}

// ---------------------------------------------------------------------------
// Synthetic papyrus: base tone, vertical fiber grating, dark glyph strokes
// (ink darkens additively, so the fibers stay visible through it), noise.

struct Papyrus {
    Raster image;        // with grating
    Raster clean;        // identical but without the grating
    std::vector<std::uint8_t> glyph;  // 1 on stroke pixels
    int width;
    int height;
};

struct PapyrusParams {
    int size = 512;
    double base = 0.75;
    double grating_amplitude = 0.2;
    int grating_period = 8;
    double stroke = 0.2;
    double noise_sigma = 0.02;
    std::uint64_t seed = 7;
};

inline void stamp_disc(std::vector<std::uint8_t>& mask, int w, int h, double cx, double cy, double r) {
    for (int y = static_cast<int>(cy - r - 1); y <= static_cast<int>(cy + r + 1); ++y)
        for (int x = static_cast<int>(cx - r - 1); x <= static_cast<int>(cx + r + 1); ++x)
            if (x >= 0 && y >= 0 && x < w && y < h && (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r)
                mask[static_cast<std::size_t>(y) * w + x] = 1;
}

inline void stamp_line(std::vector<std::uint8_t>& mask, int w, int h, double x0, double y0, double x1,
                       double y1, double pen) {
    const int steps = static_cast<int>(std::hypot(x1 - x0, y1 - y0) * 2) + 1;
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        stamp_disc(mask, w, h, x0 + t * (x1 - x0), y0 + t * (y1 - y0), pen);
    }
}

/// Uncial-like glyphs: each a random combination of bars, diagonals, and
/// bowls in a 16x22 cell, laid out in text lines.
inline std::vector<std::uint8_t> glyph_mask(int w, int h, std::mt19937_64& rng) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 0);
    std::uniform_int_distribution<int> shape(0, 5);
    std::uniform_int_distribution<int> jitter(-2, 2);
    const double pen = 1.2;
    for (int line_y = 24; line_y + 30 < h; line_y += 44) {
        for (int cell_x = 16 + jitter(rng); cell_x + 20 < w; cell_x += 22 + jitter(rng)) {
            const double x0 = cell_x;
            const double y0 = line_y;
            const double x1 = cell_x + 14;
            const double y1 = line_y + 22;
            const int strokes = 1 + shape(rng) % 3;
            for (int s = 0; s < strokes; ++s) {
                switch (shape(rng)) {
                    case 0: stamp_line(mask, w, h, x0, y0, x0, y1, pen); break;
                    case 1: stamp_line(mask, w, h, x1, y0, x1, y1, pen); break;
                    case 2: stamp_line(mask, w, h, x0, y0, x1, y1, pen); break;
                    case 3: stamp_line(mask, w, h, x0, (y0 + y1) / 2, x1, (y0 + y1) / 2, pen); break;
                    case 4: stamp_line(mask, w, h, x0, y1, x1, y0, pen); break;
                    default: {
                        const double cx = (x0 + x1) / 2;
                        const double cy = (y0 + y1) / 2;
                        for (int a = 0; a < 64; ++a) {
                            const double th = 2 * std::numbers::pi * a / 64;
                            stamp_disc(mask, w, h, cx + 7 * std::cos(th), cy + 10 * std::sin(th), pen);
                        }
                    }
                }
            }
        }
    }
    return mask;
}

inline Papyrus make_papyrus(const PapyrusParams& p = {}) {
    std::mt19937_64 rng(p.seed);
    const int w = p.size;
    const int h = p.size;
    auto mask = glyph_mask(w, h, rng);
    std::normal_distribution<double> noise(0.0, p.noise_sigma);
    std::vector<double> with(static_cast<std::size_t>(w) * h);
    std::vector<double> without(with.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto i = static_cast<std::size_t>(y) * w + x;
            const double ink = mask[i] ? (p.stroke - p.base) : 0.0;
            const double n = noise(rng);
            const double fibers = p.grating_amplitude * std::cos(2 * std::numbers::pi * x / p.grating_period);
            with[i] = std::clamp(p.base + fibers + ink + n, 0.0, 1.0);
            without[i] = std::clamp(p.base + ink + n, 0.0, 1.0);
        }
    }
    return {Raster::from_values(w, h, std::move(with)), Raster::from_values(w, h, std::move(without)),
            std::move(mask), w, h};
}

/// Pixels within Chebyshev distance [inner, outer] of a glyph pixel but not
/// on a glyph: the local background ring around strokes.
inline std::vector<std::uint8_t> background_ring(const std::vector<std::uint8_t>& glyph, int w, int h,
                                                 int inner, int outer) {
    std::vector<int> dist(glyph.size(), 1 << 20);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!glyph[static_cast<std::size_t>(y) * w + x]) continue;
            for (int dy = -outer; dy <= outer; ++dy)
                for (int dx = -outer; dx <= outer; ++dx) {
                    const int xx = x + dx;
                    const int yy = y + dy;
                    if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
                    auto& d = dist[static_cast<std::size_t>(yy) * w + xx];
                    d = std::min(d, std::max(std::abs(dx), std::abs(dy)));
                }
        }
    std::vector<std::uint8_t> ring(glyph.size(), 0);
    for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = !glyph[i] && dist[i] >= inner && dist[i] <= outer;
    return ring;
}

inline double masked_mean(const Raster& r, const std::vector<std::uint8_t>& mask) {
    double s = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) {
            s += r.values()[i];
            ++n;
        }
    return n ? s / n : 0.0;
}

/// |mean(stroke) - mean(local background ring at 3..6 px)|.
inline double stroke_contrast(const Raster& r, const std::vector<std::uint8_t>& glyph) {
    const auto ring = background_ring(glyph, r.width(), r.height(), 3, 6);
    return std::abs(masked_mean(r, glyph) - masked_mean(r, ring));
}

// ---------------------------------------------------------------------------
// Oracles.

/// Raw first moment, straight from the definition: sum over the full square
/// window of I(p + (i, j)) * i (resp. j), replicate padding.
inline DipoleMoment naive_dipole(const Raster& r, int x, int y, int radius) {
    DipoleMoment m;
    for (int i = -radius; i <= radius; ++i) {
        for (int j = -radius; j <= radius; ++j) {
            const int xx = std::clamp(x + i, 0, r.width() - 1);
            const int yy = std::clamp(y + j, 0, r.height() - 1);
            m.dx += r(xx, yy) * i;
            m.dy += r(xx, yy) * j;
        }
    }
    return m;
}

inline std::vector<double> naive_edge_map(const Raster& r, int radius) {
    const double norm = (2.0 * radius + 1) * radius * (radius + 1) / 2.0;
    std::vector<double> out(r.size());
    for (int y = 0; y < r.height(); ++y)
        for (int x = 0; x < r.width(); ++x) {
            const auto m = naive_dipole(r, x, y, radius);
            out[static_cast<std::size_t>(y) * r.width() + x] =
                std::min(1.0, std::sqrt(m.dx * m.dx + m.dy * m.dy) / norm);
        }
    return out;
}

/// Exhaustive Otsu: for every split, class weights and means computed from
/// scratch; returns the center of the last dark bin of the first maximum.
inline double exhaustive_otsu(const Histogram& h) {
    const int bins = h.bin_count();
    int occupied = 0;
    int only = 0;
    for (int i = 0; i < bins; ++i)
        if (h.counts[i]) {
            ++occupied;
            only = i;
        }
    if (occupied == 1) return (only + 0.5) / bins;
    double best = -1;
    int best_k = 0;
    for (int k = 0; k + 1 < bins; ++k) {
        double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
        for (int i = 0; i < bins; ++i) {
            if (i <= k) {
                n0 += h.counts[i];
                s0 += static_cast<double>(i) * h.counts[i];
            } else {
                n1 += h.counts[i];
                s1 += static_cast<double>(i) * h.counts[i];
            }
        }
        if (n0 == 0 || n1 == 0) continue;
        const double n = n0 + n1;
        const double w0 = n0 / n;
        const double w1 = n1 / n;
        const double d = s0 / n0 - s1 / n1;
        const double var = w0 * w1 * d * d;
        if (var > best) {
            best = var;
            best_k = k;
        }
    }
    return (best_k + 0.5) / bins;
}

/// Direct O(N^2) DFT of the zero-padded field, returned DC-centered.
inline std::vector<std::complex<double>> naive_centered_dft(const Field& f) {
    const int w = padded_extent(f.width());
    const int h = padded_extent(f.height());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(w) * h);
    for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) {
            std::complex<double> acc = 0;
            for (int y = 0; y < f.height(); ++y)
                for (int x = 0; x < f.width(); ++x) {
                    const double phase = -2 * std::numbers::pi * (static_cast<double>(u) * x / w +
                                                                  static_cast<double>(v) * y / h);
                    acc += f(x, y) * std::complex<double>(std::cos(phase), std::sin(phase));
                }
            const int sx = (u + w / 2) % w;
            const int sy = (v + h / 2) % h;
            out[static_cast<std::size_t>(sy) * w + sx] = acc;
        }
    return out;
}

inline double rms_difference(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s / static_cast<double>(a.size()));
}

}  // namespace restore::testing
