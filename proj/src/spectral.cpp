#include "restore/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

namespace restore {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer allocate(std::size_t n) {
    auto* p = fftw_alloc_complex(n);
    if (!p) throw Error("FFT buffer allocation failed");
    return FftwBuffer(p);
}

// Allocating both buffers with fftw_malloc keeps their alignment, and hence
// the planner's choice under FFTW_ESTIMATE, fixed for a given size.
void transform_2d(int width, int height, fftw_complex* in, fftw_complex* out, int sign) {
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_2d(height, width, in, out, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw Error("FFT planning failed");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

std::string dims(int w, int h) { return std::to_string(w) + "x" + std::to_string(h); }

}  // namespace

Spectrum::Spectrum(int width, int height, int orig_width, int orig_height,
                   std::vector<std::complex<double>> coefficients)
    : width_(width),
      height_(height),
      orig_width_(orig_width),
      orig_height_(orig_height),
      coefficients_(std::move(coefficients)) {
    if (width < 2 || height < 2 || (width & 1) || (height & 1)) {
        throw InvalidArgument("spectrum dimensions must be even, got " + dims(width, height));
    }
    if (orig_width < 1 || orig_height < 1 || orig_width > width || orig_height > height) {
        throw InvalidArgument("spectrum original dimensions out of range");
    }
    if (coefficients_.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidArgument("spectrum coefficient count mismatch");
    }
}

const std::complex<double>& Spectrum::at_frequency(int u, int v) const noexcept {
    const int x = ((center_x() + u) % width_ + width_) % width_;
    const int y = ((center_y() + v) % height_ + height_) % height_;
    return (*this)(x, y);
}

FilterMask::FilterMask(int width, int height, std::vector<double> attenuation)
    : width_(width), height_(height), attenuation_(std::move(attenuation)) {
    if (width < 1 || height < 1) throw InvalidArgument("mask dimensions must be positive");
    if (attenuation_.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidArgument("mask value count mismatch");
    }
    for (double a : attenuation_) {
        if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("mask attenuation outside [0,1]");
    }
}

FilterMask operator*(const FilterMask& a, const FilterMask& b) {
    if (a.width_ != b.width_ || a.height_ != b.height_) {
        throw InvalidArgument("mask product needs equal dimensions");
    }
    std::vector<double> out(a.attenuation_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.attenuation_[i] * b.attenuation_[i];
    return FilterMask(a.width_, a.height_, std::move(out));
}

Spectrum forward_spectrum(const Field& f) {
    const int w = padded_extent(f.width());
    const int h = padded_extent(f.height());
    const auto n = static_cast<std::size_t>(w) * h;
    auto in = allocate(n);
    auto out = allocate(n);
    std::fill_n(&in[0][0], 2 * n, 0.0);
    for (int y = 0; y < f.height(); ++y) {
        for (int x = 0; x < f.width(); ++x) in[static_cast<std::size_t>(y) * w + x][0] = f(x, y);
    }
    transform_2d(w, h, in.get(), out.get(), FFTW_FORWARD);

    std::vector<std::complex<double>> shifted(n);
    for (int y = 0; y < h; ++y) {
        const int sy = (y + h / 2) % h;
        for (int x = 0; x < w; ++x) {
            const int sx = (x + w / 2) % w;
            const auto& c = out[static_cast<std::size_t>(y) * w + x];
            shifted[static_cast<std::size_t>(sy) * w + sx] = {c[0], c[1]};
        }
    }
    return Spectrum(w, h, f.width(), f.height(), std::move(shifted));
}

Spectrum forward_spectrum(const Raster& r) { return forward_spectrum(r.field()); }

InverseResult inverse_spectrum_raw(const Spectrum& s) {
    const int w = s.width();
    const int h = s.height();
    const auto n = static_cast<std::size_t>(w) * h;
    auto in = allocate(n);
    auto out = allocate(n);
    for (int y = 0; y < h; ++y) {
        const int sy = (y + h / 2) % h;
        for (int x = 0; x < w; ++x) {
            const int sx = (x + w / 2) % w;
            const auto& c = s(sx, sy);
            in[static_cast<std::size_t>(y) * w + x][0] = c.real();
            in[static_cast<std::size_t>(y) * w + x][1] = c.imag();
        }
    }
    transform_2d(w, h, in.get(), out.get(), FFTW_BACKWARD);

    const double scale = 1.0 / static_cast<double>(n);
    InverseResult result{Field(s.orig_width(), s.orig_height()), 0.0};
    for (int y = 0; y < s.orig_height(); ++y) {
        for (int x = 0; x < s.orig_width(); ++x) {
            const auto& c = out[static_cast<std::size_t>(y) * w + x];
            result.real(x, y) = c[0] * scale;
            result.max_abs_imag = std::max(result.max_abs_imag, std::abs(c[1] * scale));
        }
    }
    return result;
}

Raster inverse_spectrum(const Spectrum& s, InverseMode mode) {
    auto raw = inverse_spectrum_raw(s);
    return mode == InverseMode::Renormalize ? normalize_to_unit(raw.real)
                                            : Raster::clamped(std::move(raw.real));
}

Raster spectrum_magnitude_view(const Spectrum& s, bool log_scale) {
    Field mag(s.width(), s.height());
    auto out = mag.values();
    const auto coeffs = s.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double m = std::abs(coeffs[i]);
        out[i] = log_scale ? std::log1p(m) : m;
    }
    return normalize_to_unit(mag);
}

FilterMask make_highpass_mask(int width, int height, double cutoff, double softness) {
    if (!(cutoff >= 0.0)) throw InvalidArgument("highpass cutoff must be >= 0");
    if (!(softness >= 0.0)) throw InvalidArgument("highpass softness must be >= 0");
    if (width < 1 || height < 1) throw InvalidArgument("mask dimensions must be positive");
    const int cx = width / 2;
    const int cy = height / 2;
    std::vector<double> values(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            const double r = std::sqrt(dx * dx + dy * dy);
            double a;
            if (r < cutoff) {
                a = 0.0;
            } else if (r >= cutoff + softness) {
                a = 1.0;
            } else {
                const double t = (r - cutoff) / softness;
                a = t * t * (3.0 - 2.0 * t);
            }
            values[static_cast<std::size_t>(y) * width + x] = a;
        }
    }
    return FilterMask(width, height, std::move(values));
}

FilterMask make_axis_notch_mask(int width, int height, FrequencyAxis /*axis*/, int half_width,
                                double guard_radius) {
    if (half_width < 0) throw InvalidArgument("notch half_width must be >= 0");
    if (!(guard_radius >= 0.0)) throw InvalidArgument("notch guard radius must be >= 0");
    if (width < 1 || height < 1) throw InvalidArgument("mask dimensions must be positive");
    const int cx = width / 2;
    const int cy = height / 2;
    std::vector<double> values(static_cast<std::size_t>(width) * height, 1.0);
    for (int y = std::max(0, cy - half_width); y <= std::min(height - 1, cy + half_width); ++y) {
        for (int x = 0; x < width; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            if (std::sqrt(dx * dx + dy * dy) > guard_radius) {
                values[static_cast<std::size_t>(y) * width + x] = 0.0;
            }
        }
    }
    return FilterMask(width, height, std::move(values));
}

FilterMask mask_from_raster(const Raster& m, int width, int height) {
    if (m.width() != width || m.height() != height) {
        throw InvalidArgument("mask is " + dims(m.width(), m.height()) + " but the spectrum is " +
                              dims(width, height));
    }
    return FilterMask(width, height, {m.values().begin(), m.values().end()});
}

Raster mask_to_raster(const FilterMask& m) {
    return Raster::from_values(m.width(), m.height(), {m.values().begin(), m.values().end()});
}

Spectrum apply_mask(const Spectrum& s, const FilterMask& m) {
    if (m.width() != s.width() || m.height() != s.height()) {
        throw InvalidArgument("mask is " + dims(m.width(), m.height()) + " but the spectrum is " +
                              dims(s.width(), s.height()));
    }
    std::vector<std::complex<double>> out(s.coefficients().begin(), s.coefficients().end());
    const auto atten = m.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= atten[i];
    return Spectrum(s.width(), s.height(), s.orig_width(), s.orig_height(), std::move(out));
}

Raster fourier_filter(const Raster& r, const FilterMask& m, InverseMode mode) {
    return inverse_spectrum(apply_mask(forward_spectrum(r), m), mode);
}

}  // namespace restore
