#pragma once

#include "restore/raster.hpp"

#include <complex>
#include <span>
#include <vector>

namespace restore {

/// Smallest even extent >= n. Images are zero-padded to this before the
/// transform so DC sits unambiguously at (width/2, height/2).
constexpr int padded_extent(int n) noexcept { return n + (n & 1); }

/// DC-centered 2D DFT of a zero-padded raster. Forward is unnormalized;
/// the inverse carries the 1/N.
class Spectrum {
public:
    Spectrum(int width, int height, int orig_width, int orig_height,
             std::vector<std::complex<double>> coefficients);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int orig_width() const noexcept { return orig_width_; }
    int orig_height() const noexcept { return orig_height_; }
    int center_x() const noexcept { return width_ / 2; }
    int center_y() const noexcept { return height_ / 2; }

    /// Array-position access; (center_x(), center_y()) is DC.
    const std::complex<double>& operator()(int x, int y) const noexcept {
        return coefficients_[index(x, y)];
    }
    /// Access by signed frequency offset from DC, wrapping modulo the extent.
    const std::complex<double>& at_frequency(int u, int v) const noexcept;

    std::span<const std::complex<double>> coefficients() const noexcept { return coefficients_; }

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    int orig_width_;
    int orig_height_;
    std::vector<std::complex<double>> coefficients_;
};

/// Real attenuation field in [0,1], aligned with a DC-centered Spectrum.
class FilterMask {
public:
    FilterMask(int width, int height, std::vector<double> attenuation);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double operator()(int x, int y) const noexcept {
        return attenuation_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::span<const double> values() const noexcept { return attenuation_; }

    /// Pointwise product; applying the product equals applying both in turn.
    friend FilterMask operator*(const FilterMask& a, const FilterMask& b);

private:
    int width_;
    int height_;
    std::vector<double> attenuation_;
};

enum class InverseMode { Renormalize, Clamp };

struct InverseResult {
    Field real;             // cropped to the original dimensions, unclamped
    double max_abs_imag;    // largest discarded imaginary residue
};

Spectrum forward_spectrum(const Field& f);
Spectrum forward_spectrum(const Raster& r);

/// Un-shift, inverse DFT, real part, crop. No range handling.
InverseResult inverse_spectrum_raw(const Spectrum& s);
Raster inverse_spectrum(const Spectrum& s, InverseMode mode);

/// |C| (or ln(1 + |C|)) stretched onto [0,1].
Raster spectrum_magnitude_view(const Spectrum& s, bool log_scale);

/// Radial high-pass about DC: 0 for radius < cutoff, 1 for radius >=
/// cutoff + softness, smoothstep in between.
FilterMask make_highpass_mask(int width, int height, double cutoff, double softness);

enum class FrequencyAxis { Horizontal };

/// Zeroes the band |v - v_center| <= half_width along the horizontal
/// frequency axis, except inside the guard disc around DC. Vertical
/// spatial lines concentrate their energy on this axis.
FilterMask make_axis_notch_mask(int width, int height, FrequencyAxis axis, int half_width,
                                double guard_radius);

/// Attenuation = pixel value, verbatim. Dimensions must equal the target
/// spectrum's.
FilterMask mask_from_raster(const Raster& m, int width, int height);
Raster mask_to_raster(const FilterMask& m);

Spectrum apply_mask(const Spectrum& s, const FilterMask& m);

/// forward -> apply_mask -> inverse.
Raster fourier_filter(const Raster& r, const FilterMask& m, InverseMode mode);

}  // namespace restore
