#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace restore {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller passed a value outside an operation's domain (bad parameter,
/// mismatched dimensions, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Real-valued row-major plane with no range constraint. Used for
/// intermediate results (filter output before clamping, moment fields).
class Field {
public:
    Field() = default;
    Field(int width, int height, double fill = 0.0);
    Field(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
    double& operator()(int x, int y) noexcept { return data_[index(x, y)]; }

    /// Replicate-padded read: coordinates outside the plane clamp to the edge.
    double clamped(int x, int y) const noexcept;

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }

    double min() const;
    double max() const;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Single-channel intensity image. Every value is finite and in [0,1];
/// dimensions are at least 1x1. Immutable once constructed.
class Raster {
public:
    Raster(int width, int height, double fill);

    /// Validates the [0,1] range; throws InvalidArgument otherwise.
    static Raster from_values(int width, int height, std::vector<double> values);
    static Raster from_field(Field field);
    /// Clamps into [0,1]. Non-finite values are rejected.
    static Raster clamped(Field field);

    int width() const noexcept { return field_.width(); }
    int height() const noexcept { return field_.height(); }
    std::size_t size() const noexcept { return field_.size(); }

    double operator()(int x, int y) const noexcept { return field_(x, y); }
    double clamped_at(int x, int y) const noexcept { return field_.clamped(x, y); }
    std::span<const double> values() const noexcept { return field_.values(); }
    const Field& field() const noexcept { return field_; }

    bool same_size(const Raster& other) const noexcept {
        return width() == other.width() && height() == other.height();
    }

    friend bool operator==(const Raster& a, const Raster& b) noexcept;

private:
    explicit Raster(Field field) : field_(std::move(field)) {}
    Field field_;
};

/// Interleaved multi-channel image straight out of a decoder.
struct ColorImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> data;
};

struct Histogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    int bin_count() const noexcept { return static_cast<int>(counts.size()); }
};

inline constexpr int kDefaultBins = 256;

/// Rec.601 luma. Requires exactly three channels.
Raster to_grayscale(const ColorImage& rgb);

Histogram histogram(const Raster& r, int bin_count = kDefaultBins);

/// 1.0 where v > t, else 0.0.
Raster threshold_binary(const Raster& r, double t);

/// Otsu's method over the histogram bins. Returns the center of the last
/// bin of the dark class; ties go to the lower threshold. A histogram with
/// all of its mass in one bin returns that bin's center.
double otsu_threshold(const Histogram& h);

/// Affine stretch of [min, max] onto [lo, hi]. A constant input maps to
/// (lo + hi) / 2.
Field normalize_range(const Field& f, double lo, double hi);
Raster normalize_to_unit(const Field& f);

}  // namespace restore
