#include "restore/raster.hpp"

#include "restore/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace restore {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("image dimensions must be at least 1x1, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

Field::Field(int width, int height, double fill)
    : width_(width),
      height_(height),
      data_(static_cast<std::size_t>(std::max(width, 0)) *
                static_cast<std::size_t>(std::max(height, 0)),
            fill) {
    check_dims(width, height);
}

Field::Field(int width, int height, std::vector<double> values)
    : width_(width), height_(height), data_(std::move(values)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw InvalidArgument("value count " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
}

double Field::clamped(int x, int y) const noexcept {
    return (*this)(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

double Field::min() const {
    if (data_.empty()) throw InvalidArgument("min of empty field");
    return *std::min_element(data_.begin(), data_.end());
}

double Field::max() const {
    if (data_.empty()) throw InvalidArgument("max of empty field");
    return *std::max_element(data_.begin(), data_.end());
}

Raster::Raster(int width, int height, double fill) : field_(width, height, fill) {
    if (!(fill >= 0.0 && fill <= 1.0)) throw InvalidArgument("fill value outside [0,1]");
}

Raster Raster::from_values(int width, int height, std::vector<double> values) {
    return from_field(Field(width, height, std::move(values)));
}

Raster Raster::from_field(Field field) {
    if (field.empty()) throw InvalidArgument("empty raster");
    for (double v : field.values()) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InvalidArgument("raster value " + std::to_string(v) + " outside [0,1]");
        }
    }
    return Raster(std::move(field));
}

Raster Raster::clamped(Field field) {
    if (field.empty()) throw InvalidArgument("empty raster");
    for (double& v : field.values()) {
        if (!std::isfinite(v)) throw InvalidArgument("non-finite raster value");
        v = std::clamp(v, 0.0, 1.0);
    }
    return Raster(std::move(field));
}

bool operator==(const Raster& a, const Raster& b) noexcept {
    return a.same_size(b) && std::equal(a.values().begin(), a.values().end(), b.values().begin());
}

Raster to_grayscale(const ColorImage& rgb) {
    if (rgb.channels != 3) {
        throw InvalidArgument("to_grayscale expects 3 channels, got " +
                              std::to_string(rgb.channels));
    }
    const auto n = static_cast<std::size_t>(rgb.width) * static_cast<std::size_t>(rgb.height);
    if (rgb.data.size() != 3 * n) throw InvalidArgument("color image data size mismatch");
    std::vector<double> luma(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rgb.data[3 * i];
        const double g = rgb.data[3 * i + 1];
        const double b = rgb.data[3 * i + 2];
        luma[i] = std::clamp(0.299 * r + 0.587 * g + 0.114 * b, 0.0, 1.0);
    }
    return Raster::from_values(rgb.width, rgb.height, std::move(luma));
}

Histogram histogram(const Raster& r, int bin_count) {
    if (bin_count < 2) throw InvalidArgument("histogram needs at least 2 bins");
    Histogram h;
    h.counts.resize(static_cast<std::size_t>(bin_count));
    kernels::omp::histogram(r.values(), bin_count, h.counts);
    h.total = r.size();
    return h;
}

Raster threshold_binary(const Raster& r, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("threshold must lie in [0,1]");
    Field out(r.width(), r.height());
    kernels::omp::threshold(r.values(), t, out.values());
    return Raster::from_field(std::move(out));
}

double otsu_threshold(const Histogram& h) {
    const int bins = h.bin_count();
    if (bins < 2) throw InvalidArgument("otsu needs at least 2 bins");
    if (h.total == 0) throw InvalidArgument("otsu on an empty histogram");

    int occupied = 0;
    int last_occupied = 0;
    long double weighted_total = 0;
    for (int i = 0; i < bins; ++i) {
        if (h.counts[i] > 0) {
            ++occupied;
            last_occupied = i;
        }
        weighted_total += static_cast<long double>(i) * h.counts[i];
    }
    const auto center = [bins](int bin) { return (bin + 0.5) / bins; };
    if (occupied == 1) return center(last_occupied);

    // Between-class variance up to a constant factor:
    // (N * S0 - n0 * S)^2 / (n0 * (N - n0)).
    const auto total = static_cast<long double>(h.total);
    long double n0 = 0;
    long double s0 = 0;
    long double best = -1;
    int best_bin = 0;
    for (int k = 0; k < bins - 1; ++k) {
        n0 += h.counts[k];
        s0 += static_cast<long double>(k) * h.counts[k];
        const long double n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;
        const long double diff = total * s0 - n0 * weighted_total;
        const long double score = diff * diff / (n0 * n1);
        if (score > best) {
            best = score;
            best_bin = k;
        }
    }
    return center(best_bin);
}

Field normalize_range(const Field& f, double lo, double hi) {
    if (!(lo < hi)) throw InvalidArgument("normalize_range requires lo < hi");
    for (double v : f.values()) {
        if (!std::isfinite(v)) throw InvalidArgument("normalize_range on non-finite input");
    }
    Field out(f.width(), f.height());
    kernels::omp::stretch(f.values(), f.min(), f.max(), lo, hi, out.values());
    return out;
}

Raster normalize_to_unit(const Field& f) { return Raster::clamped(normalize_range(f, 0.0, 1.0)); }

}  // namespace restore
