#pragma once

#include "restore/raster.hpp"

namespace restore {

/// Per-pixel dipole-moment edge magnitude in [0,1], same size as its source.
class EdgeMap {
public:
    explicit EdgeMap(Raster values) : values_(std::move(values)) {}

    int width() const noexcept { return values_.width(); }
    int height() const noexcept { return values_.height(); }
    double operator()(int x, int y) const noexcept { return values_(x, y); }
    std::span<const double> values() const noexcept { return values_.values(); }
    const Raster& raster() const noexcept { return values_; }

private:
    Raster values_;
};

struct DipoleMoment {
    double dx = 0.0;
    double dy = 0.0;
};

/// First moment of intensity about (x, y) over the (2r+1)^2 square window,
/// replicate-padded: Dx = sum I(x+i, y+j) * i, Dy = sum I(x+i, y+j) * j.
DipoleMoment dipole_moments(const Raster& r, int x, int y, int radius);

/// Largest single-axis |moment| reachable with intensities in [0,1]:
/// (2r+1) * r * (r+1) / 2.
double dipole_normalizer(int radius);

/// E = min(1, |(Dx, Dy)| / dipole_normalizer(radius)).
/// Requires 1 <= radius < min(width, height) / 2.
EdgeMap dipole_edge_map(const Raster& r, int radius);

/// 1.0 where E > t, else 0.0.
Raster edge_threshold(const EdgeMap& e, double t);

}  // namespace restore
