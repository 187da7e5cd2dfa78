#include "restore/edge.hpp"

#include "kernel_math.hpp"
#include "restore/kernels.hpp"

#include <algorithm>
#include <string>

namespace restore {

DipoleMoment dipole_moments(const Raster& r, int x, int y, int radius) {
    if (radius < 1) throw InvalidArgument("dipole radius must be >= 1");
    if (x < 0 || y < 0 || x >= r.width() || y >= r.height()) {
        throw InvalidArgument("dipole_moments: pixel outside the image");
    }
    const auto at = [&r](int sx, int sy) { return r.clamped_at(sx, sy); };
    const auto m = kernels::detail::window_moment(at, x, y, radius);
    return {m.dx, m.dy};
}

double dipole_normalizer(int radius) {
    return static_cast<double>(2 * radius + 1) * radius * (radius + 1) / 2.0;
}

EdgeMap dipole_edge_map(const Raster& r, int radius) {
    if (radius < 1) throw InvalidArgument("dipole radius must be >= 1");
    if (2 * radius >= std::min(r.width(), r.height())) {
        throw InvalidArgument("dipole radius " + std::to_string(radius) +
                              " must be below half the smaller image side (" +
                              std::to_string(std::min(r.width(), r.height())) + ")");
    }
    Field out(r.width(), r.height());
    kernels::omp::dipole_magnitude(r.field(), radius, dipole_normalizer(radius), out);
    return EdgeMap(Raster::from_field(std::move(out)));
}

Raster edge_threshold(const EdgeMap& e, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("edge threshold must lie in [0,1]");
    Field out(e.width(), e.height());
    kernels::omp::threshold(e.values(), t, out.values());
    return Raster::from_field(std::move(out));
}

}  // namespace restore
