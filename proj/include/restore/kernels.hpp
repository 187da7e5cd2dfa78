#pragma once

// Data-parallel inner loops. Every kernel exists twice with the same
// signature: `serial` is the reference, `omp` parallelizes over rows with
// OpenMP. The two must agree bit-for-bit; tests and the benchmark compare
// them directly. Callers size the output buffers.

#include "restore/raster.hpp"

#include <cstdint>
#include <span>

namespace restore::kernels {

enum class BlendKind { Alpha, MultiplyDarken, Min };

namespace serial {

/// min(1, |(Dx, Dy)| / norm) with replicate padding at the borders.
void dipole_magnitude(const Field& in, int radius, double norm, Field& out);
void histogram(std::span<const double> values, int bins, std::span<std::uint64_t> counts);
void threshold(std::span<const double> in, double t, std::span<double> out);
void blend(std::span<const double> a, std::span<const double> b, BlendKind kind, double alpha,
           std::span<double> out);
void overlay_edges(std::span<const double> img, std::span<const double> edges, double gain,
                   std::span<double> out);
void bas_relief(const Field& in, int dx, int dy, double depth, double bias, Field& out);
void stretch(std::span<const double> in, double in_lo, double in_hi, double lo, double hi,
             std::span<double> out);

}  // namespace serial

namespace omp {

void dipole_magnitude(const Field& in, int radius, double norm, Field& out);
void histogram(std::span<const double> values, int bins, std::span<std::uint64_t> counts);
void threshold(std::span<const double> in, double t, std::span<double> out);
void blend(std::span<const double> a, std::span<const double> b, BlendKind kind, double alpha,
           std::span<double> out);
void overlay_edges(std::span<const double> img, std::span<const double> edges, double gain,
                   std::span<double> out);
void bas_relief(const Field& in, int dx, int dy, double depth, double bias, Field& out);
void stretch(std::span<const double> in, double in_lo, double in_hi, double lo, double hi,
             std::span<double> out);

}  // namespace omp

}  // namespace restore::kernels
