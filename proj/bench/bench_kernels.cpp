// Serial reference vs OpenMP kernels on a 1024x1024 raster.
//
//   bench_kernels --benchmark_filter=dipole

#include "restore/kernels.hpp"
#include "restore/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using namespace restore;
namespace k = restore::kernels;

constexpr int kSide = 1024;

const Field& input_a() {
    static const Field f = [] {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> v(static_cast<std::size_t>(kSide) * kSide);
        for (auto& x : v) x = u(rng);
        return Field(kSide, kSide, std::move(v));
    }();
    return f;
}

const Field& input_b() {
    static const Field f = [] {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> v(static_cast<std::size_t>(kSide) * kSide);
        for (auto& x : v) x = u(rng);
        return Field(kSide, kSide, std::move(v));
    }();
    return f;
}

template <auto Fn>
void dipole(benchmark::State& state) {
    const int radius = static_cast<int>(state.range(0));
    Field out(kSide, kSide);
    for (auto _ : state) {
        Fn(input_a(), radius, 1.0, out);
        benchmark::DoNotOptimize(out.values().data());
    }
    state.SetItemsProcessed(state.iterations() * kSide * kSide);
}

template <auto Fn>
void histogram(benchmark::State& state) {
    std::vector<std::uint64_t> counts(256);
    for (auto _ : state) {
        Fn(input_a().values(), 256, counts);
        benchmark::DoNotOptimize(counts.data());
    }
    state.SetItemsProcessed(state.iterations() * kSide * kSide);
}

template <auto Fn>
void threshold(benchmark::State& state) {
    std::vector<double> out(input_a().size());
    for (auto _ : state) {
        Fn(input_a().values(), 0.5, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * kSide * kSide);
}

template <auto Fn>
void blend(benchmark::State& state) {
    std::vector<double> out(input_a().size());
    for (auto _ : state) {
        Fn(input_a().values(), input_b().values(), k::BlendKind::MultiplyDarken, 0.6, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * kSide * kSide);
}

template <auto Fn>
void bas_relief(benchmark::State& state) {
    Field out(kSide, kSide);
    for (auto _ : state) {
        Fn(input_a(), 1, 1, 1.0, 0.5, out);
        benchmark::DoNotOptimize(out.values().data());
    }
    state.SetItemsProcessed(state.iterations() * kSide * kSide);
}

void fft_roundtrip(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const Field f(side, side, std::vector<double>(input_a().values().begin(),
                                                  input_a().values().begin() + static_cast<std::ptrdiff_t>(side) * side));
    for (auto _ : state) {
        auto r = inverse_spectrum_raw(forward_spectrum(f));
        benchmark::DoNotOptimize(r.real.values().data());
    }
}

}  // namespace

BENCHMARK(dipole<k::serial::dipole_magnitude>)->Name("dipole/serial")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(dipole<k::omp::dipole_magnitude>)->Name("dipole/omp")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(histogram<k::serial::histogram>)->Name("histogram/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(histogram<k::omp::histogram>)->Name("histogram/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(threshold<k::serial::threshold>)->Name("threshold/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(threshold<k::omp::threshold>)->Name("threshold/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(blend<k::serial::blend>)->Name("blend/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(blend<k::omp::blend>)->Name("blend/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bas_relief<k::serial::bas_relief>)->Name("bas_relief/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(bas_relief<k::omp::bas_relief>)->Name("bas_relief/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(fft_roundtrip)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
