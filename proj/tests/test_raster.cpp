#include "fixtures.hpp"

#include "restore/raster.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace restore;

TEST_CASE("raster rejects values outside [0,1] and bad dimensions") {
    CHECK_THROWS_AS(Raster::from_values(1, 1, {1.5}), InvalidArgument);
    CHECK_THROWS_AS(Raster::from_values(1, 1, {-0.1}), InvalidArgument);
    CHECK_THROWS_AS(Raster::from_values(2, 2, {0.0, 0.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(Raster(0, 3, 0.0), InvalidArgument);
    CHECK_THROWS_AS(Raster::clamped(Field(1, 1, std::nan(""))), InvalidArgument);
}

TEST_CASE("to_grayscale uses Rec.601 weights") {
    CHECK(to_grayscale({1, 1, 3, {1, 1, 1}})(0, 0) == doctest::Approx(1.0));
    CHECK(to_grayscale({1, 1, 3, {0, 0, 0}})(0, 0) == 0.0);
    CHECK(to_grayscale({1, 1, 3, {1, 0, 0}})(0, 0) == doctest::Approx(0.299).epsilon(1e-15));
    CHECK_THROWS_AS(to_grayscale({1, 1, 4, {0, 0, 0, 0}}), InvalidArgument);
}

TEST_CASE("histogram binning") {
    const auto zeros = histogram(Raster(10, 10, 0.0), 256);
    CHECK(zeros.counts[0] == 100);
    CHECK(zeros.total == 100);
    CHECK(std::count(zeros.counts.begin(), zeros.counts.end(), 0u) == 255);

    const auto ones = histogram(Raster(10, 10, 1.0), 256);
    CHECK(ones.counts[255] == 100);

    std::vector<double> half(16, 0.0);
    std::fill(half.begin() + 8, half.end(), 1.0);
    const auto split = histogram(Raster::from_values(8, 2, half), 256);
    CHECK(split.counts[0] == 8);
    CHECK(split.counts[255] == 8);

    CHECK_THROWS_AS(histogram(Raster(2, 2, 0.0), 1), InvalidArgument);
}

TEST_CASE("histogram is invariant under pixel permutation") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto r = testing::random_raster(17, 13, rng);
        std::vector<double> shuffled(r.values().begin(), r.values().end());
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto h1 = histogram(r, 64);
        const auto h2 = histogram(Raster::from_values(13, 17, shuffled), 64);
        CHECK(h1.counts == h2.counts);
        std::uint64_t sum = 0;
        for (auto c : h1.counts) sum += c;
        CHECK(sum == h1.total);
    }
}

TEST_CASE("threshold_binary is strict") {
    const auto c = Raster(3, 3, 0.4);
    const auto low = threshold_binary(c, 0.5);
    CHECK(std::all_of(low.values().begin(), low.values().end(), [](double v) { return v == 0.0; }));
    const auto high = threshold_binary(c, 0.3);
    CHECK(std::all_of(high.values().begin(), high.values().end(), [](double v) { return v == 1.0; }));

    const auto ramp = threshold_binary(Raster::from_values(5, 1, {0.0, 0.25, 0.5, 0.75, 1.0}), 0.5);
    CHECK(std::vector<double>(ramp.values().begin(), ramp.values().end()) ==
          std::vector<double>{0, 0, 0, 1, 1});

    const auto all_black = threshold_binary(Raster(2, 2, 1.0), 1.0);
    CHECK(all_black.values()[0] == 0.0);
    CHECK_THROWS_AS(threshold_binary(c, 1.1), InvalidArgument);
    CHECK_THROWS_AS(threshold_binary(c, -0.1), InvalidArgument);
}

TEST_CASE("threshold_binary is idempotent and monotone in t") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    std::uniform_real_distribution<double> inner(1e-9, 1.0 - 1e-9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = testing::random_raster(9, 7, rng);
        const double t1 = t(rng);
        const auto once = threshold_binary(r, t1);
        CHECK(threshold_binary(once, inner(rng)) == once);
        const double t2 = std::min(1.0, t1 + t(rng) * (1.0 - t1));
        const auto higher = threshold_binary(r, t2);
        for (std::size_t i = 0; i < r.size(); ++i) CHECK(higher.values()[i] <= once.values()[i]);
    }
}

TEST_CASE("otsu examples") {
    Histogram h{std::vector<std::uint64_t>(256, 0), 100};
    h.counts[0] = 100;
    CHECK(otsu_threshold(h) == 0.5 / 256);

    Histogram two{std::vector<std::uint64_t>(256, 0), 200};
    two.counts[64] = 100;
    two.counts[192] = 100;
    const double t = otsu_threshold(two);
    CHECK(t > 64.0 / 256);
    CHECK(t < 192.0 / 256);
    CHECK(t == testing::exhaustive_otsu(two));
    CHECK(t == 64.5 / 256);  // lowest of the tied splits

    CHECK_THROWS_AS(otsu_threshold(Histogram{std::vector<std::uint64_t>(4, 0), 0}), InvalidArgument);
}

TEST_CASE("otsu matches the exhaustive scan on random histograms") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int bins = std::uniform_int_distribution<int>(2, 256)(rng);
        Histogram h{std::vector<std::uint64_t>(static_cast<std::size_t>(bins), 0), 0};
        std::uniform_int_distribution<int> count(0, 1000);
        std::bernoulli_distribution sparse(0.3);
        for (auto& c : h.counts) {
            c = sparse(rng) ? 0 : count(rng);
            h.total += c;
        }
        if (h.total == 0) continue;
        CHECK(otsu_threshold(h) == testing::exhaustive_otsu(h));
    }
}

TEST_CASE("normalize_range") {
    const auto sym = normalize_range(Field(3, 1, {-1.0, 0.0, 1.0}), 0.0, 1.0);
    CHECK(sym(0, 0) == 0.0);
    CHECK(sym(1, 0) == 0.5);
    CHECK(sym(2, 0) == 1.0);

    const auto flat = normalize_range(Field(2, 2, 5.0), 0.0, 1.0);
    CHECK(flat(1, 1) == 0.5);

    const auto pair = normalize_range(Field(2, 1, {0.2, 0.4}), 0.0, 1.0);
    CHECK(pair(0, 0) == 0.0);
    CHECK(pair(1, 0) == 1.0);

    CHECK_THROWS_AS(normalize_range(Field(2, 1, {0.2, 0.4}), 1.0, 1.0), InvalidArgument);
}
