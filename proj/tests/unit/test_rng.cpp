#include "coexsim/lteu.hpp"
#include "coexsim/rng.hpp"

#include "doctest.h"

#include <array>
#include <vector>

using namespace coexsim;

namespace {
// Reference SplitMix64, written out from the published constants.
std::uint64_t reference_splitmix(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
}
}  // namespace

TEST_CASE("SplitMix64 matches the reference sequence") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xE220A8397B1DCDAFULL);
    for (std::uint64_t seed : {1ULL, 12345ULL, 0xDEADBEEFULL}) {
        SplitMix64 a(seed);
        std::uint64_t ref = seed;
        for (int i = 0; i < 1000; ++i) {
            REQUIRE(a.next() == reference_splitmix(ref));
        }
    }
}

TEST_CASE("countdown stream is seeded with seed xor cell id") {
    CountdownSource c(1000, 7);
    std::uint64_t ref = 1000 ^ 7;
    for (int i = 0; i < 100; ++i) {
        CHECK(c.draw_countdown(32) == static_cast<std::int64_t>(reference_splitmix(ref) % 32));
    }
}

TEST_CASE("pinned draws come first and are range checked") {
    DrawStream d(5);
    const std::array<std::int64_t, 3> pins{14, 10, 16};
    d.pin(pins);
    CHECK(d.draw_uniform(32) == 14);
    CHECK(d.draw_uniform(32) == 10);
    CHECK(d.draw_uniform(32) == 16);
    const auto free_draw = d.draw_uniform(32);
    CHECK(free_draw >= 0);
    CHECK(free_draw < 32);

    DrawStream bad(5);
    const std::array<std::int64_t, 1> out_of_range{40};
    bad.pin(out_of_range);
    CHECK_THROWS_AS(bad.draw_uniform(32), std::out_of_range);
    CHECK_THROWS_AS(d.draw_uniform(0), std::invalid_argument);
}

TEST_CASE("countdown draws are uniform over [0, 31]") {
    constexpr int kDraws = 100'000;
    CountdownSource c(20260101, 42);
    std::array<int, 32> counts{};
    for (int i = 0; i < kDraws; ++i) {
        const auto v = c.draw_countdown(32);
        REQUIRE(v >= 0);
        REQUIRE(v < 32);
        ++counts[static_cast<std::size_t>(v)];
    }
    const double expected = kDraws / 32.0;
    double chi2 = 0.0;
    for (int n : counts) {
        CHECK(std::abs(n / static_cast<double>(kDraws) - 1.0 / 32.0) <= 0.01);
        chi2 += (n - expected) * (n - expected) / expected;
    }
    // 99th percentile of chi-square with 31 degrees of freedom.
    CHECK(chi2 < 52.191);
}

TEST_CASE("uniform_below has no modulo bias for awkward bounds") {
    SplitMix64 g(3);
    constexpr std::uint64_t bound = 3;
    std::array<int, 3> counts{};
    for (int i = 0; i < 30000; ++i) {
        ++counts[uniform_below(g, bound)];
    }
    for (int n : counts) {
        CHECK(std::abs(n - 10000) < 500);
    }
    CHECK_THROWS(uniform_below(g, 0));
}

TEST_CASE("derived seeds differ per tag") {
    CHECK(derive_seed(1, 1) != derive_seed(1, 2));
    CHECK(derive_seed(1, 1) != derive_seed(2, 1));
    CHECK(derive_seed(9, 4) == derive_seed(9, 4));
}
