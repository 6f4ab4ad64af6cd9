#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"

#include "ppclab/construction.hpp"
#include "ppclab/oracles.hpp"
#include "ppclab/pair_correlation.hpp"
#include "ppclab/rng.hpp"
#include "ppclab/sequence.hpp"
#include "ppclab/torus.hpp"

using boost::multiprecision::cpp_int;
using ppclab::ConstructionConfig;
using ppclab::DyadicPoint;
using ppclab::ExactRational;
using ppclab::GapCountTarget;
using ppclab::mc_moments;
using ppclab::pc_expectation;
using ppclab::pc_variance;
using ppclab::Predicate;
using ppclab::Scaling;
using ppclab::window_probability;

namespace {

ConstructionConfig half_config(std::uint32_t m_max) {
    std::vector<std::uint32_t> a, b;
    for (std::uint32_t m = 1; m <= m_max; ++m) {
        a.push_back((m + 1) / 2);
        b.push_back(m - m / 2);
    }
    return ConstructionConfig::from_tables(std::move(a), std::move(b));
}

// fraction of grid points j/2^E within torus distance <= radius of 0,
// counted one point at a time
ExactRational enumerated_window(std::uint32_t grid_exp, const ExactRational& radius) {
    std::uint64_t cells = std::uint64_t{1} << grid_exp;
    std::uint64_t hits = 0;
    for (std::uint64_t j = 0; j < cells; ++j) {
        ExactRational d(cpp_int(std::min(j, cells - j)), cpp_int(cells));
        if (d <= radius) ++hits;
    }
    return ExactRational(cpp_int(hits), cpp_int(cells));
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("window probability, frozen values") {
    CHECK(window_probability(5, ExactRational(1, 8)) == ExactRational(9, 32));
    CHECK(window_probability(2, ExactRational(1, 4)) == ExactRational(3, 4));
    CHECK(window_probability(3, ExactRational(1, 2)) == 1);  // whole torus
    CHECK(window_probability(3, ExactRational(5)) == 1);     // clamped
    CHECK(window_probability(0, ExactRational(0)) == 1);     // the lone grid point 0
    CHECK(window_probability(4, ExactRational(0)) == ExactRational(1, 16));
}

TEST_CASE("window probability equals grid enumeration") {
    std::vector<ExactRational> radii{
        ExactRational(0),          ExactRational(1, 1000), ExactRational(1, 7),
        ExactRational(1, 4),       ExactRational(3, 10),   ExactRational(0.4999),
        ExactRational(1, 2),       ExactRational(9, 10),
    };
    for (std::uint32_t e : {0u, 1u, 2u, 3u, 5u, 8u, 12u, 16u}) {
        for (const auto& r : radii) {
            CAPTURE(e);
            CHECK(window_probability(e, r) == enumerated_window(e, r));
        }
    }
}

TEST_CASE("expectation, frozen values") {
    auto cfg = half_config(4);
    CHECK(pc_expectation(2, 0.5, 2.0, cfg) == ExactRational(3, 4));
    CHECK(pc_expectation(1, 0.5, 1.0, cfg) == 0);  // no pairs
    CHECK(pc_variance(2, 0.5, 2.0, cfg) == ExactRational(3, 16));
    CHECK(pc_variance(1, 1.0, 1.0, cfg) == 0);
}

TEST_CASE("a window covering the torus counts every pair") {
    // radius s/y >= 1/2 forces every per-pair probability to 1, so the
    // expectation is the pair count itself; exercises partial final blocks
    auto cfg = half_config(10);
    for (std::uint64_t n : {2ull, 3ull, 5ull, 6ull, 17ull, 256ull, 1000ull}) {
        CHECK(pc_expectation(n, 1.0, 1.0, cfg) == ExactRational(cpp_int(n - 1), cpp_int(1)));
        CHECK(pc_variance(n, 1.0, 1.0, cfg) == 0);
    }
}

TEST_CASE("expectation matches total enumeration of the random model") {
    // N <= 4 keeps the joint state space enumerable: X_2 on the block-1
    // grid, X_3 and X_4 on the block-2 grid
    for (auto [a1, a2] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {1, 1}, {1, 2}, {2, 2}}) {
        auto cfg = ConstructionConfig::from_tables({a1, a2}, {1, 1});
        std::uint32_t e1 = 1 + a1;
        std::uint32_t e2 = 2 + a2;
        std::uint64_t g1 = std::uint64_t{1} << e1;
        std::uint64_t g2 = std::uint64_t{1} << e2;

        for (double s : {0.3, 0.5, 1.0}) {
            for (std::uint64_t n : {2ull, 3ull, 4ull}) {
                double y = static_cast<double>(n);
                ExactRational total = 0;
                std::uint64_t states = 0;
                for (std::uint64_t x2 = 0; x2 < g1; ++x2)
                    for (std::uint64_t x3 = 0; x3 < (n >= 3 ? g2 : 1); ++x3)
                        for (std::uint64_t x4 = 0; x4 < (n >= 4 ? g2 : 1); ++x4) {
                            std::vector<DyadicPoint> pts{DyadicPoint::make(0, 0),
                                                         DyadicPoint::make(x2, e1)};
                            if (n >= 3) pts.push_back(DyadicPoint::make(x3, e2));
                            if (n >= 4) pts.push_back(DyadicPoint::make(x4, e2));
                            auto rec = ppclab::SequenceRecord::exact(
                                std::move(pts), ppclab::SequenceMeta{"scratch", {}, {}});
                            auto count = ppclab::pair_count_fast(rec, n, ppclab::Radius{s, y},
                                                                 Predicate::NonStrict);
                            total += ExactRational(cpp_int(count), cpp_int(n));
                            ++states;
                        }
                CAPTURE(a1);
                CAPTURE(a2);
                CAPTURE(s);
                CAPTURE(n);
                CHECK(pc_expectation(n, s, y, cfg) ==
                      total / ExactRational(cpp_int(states), cpp_int(1)));
            }
        }
    }
}

TEST_CASE("oracle denominators divide a power of two times n squared") {
    auto cfg = half_config(12);
    ppclab::SplitMix64 rng(55);
    for (int iter = 0; iter < 20; ++iter) {
        std::uint64_t n = 2 + rng.next() % 4000;
        double s = 0.25 + static_cast<double>(rng.next() % 100) / 25.0;
        for (const auto& v : {pc_expectation(n, s, static_cast<double>(n), cfg),
                              pc_variance(n, s, static_cast<double>(n), cfg)}) {
            CHECK(v >= 0);
            cpp_int den = denominator(v);
            while (den % 2 == 0) den /= 2;
            CHECK(cpp_int(n) * n % den == 0);
        }
    }
}

TEST_CASE("expectation approaches 2s on the half-rate schedule") {
    auto cfg = half_config(16);
    std::uint64_t n = std::uint64_t{1} << 16;
    auto e = pc_expectation(n, 1.0, static_cast<double>(n), cfg);
    double diff = std::abs(e.convert_to<double>() - 2.0);
    CHECK(diff <= 0.02);
}

TEST_CASE("monte carlo agrees with the closed form at n = 2") {
    auto cfg = half_config(4);
    auto rep = mc_moments(2, 0.5, cfg, Scaling::identity(), 10000, 77);
    CHECK(rep.samples == 10000);
    CHECK(std::abs(rep.mean - 0.75) <= 3.0 * rep.std_error);
    CHECK(std::abs(rep.variance - 3.0 / 16.0) <= 0.1 * 3.0 / 16.0);
}

TEST_CASE("monte carlo degenerate cases") {
    auto cfg = half_config(4);
    auto rep = mc_moments(1, 1.0, cfg, Scaling::identity(), 2, 9);
    CHECK(rep.mean == 0.0);
    CHECK(rep.variance == 0.0);
    CHECK_THROWS_AS(mc_moments(2, 1.0, cfg, Scaling::identity(), 1, 9),
                    std::invalid_argument);
}

TEST_CASE("monte carlo error shrinks like the square root of the sample count") {
    auto cfg = half_config(8);
    auto small = mc_moments(128, 1.0, cfg, Scaling::identity(), 200, 13);
    auto large = mc_moments(128, 1.0, cfg, Scaling::identity(), 800, 13);
    double ratio = large.std_error / small.std_error;
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);  // quadrupling the samples halves the error
}

TEST_CASE("monte carlo is deterministic per seed") {
    auto cfg = half_config(6);
    auto a = mc_moments(64, 1.0, cfg, Scaling::identity(), 50, 4);
    auto b = mc_moments(64, 1.0, cfg, Scaling::identity(), 50, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.variance == b.variance);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("argument validation") {
    auto cfg = half_config(4);
    CHECK_THROWS_AS(pc_expectation(0, 1.0, 1.0, cfg), std::out_of_range);
    CHECK_THROWS_AS(pc_expectation(17, 1.0, 17.0, cfg), std::out_of_range);  // 2^m_max = 16
    CHECK_THROWS_AS(pc_expectation(2, -1.0, 2.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(pc_expectation(2, 1.0, 0.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(window_probability(63, ExactRational(1, 4)), std::out_of_range);
}

}  // TEST_SUITE
