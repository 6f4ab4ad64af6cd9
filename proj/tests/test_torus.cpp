#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "ppclab/torus.hpp"

using ppclab::arc_gap;
using ppclab::arc_gap_f64;
using ppclab::DyadicPoint;
using ppclab::TorusPoint;
using ppclab::torus_distance;
using ppclab::torus_distance_f64;

namespace {
DyadicPoint dp(std::uint64_t num, std::uint32_t exp) { return DyadicPoint::make(num, exp); }
}

TEST_SUITE("torus") {

TEST_CASE("make canonicalizes") {
    auto half = dp(4, 3);
    CHECK(half.num() == 1);
    CHECK(half.exp() == 1);
    CHECK(half.value() == 0.5);

    auto zero = dp(0, 5);
    CHECK(zero.num() == 0);
    CHECK(zero.exp() == 0);
    CHECK(zero.value() == 0.0);

    auto q = dp(9, 5);
    CHECK(q.num() == 9);
    CHECK(q.exp() == 5);
    CHECK(q.value() == 9.0 / 32.0);

    CHECK(dp(q.num(), q.exp()) == q);  // canonical form is a fixed point
}

TEST_CASE("make rejects out-of-range input") {
    CHECK_THROWS_AS(dp(8, 3), std::out_of_range);   // num == 2^exp
    CHECK_THROWS_AS(dp(9, 3), std::out_of_range);   // num > 2^exp
    CHECK_THROWS_AS(dp(1, 63), std::out_of_range);  // exponent over cap
}

TEST_CASE("distance picks the shorter arc") {
    CHECK(torus_distance(dp(1, 2), dp(1, 2)) == dp(0, 0));
    CHECK(torus_distance(dp(0, 0), dp(3, 2)) == dp(1, 2));
    CHECK(torus_distance(dp(3, 3), dp(7, 3)) == dp(1, 1));  // antipodal
}

TEST_CASE("arc gap is the forward arc, not the distance") {
    CHECK(arc_gap(dp(7, 3), dp(1, 3)) == dp(1, 2));
    CHECK(arc_gap(dp(0, 0), dp(0, 0)) == dp(0, 0));
    CHECK(arc_gap(dp(1, 3), dp(7, 3)) == dp(3, 2));
}

TEST_CASE("distance equals min of both arcs on a full grid") {
    for (std::uint64_t i = 0; i < 16; ++i) {
        for (std::uint64_t j = 0; j < 16; ++j) {
            auto p = dp(i, 4);
            auto q = dp(j, 4);
            auto d = torus_distance(p, q);
            CHECK(d == torus_distance(q, p));
            CHECK(d == std::min(arc_gap(p, q), arc_gap(q, p)));
            CHECK(d.value() <= 0.5);
            CHECK(d.exp() <= 4);  // closure on the common grid
            CHECK(arc_gap(p, q).exp() <= 4);
        }
    }
}

TEST_CASE("triangle inequality on a grid") {
    for (std::uint64_t i = 0; i < 8; ++i)
        for (std::uint64_t j = 0; j < 8; ++j)
            for (std::uint64_t k = 0; k < 8; ++k) {
                double ik = torus_distance(dp(i, 3), dp(k, 3)).value();
                double ij = torus_distance(dp(i, 3), dp(j, 3)).value();
                double jk = torus_distance(dp(j, 3), dp(k, 3)).value();
                CHECK(ik <= ij + jk);  // exact: small dyadics are exact in binary64
            }
}

TEST_CASE("mixed representations are rejected") {
    auto e = TorusPoint::exact(dp(1, 2));
    auto a = TorusPoint::approx(0.25);
    CHECK_THROWS_AS(torus_distance(e, a), std::invalid_argument);
    CHECK_THROWS_AS(arc_gap(a, e), std::invalid_argument);
    CHECK(torus_distance(e, e).value() == 0.0);
}

TEST_CASE("approx points validate their range") {
    CHECK_THROWS_AS(TorusPoint::approx(1.0), std::invalid_argument);
    CHECK_THROWS_AS(TorusPoint::approx(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(TorusPoint::approx(std::nan("")), std::invalid_argument);
    CHECK(TorusPoint::approx(0.0).value() == 0.0);
    CHECK(TorusPoint::approx(0.999).value() == 0.999);
}

TEST_CASE("binary64 helpers agree with the exact ones on dyadic values") {
    CHECK(torus_distance_f64(0.0, 0.75) == 0.25);
    CHECK(torus_distance_f64(0.375, 0.875) == 0.5);
    CHECK(arc_gap_f64(0.875, 0.125) == 0.25);
    CHECK(arc_gap_f64(0.125, 0.875) == 0.75);
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            double a = i / 32.0;
            double b = j / 32.0;
            CHECK(torus_distance_f64(a, b) == torus_distance(dp(i, 5), dp(j, 5)).value());
            CHECK(arc_gap_f64(a, b) == arc_gap(dp(i, 5), dp(j, 5)).value());
        }
}

}  // TEST_SUITE
