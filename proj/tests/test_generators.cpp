#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"

#include "ppclab/generators.hpp"
#include "ppclab/pair_correlation.hpp"
#include "ppclab/rng.hpp"
#include "ppclab/sequence.hpp"

using ppclab::equispaced;
using ppclab::golden_alpha;
using ppclab::identical;
using ppclab::iid_uniform;
using ppclab::kronecker;
using ppclab::SplitMix64;

TEST_SUITE("generators") {

TEST_CASE("splitmix64 known-answer vectors") {
    SplitMix64 a(0);
    CHECK(a.next() == 0xE220A8397B1DCDAFull);
    CHECK(a.next() == 0x6E789E6AA1B965F4ull);
    CHECK(a.next() == 0x06C45D188009454Full);

    SplitMix64 b(0x12345678);
    CHECK(b.next() == 0x38F1DC39D1906B6Full);
    CHECK(b.next() == 0xDFE4142236DD9517ull);
}

TEST_CASE("splitmix64 unit mapping stays inside [0,1)") {
    SplitMix64 rng(0xFEEDFACE);
    for (int i = 0; i < 100000; ++i) {
        double v = rng.next_unit();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("kronecker golden rotation, first five points") {
    auto rec = kronecker(golden_alpha(), 5);
    REQUIRE(rec.size() == 5);
    const auto& v = rec.approx_points();
    CHECK(v[0] == 0.6180339887498949);
    CHECK(v[1] == 0.2360679774997898);
    CHECK(v[2] == 0.8541019662496847);
    CHECK(v[3] == 0.4721359549995796);
    CHECK(v[4] == 0.09016994374947451);
    CHECK(rec.meta().kind == "kronecker");
}

TEST_CASE("kronecker with rational alpha degenerates periodically") {
    auto rec = kronecker(0.5, 4);
    const auto& v = rec.approx_points();
    CHECK(v == std::vector<double>{0.5, 0.0, 0.5, 0.0});
}

TEST_CASE("equispaced is exact exactly for powers of two") {
    auto four = equispaced(4);
    REQUIRE(four.is_exact());
    CHECK(four.exact_points()[0] == ppclab::DyadicPoint::make(0, 0));
    CHECK(four.exact_points()[1] == ppclab::DyadicPoint::make(1, 2));
    CHECK(four.exact_points()[2] == ppclab::DyadicPoint::make(1, 1));
    CHECK(four.exact_points()[3] == ppclab::DyadicPoint::make(3, 2));

    auto three = equispaced(3);
    REQUIRE(!three.is_exact());
    CHECK(three.approx_points()[0] == 0.0);
    CHECK(three.approx_points()[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(three.approx_points()[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    CHECK(equispaced(1).is_exact());
    CHECK(equispaced(4096).is_exact());
    CHECK(!equispaced(4095).is_exact());
}

TEST_CASE("iid uniform is a pure function of its seed") {
    auto a = iid_uniform(1000, 2024);
    auto b = iid_uniform(1000, 2024);
    auto c = iid_uniform(1000, 2025);
    CHECK(identical(a, b));
    CHECK(!identical(a, c));
    CHECK(a.meta().seed == 2024);

    // first draw is the raw SplitMix64 output scaled by 2^-64
    auto first = iid_uniform(1, 0);
    CHECK(first.approx_points()[0] == static_cast<double>(0xE220A8397B1DCDAFull) * 0x1p-64);

    for (double v : a.approx_points()) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("iid uniform shows Poissonian pair counts at scale") {
    auto rec = iid_uniform(std::uint64_t{1} << 14, 31337);
    double f = ppclab::pc_statistic(
        rec, ppclab::PcQuery{rec.size(), 1.0, ppclab::Scaling::identity(),
                             ppclab::Predicate::Strict});
    CHECK(f == doctest::Approx(2.0).epsilon(0.075));  // |F(1) - 2| <= 0.15
}

TEST_CASE("generator argument validation") {
    CHECK_THROWS_AS(equispaced(0), std::invalid_argument);
    CHECK_THROWS_AS(kronecker(std::numeric_limits<double>::infinity(), 3),
                    std::invalid_argument);
}

}  // TEST_SUITE
