#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"

#include "ppclab/gap_stats.hpp"
#include "ppclab/generators.hpp"
#include "ppclab/rng.hpp"
#include "ppclab/sequence.hpp"
#include "ppclab/torus.hpp"

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using ppclab::DyadicGap;
using ppclab::DyadicPoint;
using ppclab::gap_profile;
using ppclab::gap_profile_json;
using ppclab::gap_series;
using ppclab::GapProfile;
using ppclab::SequenceMeta;
using ppclab::SequenceRecord;

namespace {

SequenceRecord scratch_exact(std::vector<DyadicPoint> pts) {
    return SequenceRecord::exact(std::move(pts), SequenceMeta{"scratch", {}, {}});
}

cpp_rational exact_total(const GapProfile& p) {
    cpp_rational total = 0;
    for (std::size_t i = 0; i < p.g(); ++i) {
        const auto& len = p.exact_lengths()[i];
        total += cpp_rational(cpp_int(len.num) * p.multiplicities()[i], cpp_int(1) << len.exp);
    }
    return total;
}

void check_identities(const GapProfile& p) {
    std::uint64_t mult_sum = std::accumulate(p.multiplicities().begin(),
                                             p.multiplicities().end(), std::uint64_t{0});
    CHECK(mult_sum == p.n());
    CHECK(p.g() >= 1);
    CHECK(p.g() * p.max_multiplicity() >= p.n());  // pigeonhole
    if (p.is_exact()) {
        CHECK(exact_total(p) == 1);
    } else {
        double total = 0;
        for (std::size_t i = 0; i < p.g(); ++i)
            total += p.approx_lengths()[i] * static_cast<double>(p.multiplicities()[i]);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

}  // namespace

TEST_SUITE("gap-stats") {

TEST_CASE("two antipodal points") {
    auto p = gap_profile(scratch_exact({DyadicPoint::make(0, 0), DyadicPoint::make(1, 1)}), 2);
    CHECK(p.g() == 1);
    CHECK(p.exact_lengths()[0] == DyadicGap{1, 1});
    CHECK(p.multiplicities() == std::vector<std::uint64_t>{2});
    check_identities(p);
}

TEST_CASE("equispaced grids have one gap length") {
    auto p = gap_profile(ppclab::equispaced(4), 4);
    CHECK(p.g() == 1);
    CHECK(p.exact_lengths()[0] == DyadicGap{1, 2});
    CHECK(p.max_ratio() == 1.0);

    // the length-4 prefix of the 8-grid is not the 4-grid: its gaps are
    // three cells of 1/8 plus the 5/8 wrap back to 0
    auto rows = gap_series(ppclab::equispaced(8), std::vector<std::uint64_t>{4, 8});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 4);
    CHECK(rows[0].g == 2);
    CHECK(rows[0].max_multiplicity == 3);
    CHECK(rows[0].max_ratio == 0.75);
    CHECK(rows[1].n == 8);
    CHECK(rows[1].g == 1);
    CHECK(rows[1].max_multiplicity == 8);
    CHECK(rows[1].max_ratio == 1.0);
}

TEST_CASE("golden kronecker prefix of five") {
    auto p = gap_profile(ppclab::kronecker(ppclab::golden_alpha(), 5), 5, 1e-12);
    REQUIRE(p.g() == 2);
    CHECK(p.approx_lengths()[0] == doctest::Approx(0.1458980337503153).epsilon(1e-12));
    CHECK(p.approx_lengths()[1] == doctest::Approx(0.2360679774997898).epsilon(1e-12));
    CHECK(p.multiplicities() == std::vector<std::uint64_t>{2, 3});
    check_identities(p);
}

TEST_CASE("duplicates contribute zero-length gaps") {
    auto without = gap_profile(scratch_exact({DyadicPoint::make(0, 0),
                                              DyadicPoint::make(1, 1)}), 2);
    CHECK(without.exact_lengths()[0].num != 0);

    auto with = gap_profile(scratch_exact({DyadicPoint::make(0, 0), DyadicPoint::make(0, 0),
                                           DyadicPoint::make(1, 1)}), 3);
    REQUIRE(with.g() == 2);
    CHECK(with.exact_lengths()[0] == DyadicGap{0, 0});
    CHECK(with.multiplicities() == std::vector<std::uint64_t>{1, 2});
    check_identities(with);
}

TEST_CASE("a single point owns the whole circle") {
    auto exact = gap_profile(scratch_exact({DyadicPoint::make(5, 3)}), 1);
    CHECK(exact.g() == 1);
    CHECK(exact.exact_lengths()[0] == DyadicGap{1, 0});  // gap of length one

    auto approx = gap_profile(ppclab::iid_uniform(1, 3), 1);
    CHECK(approx.approx_lengths()[0] == doctest::Approx(1.0).epsilon(1e-15));
    check_identities(exact);
    check_identities(approx);
}

TEST_CASE("profile depends only on the point multiset") {
    auto rec = ppclab::iid_uniform(50, 77);
    auto pts = rec.approx_points();
    std::shuffle(pts.begin(), pts.end(), std::mt19937{321});
    auto shuffled = SequenceRecord::approx(pts, SequenceMeta{"scratch", {}, {}});

    auto a = gap_profile(rec, 50, 1e-12);
    auto b = gap_profile(shuffled, 50, 1e-12);
    CHECK(a.approx_lengths() == b.approx_lengths());
    CHECK(a.multiplicities() == b.multiplicities());
}

TEST_CASE("identities hold on random exact and binary64 prefixes") {
    ppclab::SplitMix64 rng(888);
    for (int iter = 0; iter < 25; ++iter) {
        std::uint64_t n = 1 + rng.next() % 200;
        std::uint32_t e = 1 + static_cast<std::uint32_t>(rng.next() % 20);
        std::vector<DyadicPoint> pts;
        for (std::uint64_t i = 0; i < n; ++i)
            pts.push_back(DyadicPoint::make(rng.next() & ((std::uint64_t{1} << e) - 1), e));
        check_identities(gap_profile(scratch_exact(std::move(pts)), n));
        check_identities(gap_profile(ppclab::iid_uniform(n, rng.next()), n, 1e-12));
    }
}

TEST_CASE("binary64 dedup merges near-equal gaps") {
    // gaps 0.25, 0.25 + 5e-13, ~0.5: the first two merge at tolerance 1e-12
    std::vector<double> pts{0.0, 0.25, 0.5 + 5e-13};
    auto rec = SequenceRecord::approx(pts, SequenceMeta{"scratch", {}, {}});
    auto merged = gap_profile(rec, 3, 1e-12);
    CHECK(merged.g() == 2);
    CHECK(merged.multiplicities() == std::vector<std::uint64_t>{2, 1});

    auto split = gap_profile(rec, 3, 0.0);
    CHECK(split.g() == 3);
}

TEST_CASE("argument validation") {
    auto rec = ppclab::equispaced(8);
    CHECK_THROWS_AS(gap_profile(rec, 0), std::out_of_range);
    CHECK_THROWS_AS(gap_profile(rec, 9), std::out_of_range);
    CHECK_THROWS_AS(gap_profile(rec, 8, 1e-12), std::invalid_argument);  // exact needs tol 0
    CHECK_THROWS_AS(gap_series(rec, std::vector<std::uint64_t>{4, 4}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gap_series(rec, std::vector<std::uint64_t>{0, 4}), std::out_of_range);
}

TEST_CASE("json rendering is pinned") {
    auto p = gap_profile(ppclab::equispaced(4), 4);
    CHECK(gap_profile_json(p) ==
          R"({"N":4,"g":1,"lengths":["1/2^2"],"multiplicities":[4],"max_ratio":1.0})");
}

}  // TEST_SUITE
