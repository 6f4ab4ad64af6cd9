#pragma once

// Pair correlation counting and statistics.
//
// For a prefix x_1..x_N and radius r, the basic quantity is the number of
// ordered pairs (i, j), i != j, with torus_distance(x_i, x_j) below (Strict)
// or at most (NonStrict) r. pair_count_brute is the O(N^2) reference;
// pair_count_fast sorts and sweeps a circular window in O(N log N + P) and
// must agree with the reference exactly, for both representations.
//
// The statistic divides the count by N with r = s/y_N, where y is a scaling
// sequence: y_n = n reproduces the classical pair correlation function, the
// +/- sqrt variants and custom tables cover rescaled versions.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ppclab/sequence.hpp"

namespace ppclab {

enum class Predicate { Strict, NonStrict };

// Query radius as a ratio num/den of binary64 values (den = 1 for a plain
// radius). Keeping numerator and denominator separate lets exact sequences
// evaluate "distance < s/y_N" without rounding s/y_N.
struct Radius {
    double num = 0.0;
    double den = 1.0;
};

class Scaling {
public:
    enum class Kind { Identity, PlusSqrt, MinusSqrt, Custom };

    static Scaling identity() { return Scaling(Kind::Identity); }
    static Scaling plus_sqrt() { return Scaling(Kind::PlusSqrt); }
    static Scaling minus_sqrt() { return Scaling(Kind::MinusSqrt); }
    // Requires every entry positive and finite; entry k is y_{k+1}.
    static Scaling custom(std::vector<double> table);

    Kind kind() const { return kind_; }

    // y_n for n >= 1. Identity: n. PlusSqrt: n + floor(sqrt(n)). MinusSqrt:
    // max(n - floor(sqrt(n)), 1). Custom: table lookup (out_of_range past
    // the table).
    double y(std::uint64_t n) const;

private:
    explicit Scaling(Kind k) : kind_(k) {}
    Kind kind_;
    std::vector<double> table_;
};

struct PcQuery {
    std::uint64_t n = 0;  // prefix length, >= 1
    double s = 0.0;       // window parameter, > 0
    Scaling scaling = Scaling::identity();
    Predicate predicate = Predicate::Strict;
};

// Ordered pair counts over the first n points. n may be 0 (count 0);
// n > record size is a range error. radius must be nonnegative and finite.
std::uint64_t pair_count_brute(const SequenceRecord& rec, std::uint64_t n, Radius radius,
                               Predicate pred);
std::uint64_t pair_count_fast(const SequenceRecord& rec, std::uint64_t n, Radius radius,
                              Predicate pred);

// pair_count_fast(n, s/y_n, pred) / n.
double pc_statistic(const SequenceRecord& rec, const PcQuery& query);

// The statistic evaluated on a strictly increasing grid of s values; the
// prefix is sorted once and swept per grid point. Returns (s, value) rows.
std::vector<std::pair<double, double>> pc_curve(const SequenceRecord& rec, std::uint64_t n,
                                                std::span<const double> s_grid,
                                                const Scaling& scaling, Predicate pred);

// CSV with header "s,F", both columns with 17 significant digits.
void write_pc_curve_csv(std::span<const std::pair<double, double>> rows, std::ostream& out);

std::uint64_t isqrt_u64(std::uint64_t n);

}  // namespace ppclab
