#pragma once

// Points on the unit torus [0,1) in two representations: exact dyadic
// rationals and plain binary64. All exact arithmetic stays in 64-bit
// integers; the exponent cap of 62 guarantees that common-grid numerators
// and their sums (distance, arc, gap computations) never overflow.

#include <compare>
#include <cstdint>
#include <variant>

namespace ppclab {

inline constexpr std::uint32_t kMaxDyadicExp = 62;

// num / 2^exp in [0,1), canonical: num odd, or num == 0 and exp == 0.
// Canonical form makes field equality coincide with value equality.
class DyadicPoint {
public:
    constexpr DyadicPoint() = default;

    // Canonicalizes. Throws std::out_of_range if exp > 62 or num >= 2^exp.
    static DyadicPoint make(std::uint64_t num, std::uint32_t exp);

    std::uint64_t num() const { return num_; }
    std::uint32_t exp() const { return exp_; }

    // Nearest binary64 rendering of the value.
    double value() const;

    friend bool operator==(DyadicPoint, DyadicPoint) = default;
    friend std::strong_ordering operator<=>(DyadicPoint a, DyadicPoint b);

private:
    std::uint64_t num_ = 0;
    std::uint32_t exp_ = 0;
};

// Exact torus distance min(d, 1-d) with d = |a - b|. Result is a dyadic
// value <= 1/2 on the common grid of a and b.
DyadicPoint torus_distance(DyadicPoint a, DyadicPoint b);

// Exact forward arc (b - a) mod 1 in [0,1).
DyadicPoint arc_gap(DyadicPoint a, DyadicPoint b);

// A torus point tagged with its representation. Mixing representations in
// one operation is a contract violation (std::invalid_argument); binary64
// values are validated to be finite and in [0,1) at construction.
class TorusPoint {
public:
    static TorusPoint exact(DyadicPoint p);
    static TorusPoint approx(double v);

    bool is_exact() const { return rep_.index() == 0; }
    DyadicPoint as_exact() const;  // throws std::invalid_argument if approx
    double as_approx() const;      // throws std::invalid_argument if exact
    double value() const;

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

private:
    std::variant<DyadicPoint, double> rep_;
};

TorusPoint torus_distance(const TorusPoint& a, const TorusPoint& b);
TorusPoint arc_gap(const TorusPoint& a, const TorusPoint& b);

// Binary64 versions used by the floating-point code paths. Both keep the
// result in [0,1); distance is
//   min(|a-b|, 1-|a-b|).
double torus_distance_f64(double a, double b);
double arc_gap_f64(double a, double b);

}  // namespace ppclab
