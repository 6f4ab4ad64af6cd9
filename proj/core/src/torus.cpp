#include "ppclab/torus.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ppclab {

DyadicPoint DyadicPoint::make(std::uint64_t num, std::uint32_t exp) {
    if (exp > kMaxDyadicExp)
        throw std::out_of_range("DyadicPoint: exponent exceeds cap of 62");
    if ((num >> exp) != 0)
        throw std::out_of_range("DyadicPoint: numerator must satisfy num < 2^exp");
    DyadicPoint p;
    if (num == 0) return p;  // (0,0)
    int shift = std::countr_zero(num);  // num < 2^exp, so shift < exp
    p.num_ = num >> shift;
    p.exp_ = exp - static_cast<std::uint32_t>(shift);
    return p;
}

double DyadicPoint::value() const {
    return std::ldexp(static_cast<double>(num_), -static_cast<int>(exp_));
}

std::strong_ordering operator<=>(DyadicPoint a, DyadicPoint b) {
    std::uint32_t e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    std::uint64_t an = a.num_ << (e - a.exp_);  // < 2^e <= 2^62, no overflow
    std::uint64_t bn = b.num_ << (e - b.exp_);
    return an <=> bn;
}

namespace {

struct CommonGrid {
    std::uint64_t a, b;
    std::uint32_t exp;
};

CommonGrid to_common_grid(DyadicPoint p, DyadicPoint q) {
    std::uint32_t e = p.exp() > q.exp() ? p.exp() : q.exp();
    return {p.num() << (e - p.exp()), q.num() << (e - q.exp()), e};
}

}  // namespace

DyadicPoint torus_distance(DyadicPoint a, DyadicPoint b) {
    auto g = to_common_grid(a, b);
    std::uint64_t one = std::uint64_t{1} << g.exp;
    std::uint64_t d = g.a > g.b ? g.a - g.b : g.b - g.a;
    std::uint64_t dist = d <= one - d ? d : one - d;  // <= 2^(exp-1) < 2^exp
    return DyadicPoint::make(dist, g.exp);
}

DyadicPoint arc_gap(DyadicPoint a, DyadicPoint b) {
    auto g = to_common_grid(a, b);
    std::uint64_t one = std::uint64_t{1} << g.exp;
    std::uint64_t arc = g.b >= g.a ? g.b - g.a : one - (g.a - g.b);
    return DyadicPoint::make(arc, g.exp);
}

TorusPoint TorusPoint::exact(DyadicPoint p) {
    TorusPoint t;
    t.rep_ = p;
    return t;
}

TorusPoint TorusPoint::approx(double v) {
    if (!(std::isfinite(v) && v >= 0.0 && v < 1.0))
        throw std::invalid_argument("TorusPoint: binary64 value must be finite and in [0,1)");
    TorusPoint t;
    t.rep_ = v;
    return t;
}

DyadicPoint TorusPoint::as_exact() const {
    if (!is_exact()) throw std::invalid_argument("TorusPoint: not an exact point");
    return std::get<DyadicPoint>(rep_);
}

double TorusPoint::as_approx() const {
    if (is_exact()) throw std::invalid_argument("TorusPoint: not a binary64 point");
    return std::get<double>(rep_);
}

double TorusPoint::value() const {
    return is_exact() ? std::get<DyadicPoint>(rep_).value() : std::get<double>(rep_);
}

namespace {

void require_same_rep(const TorusPoint& a, const TorusPoint& b) {
    if (a.is_exact() != b.is_exact())
        throw std::invalid_argument("torus operation on mixed representations");
}

}  // namespace

TorusPoint torus_distance(const TorusPoint& a, const TorusPoint& b) {
    require_same_rep(a, b);
    if (a.is_exact()) return TorusPoint::exact(torus_distance(a.as_exact(), b.as_exact()));
    return TorusPoint::approx(torus_distance_f64(a.as_approx(), b.as_approx()));
}

TorusPoint arc_gap(const TorusPoint& a, const TorusPoint& b) {
    require_same_rep(a, b);
    if (a.is_exact()) return TorusPoint::exact(arc_gap(a.as_exact(), b.as_exact()));
    return TorusPoint::approx(arc_gap_f64(a.as_approx(), b.as_approx()));
}

double torus_distance_f64(double a, double b) {
    double d = std::fabs(a - b);
    double w = 1.0 - d;
    return d <= w ? d : w;
}

double arc_gap_f64(double a, double b) {
    double g = b - a;
    if (g < 0.0) g += 1.0;
    if (g >= 1.0) g = 0.0;  // b - a = -eps can round up to 1
    return g;
}

}  // namespace ppclab
