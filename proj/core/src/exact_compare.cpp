#include "ppclab/exact_compare.hpp"

#include <bit>
#include <cmath>

namespace ppclab {

namespace {

using u128 = unsigned __int128;

int countl_zero_u128(u128 x) {
    auto hi = static_cast<std::uint64_t>(x >> 64);
    if (hi) return std::countl_zero(hi);
    return 64 + std::countl_zero(static_cast<std::uint64_t>(x));
}

// frexp-based exact decomposition: d = mant * 2^(exp2 - 53), mant integer
// in [2^52, 2^53) for d > 0 (subnormals are renormalized by frexp).
struct Decomposed {
    std::uint64_t mant;
    int exp2;
};

Decomposed decompose(double d) {
    int e;
    double m = std::frexp(d, &e);
    return {static_cast<std::uint64_t>(std::ldexp(m, 53)), e};
}

}  // namespace

int cmp_dyadic_vs_ratio(std::uint64_t num, std::uint32_t exp, double rnum, double rden) {
    if (rnum == 0.0) return num == 0 ? 0 : 1;
    if (num == 0) return -1;

    auto [a, ea] = decompose(rnum);
    auto [b, eb] = decompose(rden);
    // num/2^exp vs (a*2^ea)/(b*2^eb): the 2^-53 factors cancel, so compare
    //   num*b  vs  a * 2^(exp + ea - eb).
    long shift = static_cast<long>(exp) + ea - eb;
    u128 lhs = static_cast<u128>(num) * b;  // <= 2^62 * 2^53 = 2^115

    if (shift >= 0) {
        if (shift >= 64) return -1;  // rhs >= 2^52 * 2^64 > 2^115 >= lhs
        u128 rhs = static_cast<u128>(a) << shift;
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    // Move the power of two to the left-hand side: num*b*2^(-shift) vs a.
    long t = -shift;
    int lead = 127 - countl_zero_u128(lhs);
    if (lead + t > 126) return 1;  // lhs*2^t >= 2^127 > 2^53 > a
    u128 lhs2 = lhs << t;
    return lhs2 < a ? -1 : (lhs2 > a ? 1 : 0);
}

bool ratio_at_least_half(double rnum, double rden) {
    return 2.0 * rnum >= rden;
}

bool ratio_above_half(double rnum, double rden) {
    return 2.0 * rnum > rden;
}

}  // namespace ppclab
