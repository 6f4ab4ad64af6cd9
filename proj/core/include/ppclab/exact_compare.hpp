#pragma once

// Exact comparison of a dyadic rational num/2^exp against a ratio of two
// binary64 values. Every finite double is itself a dyadic rational, so the
// comparison reduces to an integer comparison after cross-multiplying; the
// 128-bit intermediate never loses a bit. This is what lets pair counting
// treat a query radius s/y_N exactly instead of rounding s/y_N first.

#include <cstdint>

namespace ppclab {

// Sign of num/2^exp - rnum/rden.
// Preconditions: num <= 2^62, exp <= 62, rnum >= 0 and rden > 0 both finite.
int cmp_dyadic_vs_ratio(std::uint64_t num, std::uint32_t exp, double rnum, double rden);

// rnum/rden >= 1/2 resp. > 1/2, exact (scaling by 2 is exact in binary64).
bool ratio_at_least_half(double rnum, double rden);
bool ratio_above_half(double rnum, double rden);

}  // namespace ppclab
