#pragma once

// Reference sequence families: Kronecker orbits, seeded i.i.d. uniforms and
// equispaced grids. All outputs live in [0,1); randomized generators are
// deterministic functions of their seed.

#include <cstdint>

#include "ppclab/sequence.hpp"

namespace ppclab {

// (sqrt(5)-1)/2, the canonical badly-approximable rotation number.
double golden_alpha();

// x_k = alpha*k mod 1 for k = 1..n, binary64. For large k the reduction
// mod 1 works on a product of magnitude alpha*k, so the usual loss of
// trailing bits applies.
SequenceRecord kronecker(double alpha, std::uint64_t n);

// x_k = next()/2^64 from SplitMix64(seed), k = 1..n.
SequenceRecord iid_uniform(std::uint64_t n, std::uint64_t seed);

// k/n for k = 0..n-1. Exact dyadic when n is a power of two, binary64
// otherwise.
SequenceRecord equispaced(std::uint64_t n);

}  // namespace ppclab
