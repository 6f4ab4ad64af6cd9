#pragma once
// Closed-form moments of the pair correlation statistic under the
// all-random reference model (see sample_random_model): X_1 = 0 and X_j
// uniform on the block grid of step 2^-(k+a(k)) for j in I_k, independent
// across indices. Pair counting uses the nonstrict predicate there, and the
// block grids nest, so each unordered pair {i < j} qualifies with a
// probability that depends only on the block of the larger index.

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "ppclab/construction.hpp"
#include "ppclab/pair_correlation.hpp"

namespace ppclab {

using ExactRational = boost::multiprecision::cpp_rational;

// P(|X - t| <= radius) for X uniform on the grid of step 2^-grid_exp and t
// any point of that grid (or a coarser one): (2 floor(2^grid_exp radius) +
// 1) / 2^grid_exp, capped at 1. Requires radius >= 0, grid_exp <= 62.
ExactRational window_probability(std::uint32_t grid_exp, const ExactRational& radius);

// E[F(n, s)] with window s / y, exact. Requires 1 <= n <= cfg.max_random_len().
ExactRational pc_expectation(std::uint64_t n, double s, double y,
                             const ConstructionConfig& cfg);

// Var[F(n, s)] treating the per-pair indicators as uncorrelated: pairs with
// distinct larger indices are independent in this model, and the residual
// correlation among pairs sharing the larger index only shifts lower-order
// terms.
ExactRational pc_variance(std::uint64_t n, double s, double y, const ConstructionConfig& cfg);

struct MomentReport {
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
    double std_error = 0.0; // sqrt(variance / samples)
    std::uint64_t samples = 0;
};

// Monte Carlo moments of F(n, s) over fresh reference-model samples, one
// sub-seed per sample drawn from a master stream. Requires samples >= 2.
MomentReport mc_moments(std::uint64_t n, double s, const ConstructionConfig& cfg,
                        const Scaling& scaling, std::uint64_t samples, std::uint64_t seed);

}  // namespace ppclab
