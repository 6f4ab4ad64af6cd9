#include "ppclab/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ppclab/rng.hpp"

namespace ppclab {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

ExactRational exact_ratio(double s, double y) {
    if (!(std::isfinite(s) && s > 0.0)) throw std::invalid_argument("s must be positive and finite");
    if (!(std::isfinite(y) && y > 0.0)) throw std::invalid_argument("y must be positive and finite");
    return ExactRational(s) / ExactRational(y);  // double to rational is exact
}

// Sum of (j - 1) over indices j of block I_k clipped to [2, n].
BigInt pair_weight(u32 k, u64 n) {
    u64 lo = u64{1} << (k - 1);      // first j - 1 in the block
    BigInt hi = BigInt(n) - 1;       // last j - 1 once clipped
    u64 block_hi = (u64{1} << k) - 1;
    if (hi > block_hi) hi = block_hi;
    return (hi + lo) * (hi - lo + 1) / 2;
}

}  // namespace

ExactRational window_probability(std::uint32_t grid_exp, const ExactRational& radius) {
    if (grid_exp > kMaxDyadicExp) throw std::out_of_range("grid exponent out of range");
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    BigInt cells = BigInt(1) << grid_exp;
    BigInt reach = (boost::multiprecision::numerator(radius) << grid_exp) /
                   boost::multiprecision::denominator(radius);
    BigInt hits = 2 * reach + 1;
    if (hits > cells) hits = cells;
    return ExactRational(hits, cells);
}

namespace {

// Shared moment loop: f combines the per-block window probability into the
// accumulating sum with the block's pair weight.
template <typename Term>
ExactRational moment_sum(std::uint64_t n, double s, double y, const ConstructionConfig& cfg,
                         Term term) {
    if (n == 0 || n > cfg.max_random_len()) throw std::out_of_range("n out of range");
    ExactRational r = exact_ratio(s, y);
    ExactRational sum = 0;
    u32 m_top = index_block(n);
    for (u32 k = 1; k <= m_top; ++k) {
        ExactRational gamma = window_probability(k + cfg.a(k), r);
        sum += term(gamma) * ExactRational(pair_weight(k, n));
    }
    return sum;
}

}  // namespace

ExactRational pc_expectation(std::uint64_t n, double s, double y, const ConstructionConfig& cfg) {
    ExactRational sum = moment_sum(n, s, y, cfg, [](const ExactRational& g) { return g; });
    return 2 * sum / n;
}

ExactRational pc_variance(std::uint64_t n, double s, double y, const ConstructionConfig& cfg) {
    ExactRational sum =
        moment_sum(n, s, y, cfg, [](const ExactRational& g) { return g * (1 - g); });
    return 4 * sum / (ExactRational(n) * n);
}

MomentReport mc_moments(std::uint64_t n, double s, const ConstructionConfig& cfg,
                        const Scaling& scaling, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("need at least 2 samples");
    if (n == 0 || n > cfg.max_random_len()) throw std::out_of_range("n out of range");
    SplitMix64 master(seed);
    std::vector<double> values;
    values.reserve(samples);
    PcQuery query{n, s, scaling, Predicate::NonStrict};
    for (u64 i = 0; i < samples; ++i) {
        SequenceRecord rec = sample_random_model(n, cfg, master.next());
        values.push_back(pc_statistic(rec, query));
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(samples);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double variance = ss / static_cast<double>(samples - 1);
    return MomentReport{mean, variance, std::sqrt(variance / static_cast<double>(samples)),
                        samples};
}

}  // namespace ppclab
