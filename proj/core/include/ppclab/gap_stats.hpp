#pragma once
// Circular gap structure of a sequence prefix: the multiset of arc lengths
// between consecutive points of the sorted prefix, including the arc that
// wraps past 1 back to the smallest point. A prefix of length n always
// contributes exactly n gaps (duplicates produce zero-length gaps) and the
// gap lengths sum to 1.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ppclab/sequence.hpp"

namespace ppclab {

// A gap length num / 2^exp in canonical form (num odd, or num == 0 with
// exp == 0). Unlike torus points, a gap can have length exactly 1 (the
// single gap of a one-point prefix), hence the separate type.
struct DyadicGap {
    std::uint64_t num = 0;
    std::uint32_t exp = 0;

    double value() const;
    friend bool operator==(const DyadicGap&, const DyadicGap&) = default;
};

// Distinct gap lengths in increasing order with their multiplicities.
class GapProfile {
public:
    GapProfile(std::uint64_t n, std::vector<DyadicGap> lengths,
               std::vector<std::uint64_t> multiplicities);
    GapProfile(std::uint64_t n, std::vector<double> lengths,
               std::vector<std::uint64_t> multiplicities);

    std::uint64_t n() const { return n_; }
    std::uint64_t g() const;  // number of distinct lengths
    bool is_exact() const { return std::holds_alternative<std::vector<DyadicGap>>(lengths_); }
    const std::vector<DyadicGap>& exact_lengths() const;
    const std::vector<double>& approx_lengths() const;
    double length_value(std::size_t i) const;
    const std::vector<std::uint64_t>& multiplicities() const { return mult_; }
    std::uint64_t max_multiplicity() const;
    double max_ratio() const;  // max_multiplicity() / n

private:
    std::uint64_t n_;
    std::variant<std::vector<DyadicGap>, std::vector<double>> lengths_;
    std::vector<std::uint64_t> mult_;
};

// Gap profile of the first n points. For exact sequences dedup_tol must be
// 0 (grouping is by exact equality); passing a nonzero tolerance there is a
// usage error. For binary64 sequences, sorted raw gaps are grouped by
// single linkage (consecutive gaps within dedup_tol join one group) and
// each group is represented by its mean.
GapProfile gap_profile(const SequenceRecord& rec, std::uint64_t n, double dedup_tol = 0.0);

struct GapSeriesRow {
    std::uint64_t n = 0;
    std::uint64_t g = 0;
    std::uint64_t max_multiplicity = 0;
    double max_ratio = 0.0;
};

// Profile summaries at increasing prefix lengths, each within [1, size].
std::vector<GapSeriesRow> gap_series(const SequenceRecord& rec,
                                     std::span<const std::uint64_t> checkpoints,
                                     double dedup_tol = 0.0);

// JSON object {"N", "g", "lengths", "multiplicities", "max_ratio"}; exact
// lengths serialize as "num/2^exp" strings, binary64 lengths as numbers.
std::string gap_profile_json(const GapProfile& profile);
std::string gap_profiles_json(std::span<const GapProfile> profiles);

}  // namespace ppclab
