#pragma once
// Hierarchical torus sequences with few distinct gap lengths. Index blocks
// I_m = (2^{m-1}, 2^m] are served by two kinds of slots: random slots draw
// fresh points from the block grid (step 2^-(m+a(m))), deterministic slots
// sweep the refinement C_m of a coarser grid ladder B_1 c B_2 c ... (step
// 2^-b(m)). The slot layout keeps the number of distinct gap lengths of
// every prefix below a prescribed target.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppclab/sequence.hpp"

namespace ppclab {

// Ceiling q(n) on the number of distinct gap lengths at prefix length n.
// Tables are 1-based: entry [n-1] applies at length n. Valid targets have
// q(n) >= 4, q weakly increasing, and floor(log2 q(n)) <= n for n >= 2.
class GapCountTarget {
public:
    static GapCountTarget from_table(std::vector<std::uint64_t> q);
    // max(4, floor(log2 n) + 4): slowly growing target
    static GapCountTarget builtin_logn(std::uint64_t n_max);
    // max(4, n): permissive target
    static GapCountTarget builtin_linear(std::uint64_t n_max);

    std::uint64_t size() const { return table_.size(); }
    std::uint64_t q(std::uint64_t n) const;
    // floor(log2 q(n)), the resolution budget at length n; always >= 2.
    std::uint32_t level(std::uint64_t n) const;
    std::span<const std::uint64_t> table() const { return table_; }

private:
    explicit GapCountTarget(std::vector<std::uint64_t> q) : table_(std::move(q)) {}
    std::vector<std::uint64_t> table_;
};

enum class ConfigSource { DerivedFromQ, Explicit };

struct ConfigViolation {
    bool error = true;  // false: advisory only
    std::string message;
};

// Per-block schedule tables a(m), b(m) for blocks m = 1..m_max.
class ConstructionConfig {
public:
    // a(m) = ceil(level(m) / 2), b(m) = m + 1 - floor(level(m+1) / 2);
    // the target table must cover lengths 1..m_max+1.
    static ConstructionConfig derive(const GapCountTarget& target, std::uint32_t m_max);
    static ConstructionConfig from_tables(std::vector<std::uint32_t> a,
                                          std::vector<std::uint32_t> b);

    std::uint32_t m_max() const { return static_cast<std::uint32_t>(a_.size()); }
    std::uint32_t a(std::uint32_t m) const;  // random grid refinement of block m
    std::uint32_t b(std::uint32_t m) const;  // deterministic grid level after block m
    // m - b(m): index budget the deterministic sweep has not used yet
    std::uint32_t spare(std::uint32_t m) const { return m - b(m); }

    ConfigSource source() const { return source_; }
    // retained target table when source() == DerivedFromQ
    const std::vector<std::uint64_t>& q_table() const { return q_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    // largest constructible prefix: end of the last random segment
    std::uint64_t max_len() const;
    // largest n the all-random reference model supports: 2^m_max
    std::uint64_t max_random_len() const;

    // FNV-1a fingerprint of source and tables, 16 hex digits
    std::string digest() const;

private:
    ConstructionConfig() = default;
    static ConstructionConfig finish(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                                     std::vector<std::uint64_t> q, ConfigSource source);
    std::vector<std::uint32_t> a_, b_;
    std::vector<std::uint64_t> q_;
    ConfigSource source_ = ConfigSource::Explicit;
    std::vector<std::string> warnings_;
};

// All rule checks on a candidate table pair; factories reject candidates
// with any error-severity violation. For derived configs the growth rule
// applies to the target table (it must grow overall), for explicit ones to
// spare(): a schedule whose spare budget never grows cannot keep the gap
// count bounded for long, and q identically 4 is the canonical reject.
std::vector<ConfigViolation> validate_tables(std::span<const std::uint32_t> a,
                                             std::span<const std::uint32_t> b,
                                             const std::vector<std::uint64_t>* q_table);

enum class SlotKind { Deterministic, Random };

struct SlotRef {
    SlotKind kind = SlotKind::Random;
    std::uint32_t m = 0;      // block index; the lone m = 0 slot is n = 1
    // Deterministic: 1-based rank within C_m. Random: 1-based ordinal in
    // the global stream of random slots (n = 1 is ordinal 1).
    std::uint64_t index = 0;

    friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

// Which slot serves sequence index n (1-based). Layout: n = 1 is a lone
// random slot (pinned to 0); block m >= 1 contributes its deterministic
// segment (|C_m| slots) followed by its random segment (2^{m-1} slots).
SlotRef slot_of(std::uint64_t n, const ConstructionConfig& cfg);

// Slots for n = 1..n_len in order.
std::vector<SlotRef> block_schedule(std::uint64_t n_len, const ConstructionConfig& cfg);

// C_m in increasing order: grid 2^-b(m) points absent from grid 2^-b(m-1)
// (all of grid 2^-b(1) for m = 1).
std::vector<DyadicPoint> deterministic_block(std::uint32_t m, const ConstructionConfig& cfg);

// Block m with 2^{m-1} < j <= 2^m, or 0 for j = 1.
std::uint32_t index_block(std::uint64_t j);

// First n points of the full construction. One RNG draw per anchor or
// random slot in index order (the anchor draw is discarded and X_1 = 0),
// none for deterministic slots, so prefixes of one seed agree bitwise.
SequenceRecord construct_sequence(std::uint64_t n, const ConstructionConfig& cfg,
                                  std::uint64_t seed);

// The all-random reference model: X_1 = 0, X_j uniform on the block grid of
// I_m for j in I_m. Same draw discipline as construct_sequence.
SequenceRecord sample_random_model(std::uint64_t n, const ConstructionConfig& cfg,
                                   std::uint64_t seed);

// Config file round-trip. Schema: {"source": "q" | "explicit", "q": [...]
// or "a": [...], "b": [...], "seed": optional}.
struct LoadedConfig {
    ConstructionConfig config;
    std::optional<std::uint64_t> seed;
};
LoadedConfig read_config_json(const std::string& text);
std::string write_config_json(const ConstructionConfig& cfg, std::optional<std::uint64_t> seed);

}  // namespace ppclab
