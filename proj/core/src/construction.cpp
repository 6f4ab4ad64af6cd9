#include "ppclab/construction.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ppclab/errors.hpp"
#include "ppclab/rng.hpp"
#include "ppclab/torus.hpp"

namespace ppclab {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

constexpr u32 kMaxBlocks = 60;

u32 floor_log2(u64 v) { return static_cast<u32>(std::bit_width(v)) - 1; }

[[noreturn]] void reject(const std::string& what) { throw ValidationError(what); }

}  // namespace

GapCountTarget GapCountTarget::from_table(std::vector<std::uint64_t> q) {
    if (q.empty()) reject("gap count target: table is empty");
    for (std::size_t i = 0; i < q.size(); ++i) {
        u64 n = i + 1;
        if (q[i] < 4)
            reject("gap count target: q(" + std::to_string(n) + ") < 4");
        if (i > 0 && q[i] < q[i - 1])
            reject("gap count target: table decreases at n = " + std::to_string(n));
        if (n >= 2 && floor_log2(q[i]) > n)
            reject("gap count target: q(" + std::to_string(n) +
                   ") exceeds the resolution available at that length");
    }
    return GapCountTarget(std::move(q));
}

GapCountTarget GapCountTarget::builtin_logn(std::uint64_t n_max) {
    std::vector<u64> q;
    q.reserve(n_max);
    for (u64 n = 1; n <= n_max; ++n) q.push_back(floor_log2(n) + 4);
    return from_table(std::move(q));
}

GapCountTarget GapCountTarget::builtin_linear(std::uint64_t n_max) {
    std::vector<u64> q;
    q.reserve(n_max);
    for (u64 n = 1; n <= n_max; ++n) q.push_back(n < 4 ? 4 : n);
    return from_table(std::move(q));
}

std::uint64_t GapCountTarget::q(std::uint64_t n) const {
    if (n == 0 || n > table_.size()) throw std::out_of_range("gap count target: n out of range");
    return table_[n - 1];
}

std::uint32_t GapCountTarget::level(std::uint64_t n) const { return floor_log2(q(n)); }

std::vector<ConfigViolation> validate_tables(std::span<const std::uint32_t> a,
                                             std::span<const std::uint32_t> b,
                                             const std::vector<std::uint64_t>* q_table) {
    std::vector<ConfigViolation> out;
    auto error = [&](std::string msg) { out.push_back({true, std::move(msg)}); };
    auto warn = [&](std::string msg) { out.push_back({false, std::move(msg)}); };

    if (a.size() != b.size()) {
        error("schedule tables differ in length");
        return out;
    }
    if (a.empty()) {
        error("schedule tables are empty");
        return out;
    }
    const u32 m_max = static_cast<u32>(a.size());
    if (m_max > kMaxBlocks) {
        error("more than " + std::to_string(kMaxBlocks) + " blocks");
        return out;
    }
    bool structural_ok = true;
    auto serror = [&](std::string msg) {
        structural_ok = false;
        error(std::move(msg));
    };
    for (u32 m = 1; m <= m_max; ++m) {
        u32 am = a[m - 1], bm = b[m - 1];
        if (am < 1) serror("a(" + std::to_string(m) + ") must be >= 1");
        if (bm < 1) serror("b(" + std::to_string(m) + ") must be >= 1");
        if (bm > m) serror("b(" + std::to_string(m) + ") exceeds its block index");
        if (m + am > kMaxDyadicExp)
            serror("block " + std::to_string(m) + " needs grid finer than 2^-" +
                   std::to_string(kMaxDyadicExp));
        if (m >= 2) {
            if (am < a[m - 2]) serror("a decreases at m = " + std::to_string(m));
            if (bm < b[m - 2]) serror("b decreases at m = " + std::to_string(m));
            // spare budget m - b(m) may never shrink: b grows by at most 1 per block
            if (bm > b[m - 2] + 1) serror("spare budget decreases at m = " + std::to_string(m));
        }
    }
    if (structural_ok) {
        if (q_table != nullptr) {
            if (q_table->size() >= 2 && q_table->back() <= q_table->front())
                error("gap count target never grows; the schedule cannot stay ahead of it");
        } else if (m_max < 2 || m_max - b[m_max - 1] <= 1 - b[0]) {
            error("spare budget does not grow from first to last block");
        }
        if (m_max >= 2) {
            u32 first = m_max / 2 + 1;
            bool constant = true;
            for (u32 m = first + 1; m <= m_max && constant; ++m)
                if (m - b[m - 1] != first - b[first - 1]) constant = false;
            if (first < m_max && constant)
                warn("spare budget is constant over the top half of the schedule");
        }
    }
    return out;
}

ConstructionConfig ConstructionConfig::derive(const GapCountTarget& target, std::uint32_t m_max) {
    if (m_max < 1 || m_max > kMaxBlocks) reject("block count out of range");
    if (target.size() < static_cast<u64>(m_max) + 1)
        reject("gap count target table must cover lengths 1.." + std::to_string(m_max + 1));
    std::vector<u32> a, b;
    a.reserve(m_max);
    b.reserve(m_max);
    for (u32 m = 1; m <= m_max; ++m) {
        u32 hm = target.level(m);
        u32 hn = target.level(m + 1);
        a.push_back((hm + 1) / 2);
        b.push_back(m + 1 - hn / 2);
    }
    std::vector<u64> q(target.table().begin(), target.table().end());
    return finish(std::move(a), std::move(b), std::move(q), ConfigSource::DerivedFromQ);
}

ConstructionConfig ConstructionConfig::from_tables(std::vector<std::uint32_t> a,
                                                   std::vector<std::uint32_t> b) {
    return finish(std::move(a), std::move(b), {}, ConfigSource::Explicit);
}

ConstructionConfig ConstructionConfig::finish(std::vector<std::uint32_t> a,
                                              std::vector<std::uint32_t> b,
                                              std::vector<std::uint64_t> q, ConfigSource source) {
    const std::vector<u64>* qp = source == ConfigSource::DerivedFromQ ? &q : nullptr;
    auto violations = validate_tables(a, b, qp);
    std::string errors;
    std::vector<std::string> warnings;
    for (auto& v : violations) {
        if (v.error) {
            if (!errors.empty()) errors += "; ";
            errors += v.message;
        } else {
            warnings.push_back(std::move(v.message));
        }
    }
    if (!errors.empty()) reject("invalid schedule: " + errors);
    ConstructionConfig cfg;
    cfg.a_ = std::move(a);
    cfg.b_ = std::move(b);
    cfg.q_ = std::move(q);
    cfg.source_ = source;
    cfg.warnings_ = std::move(warnings);
    return cfg;
}

std::uint32_t ConstructionConfig::a(std::uint32_t m) const {
    if (m < 1 || m > m_max()) throw std::out_of_range("block index out of range");
    return a_[m - 1];
}

std::uint32_t ConstructionConfig::b(std::uint32_t m) const {
    if (m < 1 || m > m_max()) throw std::out_of_range("block index out of range");
    return b_[m - 1];
}

std::uint64_t ConstructionConfig::max_len() const {
    return (u64{1} << b(m_max())) + (u64{1} << m_max());
}

std::uint64_t ConstructionConfig::max_random_len() const { return u64{1} << m_max(); }

std::string ConstructionConfig::digest() const {
    u64 h = 0xcbf29ce484222325ull;
    auto mix = [&h](u64 v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(source_ == ConfigSource::DerivedFromQ ? 1 : 2);
    mix(a_.size());
    for (u32 v : a_) mix(v);
    for (u32 v : b_) mix(v);
    mix(q_.size());
    for (u64 v : q_) mix(v);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return std::string(buf);
}

namespace {

u64 det_count(u32 m, const ConstructionConfig& cfg) {
    if (m == 1) return u64{1} << cfg.b(1);
    return (u64{1} << cfg.b(m)) - (u64{1} << cfg.b(m - 1));
}

}  // namespace

SlotRef slot_of(std::uint64_t n, const ConstructionConfig& cfg) {
    if (n == 0) throw std::out_of_range("sequence index out of range");
    if (n == 1) return SlotRef{SlotKind::Random, 0, 1};
    u64 pos = 1;
    for (u32 m = 1; m <= cfg.m_max(); ++m) {
        u64 dc = det_count(m, cfg);
        if (n <= pos + dc) return SlotRef{SlotKind::Deterministic, m, n - pos};
        pos += dc;
        u64 rc = u64{1} << (m - 1);
        // random slots seen before this segment: the n = 1 slot plus the
        // 2^{k-1} slots of each earlier block, totalling 2^{m-1}
        if (n <= pos + rc) return SlotRef{SlotKind::Random, m, (u64{1} << (m - 1)) + (n - pos)};
        pos += rc;
    }
    throw std::out_of_range("sequence index beyond the configured blocks");
}

std::vector<SlotRef> block_schedule(std::uint64_t n_len, const ConstructionConfig& cfg) {
    if (n_len == 0 || n_len > cfg.max_len())
        throw std::out_of_range("sequence length beyond the configured blocks");
    std::vector<SlotRef> slots;
    slots.reserve(n_len);
    for (u64 n = 1; n <= n_len; ++n) slots.push_back(slot_of(n, cfg));
    return slots;
}

std::vector<DyadicPoint> deterministic_block(std::uint32_t m, const ConstructionConfig& cfg) {
    u32 bm = cfg.b(m);
    std::vector<DyadicPoint> pts;
    if (m == 1) {
        pts.reserve(u64{1} << bm);
        for (u64 k = 0; k < (u64{1} << bm); ++k) pts.push_back(DyadicPoint::make(k, bm));
        return pts;
    }
    u32 d = bm - cfg.b(m - 1);
    if (d == 0) return pts;
    // within each run of 2^d numerators exactly one (the multiple of 2^d,
    // already on the coarser grid) is excluded
    u64 run = u64{1} << d;
    u64 count = (u64{1} << bm) - (u64{1} << cfg.b(m - 1));
    pts.reserve(count);
    for (u64 i = 0; i < count; ++i) {
        u64 block = i / (run - 1);
        u64 off = i % (run - 1);
        pts.push_back(DyadicPoint::make(block * run + off + 1, bm));
    }
    return pts;
}

std::uint32_t index_block(std::uint64_t j) {
    if (j == 0) throw std::out_of_range("sequence index out of range");
    if (j == 1) return 0;
    return static_cast<u32>(std::bit_width(j - 1));
}

SequenceRecord construct_sequence(std::uint64_t n, const ConstructionConfig& cfg,
                                  std::uint64_t seed) {
    if (n > cfg.max_len()) throw std::out_of_range("prefix length exceeds the configured blocks");
    SplitMix64 rng(seed);
    std::vector<DyadicPoint> pts;
    pts.reserve(n);
    if (n >= 1) {
        rng.next();  // anchor slot draws like any random slot, then pins to 0
        pts.push_back(DyadicPoint::make(0, 0));
    }
    for (u32 m = 1; m <= cfg.m_max() && pts.size() < n; ++m) {
        for (const auto& p : deterministic_block(m, cfg)) {
            if (pts.size() == n) break;
            pts.push_back(p);
        }
        u32 k = m + cfg.a(m);
        u64 mask = (u64{1} << k) - 1;
        for (u64 i = 0; i < (u64{1} << (m - 1)) && pts.size() < n; ++i)
            pts.push_back(DyadicPoint::make(rng.next() & mask, k));
    }
    SequenceMeta meta{.kind = "construction", .seed = seed, .config_digest = cfg.digest()};
    return SequenceRecord::exact(std::move(pts), std::move(meta));
}

SequenceRecord sample_random_model(std::uint64_t n, const ConstructionConfig& cfg,
                                   std::uint64_t seed) {
    if (n > cfg.max_random_len())
        throw std::out_of_range("prefix length exceeds the configured blocks");
    SplitMix64 rng(seed);
    std::vector<DyadicPoint> pts;
    pts.reserve(n);
    if (n >= 1) {
        rng.next();
        pts.push_back(DyadicPoint::make(0, 0));
    }
    for (u64 j = 2; j <= n; ++j) {
        u32 m = index_block(j);
        u32 k = m + cfg.a(m);
        u64 mask = (u64{1} << k) - 1;
        pts.push_back(DyadicPoint::make(rng.next() & mask, k));
    }
    SequenceMeta meta{.kind = "random-model", .seed = seed, .config_digest = cfg.digest()};
    return SequenceRecord::exact(std::move(pts), std::move(meta));
}

LoadedConfig read_config_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        reject(std::string("config: ") + e.what());
    }
    if (!j.is_object()) reject("config: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k != "source" && k != "q" && k != "a" && k != "b" && k != "seed")
            reject("config: unknown key \"" + k + "\"");
    }
    if (!j.contains("source") || !j["source"].is_string())
        reject("config: \"source\" must be \"q\" or \"explicit\"");
    std::optional<u64> seed;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) reject("config: \"seed\" must be a nonnegative integer");
        seed = j["seed"].get<u64>();
    }
    const std::string source = j["source"].get<std::string>();
    try {
        if (source == "q") {
            if (!j.contains("q") || !j["q"].is_array() || j.contains("a") || j.contains("b"))
                reject("config: source \"q\" requires a \"q\" array and no \"a\"/\"b\"");
            auto q = j["q"].get<std::vector<u64>>();
            if (q.size() < 2) reject("config: \"q\" must cover at least lengths 1..2");
            auto target = GapCountTarget::from_table(std::move(q));
            auto m_max = static_cast<u32>(target.size() - 1);
            return LoadedConfig{ConstructionConfig::derive(target, m_max), seed};
        }
        if (source == "explicit") {
            if (!j.contains("a") || !j.contains("b") || !j["a"].is_array() || !j["b"].is_array() ||
                j.contains("q"))
                reject("config: source \"explicit\" requires \"a\" and \"b\" arrays and no \"q\"");
            auto a = j["a"].get<std::vector<u32>>();
            auto b = j["b"].get<std::vector<u32>>();
            return LoadedConfig{ConstructionConfig::from_tables(std::move(a), std::move(b)), seed};
        }
    } catch (const nlohmann::json::exception& e) {
        reject(std::string("config: ") + e.what());
    }
    reject("config: \"source\" must be \"q\" or \"explicit\"");
}

std::string write_config_json(const ConstructionConfig& cfg, std::optional<std::uint64_t> seed) {
    nlohmann::ordered_json j;
    if (cfg.source() == ConfigSource::DerivedFromQ) {
        j["source"] = "q";
        j["q"] = cfg.q_table();
    } else {
        j["source"] = "explicit";
        std::vector<u32> a, b;
        for (u32 m = 1; m <= cfg.m_max(); ++m) {
            a.push_back(cfg.a(m));
            b.push_back(cfg.b(m));
        }
        j["a"] = a;
        j["b"] = b;
    }
    if (seed) j["seed"] = *seed;
    return j.dump();
}

}  // namespace ppclab
