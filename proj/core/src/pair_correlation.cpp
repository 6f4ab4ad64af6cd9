#include "ppclab/pair_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ppclab/exact_compare.hpp"

namespace ppclab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void check_radius(const Radius& r) {
    if (!(std::isfinite(r.num) && r.num >= 0.0))
        throw std::invalid_argument("radius numerator must be finite and nonnegative");
    if (!(std::isfinite(r.den) && r.den > 0.0))
        throw std::invalid_argument("radius denominator must be finite and positive");
}

bool qualifies_exact(DyadicPoint d, const Radius& r, Predicate pred) {
    int c = cmp_dyadic_vs_ratio(d.num(), d.exp(), r.num, r.den);
    return pred == Predicate::Strict ? c < 0 : c <= 0;
}

bool qualifies_f64(double dist, double rv, Predicate pred) {
    return pred == Predicate::Strict ? dist < rv : dist <= rv;
}

// Exact distances never exceed 1/2, so these radii make every pair qualify.
bool whole_torus_exact(const Radius& r, Predicate pred) {
    return pred == Predicate::NonStrict ? ratio_at_least_half(r.num, r.den)
                                        : ratio_above_half(r.num, r.den);
}

// The binary64 path rounds the radius to rv = num/den once and compares
// against it everywhere (including here), which keeps the fast counter and
// the brute reference on the same comparator.
bool whole_torus_f64(double rv, Predicate pred) {
    return pred == Predicate::NonStrict ? rv >= 0.5 : rv > 0.5;
}

// A sorted prefix ready for repeated window sweeps.
struct PreparedPrefix {
    bool exact = true;
    std::size_t n = 0;
    // exact: point positions on the common grid 2^-exp, sorted
    std::vector<u64> pos;
    std::uint32_t exp = 0;
    // binary64: sorted values and their wrap-around extension v[i] + 1
    std::vector<double> v;
    std::vector<double> ext;
};

PreparedPrefix prepare_exact(std::span<const DyadicPoint> pts) {
    PreparedPrefix p;
    p.exact = true;
    p.n = pts.size();
    std::uint32_t e = 0;
    for (const auto& q : pts) e = std::max(e, q.exp());
    p.exp = e;
    p.pos.reserve(pts.size());
    for (const auto& q : pts) p.pos.push_back(q.num() << (e - q.exp()));
    std::sort(p.pos.begin(), p.pos.end());
    return p;
}

PreparedPrefix prepare_f64(std::span<const double> pts) {
    PreparedPrefix p;
    p.exact = false;
    p.n = pts.size();
    p.v.assign(pts.begin(), pts.end());
    std::sort(p.v.begin(), p.v.end());
    p.ext.resize(2 * p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        p.ext[i] = p.v[i];
        p.ext[p.n + i] = p.v[i] + 1.0;
    }
    return p;
}

PreparedPrefix prepare(const SequenceRecord& rec, u64 n) {
    if (n > rec.size()) throw std::out_of_range("prefix length exceeds sequence length");
    if (rec.is_exact())
        return prepare_exact(std::span(rec.exact_points()).first(n));
    return prepare_f64(std::span(rec.approx_points()).first(n));
}

// Largest grid step t with t/2^exp qualifying, or -1 when even t = 0 fails.
// Monotone in t, so a binary search against the exact comparator suffices.
std::int64_t window_threshold(std::uint32_t exp, const Radius& r, Predicate pred) {
    auto ok = [&](u64 t) {
        int c = cmp_dyadic_vs_ratio(t, exp, r.num, r.den);
        return pred == Predicate::Strict ? c < 0 : c <= 0;
    };
    if (!ok(0)) return -1;
    u64 lo = 0, hi = u64{1} << exp;
    while (lo < hi) {
        u64 mid = lo + (hi - lo + 1) / 2;
        if (ok(mid)) lo = mid;
        else hi = mid - 1;
    }
    return static_cast<std::int64_t>(lo);
}

// Ordered pair count by forward sweep over the sorted circle. Each
// unordered pair within reach appears in exactly one forward window (the
// radius is at most half the circle here, so the two forward arcs of a pair
// cannot both qualify; a coincident pair sits at arc 0 in one window only).
u64 count_exact(const PreparedPrefix& p, const Radius& r, Predicate pred) {
    if (whole_torus_exact(r, pred)) return p.n < 2 ? 0 : static_cast<u64>(p.n) * (p.n - 1);
    std::int64_t tw = window_threshold(p.exp, r, pred);
    if (tw < 0 || p.n < 2) return 0;
    const u64 T = static_cast<u64>(tw);  // T < 2^(exp-1): window below half circle
    const u64 wrap = u64{1} << p.exp;
    u64 pairs = 0;
    std::size_t hi = 0;
    for (std::size_t i = 0; i < p.n; ++i) {
        if (hi < i) hi = i;
        const u64 bound = p.pos[i] + T;
        while (hi + 1 < i + p.n) {
            std::size_t nx = hi + 1;
            u64 val = nx < p.n ? p.pos[nx] : p.pos[nx - p.n] + wrap;
            if (val > bound) break;
            hi = nx;
        }
        pairs += hi - i;
    }
    return 2 * pairs;
}

// The binary64 sweep proposes candidates with a small safety margin and
// re-checks each with the same distance expression the brute counter uses,
// so both counters take identical decisions. A pair whose two forward arcs
// both fall inside the widened window would be proposed twice; such a
// candidate contributes 1 instead of 2.
u64 count_f64(const PreparedPrefix& p, const Radius& r, Predicate pred) {
    const double rv = r.num / r.den;
    if (whole_torus_f64(rv, pred)) return p.n < 2 ? 0 : static_cast<u64>(p.n) * (p.n - 1);
    if (p.n < 2) return 0;
    const double twin = rv + 0x1p-48;  // covers the rounding spread of both arc paths
    u64 count = 0;
    std::size_t hi = 0;
    for (std::size_t i = 0; i < p.n; ++i) {
        if (hi < i) hi = i;
        const double bound = p.v[i] + twin;
        while (hi + 1 < i + p.n && p.ext[hi + 1] <= bound) ++hi;
        for (std::size_t h = i + 1; h <= hi; ++h) {
            std::size_t j = h < p.n ? h : h - p.n;
            if (!qualifies_f64(torus_distance_f64(p.v[i], p.v[j]), rv, pred)) continue;
            bool also_other_window = h < p.n ? p.ext[i + p.n] <= p.v[j] + twin
                                             : p.ext[i] <= p.v[j] + twin;
            count += also_other_window ? 1 : 2;
        }
    }
    return count;
}

u64 count_prepared(const PreparedPrefix& p, const Radius& r, Predicate pred) {
    return p.exact ? count_exact(p, r, pred) : count_f64(p, r, pred);
}

}  // namespace

std::uint64_t pair_count_brute(const SequenceRecord& rec, std::uint64_t n, Radius radius,
                               Predicate pred) {
    check_radius(radius);
    if (n > rec.size()) throw std::out_of_range("prefix length exceeds sequence length");
    u64 count = 0;
    if (rec.is_exact()) {
        auto pts = std::span(rec.exact_points()).first(n);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (qualifies_exact(torus_distance(pts[i], pts[j]), radius, pred)) count += 2;
    } else {
        auto pts = std::span(rec.approx_points()).first(n);
        const double rv = radius.num / radius.den;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (qualifies_f64(torus_distance_f64(pts[i], pts[j]), rv, pred)) count += 2;
    }
    return count;
}

std::uint64_t pair_count_fast(const SequenceRecord& rec, std::uint64_t n, Radius radius,
                              Predicate pred) {
    check_radius(radius);
    auto p = prepare(rec, n);
    return count_prepared(p, radius, pred);
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto s = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (s > 0 && static_cast<u128>(s) * s > n) --s;
    while (static_cast<u128>(s + 1) * (s + 1) <= n) ++s;
    return s;
}

Scaling Scaling::custom(std::vector<double> table) {
    for (double v : table)
        if (!(std::isfinite(v) && v > 0.0))
            throw std::invalid_argument("custom scaling entries must be positive and finite");
    Scaling sc(Kind::Custom);
    sc.table_ = std::move(table);
    return sc;
}

double Scaling::y(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("scaling index must be >= 1");
    switch (kind_) {
        case Kind::Identity:
            return static_cast<double>(n);
        case Kind::PlusSqrt:
            return static_cast<double>(n + isqrt_u64(n));
        case Kind::MinusSqrt: {
            u64 r = isqrt_u64(n);
            return static_cast<double>(n - r >= 1 ? n - r : 1);
        }
        case Kind::Custom:
            if (n > table_.size()) throw std::out_of_range("custom scaling table too short");
            return table_[n - 1];
    }
    throw std::logic_error("unreachable");
}

double pc_statistic(const SequenceRecord& rec, const PcQuery& query) {
    if (query.n == 0) throw std::invalid_argument("pc_statistic: n must be >= 1");
    if (!(std::isfinite(query.s) && query.s > 0.0))
        throw std::invalid_argument("pc_statistic: s must be positive and finite");
    Radius r{query.s, query.scaling.y(query.n)};
    u64 count = pair_count_fast(rec, query.n, r, query.predicate);
    return static_cast<double>(count) / static_cast<double>(query.n);
}

std::vector<std::pair<double, double>> pc_curve(const SequenceRecord& rec, std::uint64_t n,
                                                std::span<const double> s_grid,
                                                const Scaling& scaling, Predicate pred) {
    if (n == 0) throw std::invalid_argument("pc_curve: n must be >= 1");
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        if (!(std::isfinite(s_grid[i]) && s_grid[i] > 0.0))
            throw std::invalid_argument("pc_curve: grid values must be positive and finite");
        if (i > 0 && !(s_grid[i] > s_grid[i - 1]))
            throw std::invalid_argument("pc_curve: grid must be strictly increasing");
    }
    std::vector<std::pair<double, double>> rows;
    if (s_grid.empty()) return rows;
    auto p = prepare(rec, n);
    const double y = scaling.y(n);
    rows.reserve(s_grid.size());
    for (double s : s_grid) {
        u64 count = count_prepared(p, Radius{s, y}, pred);
        rows.emplace_back(s, static_cast<double>(count) / static_cast<double>(n));
    }
    return rows;
}

void write_pc_curve_csv(std::span<const std::pair<double, double>> rows, std::ostream& out) {
    out << "s,F\n";
    for (const auto& [s, f] : rows) out << format_f64(s) << ',' << format_f64(f) << '\n';
}

}  // namespace ppclab
