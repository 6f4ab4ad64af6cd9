#include "ppclab/gap_stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ppclab {

namespace {

using u64 = std::uint64_t;

DyadicGap canonical_gap(u64 num, std::uint32_t exp) {
    if (num == 0) return DyadicGap{0, 0};
    unsigned tz = static_cast<unsigned>(std::countr_zero(num));
    if (tz > exp) tz = exp;
    return DyadicGap{num >> tz, exp - tz};
}

std::vector<u64> exact_raw_gaps(std::span<const DyadicPoint> pts, std::uint32_t* exp_out) {
    std::uint32_t e = 0;
    for (const auto& p : pts) e = std::max(e, p.exp());
    std::vector<u64> pos;
    pos.reserve(pts.size());
    for (const auto& p : pts) pos.push_back(p.num() << (e - p.exp()));
    std::sort(pos.begin(), pos.end());
    std::vector<u64> gaps;
    gaps.reserve(pos.size());
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) gaps.push_back(pos[i + 1] - pos[i]);
    // Wrap arc from the largest point past 1 to the smallest. Computed as
    // (1 - last) + first so a one-point prefix gets the full circle, length 1.
    gaps.push_back(((u64{1} << e) - pos.back()) + pos.front());
    *exp_out = e;
    return gaps;
}

GapProfile profile_exact(std::span<const DyadicPoint> pts) {
    std::uint32_t e = 0;
    std::vector<u64> gaps = exact_raw_gaps(pts, &e);
    std::sort(gaps.begin(), gaps.end());
    std::vector<DyadicGap> lengths;
    std::vector<u64> mult;
    for (std::size_t i = 0; i < gaps.size();) {
        std::size_t j = i;
        while (j < gaps.size() && gaps[j] == gaps[i]) ++j;
        lengths.push_back(canonical_gap(gaps[i], e));
        mult.push_back(j - i);
        i = j;
    }
    return GapProfile(pts.size(), std::move(lengths), std::move(mult));
}

GapProfile profile_f64(std::span<const double> pts, double tol) {
    std::vector<double> v(pts.begin(), pts.end());
    std::sort(v.begin(), v.end());
    std::vector<double> gaps;
    gaps.reserve(v.size());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) gaps.push_back(v[i + 1] - v[i]);
    gaps.push_back((1.0 - v.back()) + v.front());
    std::sort(gaps.begin(), gaps.end());
    std::vector<double> lengths;
    std::vector<u64> mult;
    for (std::size_t i = 0; i < gaps.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < gaps.size() && (j == i || gaps[j] - gaps[j - 1] <= tol)) sum += gaps[j++];
        lengths.push_back(sum / static_cast<double>(j - i));
        mult.push_back(j - i);
        i = j;
    }
    return GapProfile(pts.size(), std::move(lengths), std::move(mult));
}

}  // namespace

double DyadicGap::value() const { return std::ldexp(static_cast<double>(num), -static_cast<int>(exp)); }

GapProfile::GapProfile(std::uint64_t n, std::vector<DyadicGap> lengths,
                       std::vector<std::uint64_t> multiplicities)
    : n_(n), lengths_(std::move(lengths)), mult_(std::move(multiplicities)) {}

GapProfile::GapProfile(std::uint64_t n, std::vector<double> lengths,
                       std::vector<std::uint64_t> multiplicities)
    : n_(n), lengths_(std::move(lengths)), mult_(std::move(multiplicities)) {}

std::uint64_t GapProfile::g() const { return mult_.size(); }

const std::vector<DyadicGap>& GapProfile::exact_lengths() const {
    if (!is_exact()) throw std::invalid_argument("profile holds binary64 lengths");
    return std::get<std::vector<DyadicGap>>(lengths_);
}

const std::vector<double>& GapProfile::approx_lengths() const {
    if (is_exact()) throw std::invalid_argument("profile holds exact lengths");
    return std::get<std::vector<double>>(lengths_);
}

double GapProfile::length_value(std::size_t i) const {
    if (i >= mult_.size()) throw std::out_of_range("gap index out of range");
    if (is_exact()) return std::get<std::vector<DyadicGap>>(lengths_)[i].value();
    return std::get<std::vector<double>>(lengths_)[i];
}

std::uint64_t GapProfile::max_multiplicity() const {
    u64 m = 0;
    for (u64 x : mult_) m = std::max(m, x);
    return m;
}

double GapProfile::max_ratio() const {
    return static_cast<double>(max_multiplicity()) / static_cast<double>(n_);
}

GapProfile gap_profile(const SequenceRecord& rec, std::uint64_t n, double dedup_tol) {
    if (n == 0 || n > rec.size()) throw std::out_of_range("prefix length out of range");
    if (!(std::isfinite(dedup_tol) && dedup_tol >= 0.0))
        throw std::invalid_argument("dedup tolerance must be finite and nonnegative");
    if (rec.is_exact()) {
        if (dedup_tol != 0.0)
            throw std::invalid_argument("exact sequences group by equality; tolerance must be 0");
        return profile_exact(std::span(rec.exact_points()).first(n));
    }
    return profile_f64(std::span(rec.approx_points()).first(n), dedup_tol);
}

std::vector<GapSeriesRow> gap_series(const SequenceRecord& rec,
                                     std::span<const std::uint64_t> checkpoints,
                                     double dedup_tol) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] == 0 || checkpoints[i] > rec.size())
            throw std::out_of_range("checkpoint out of range");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");
    }
    std::vector<GapSeriesRow> rows;
    rows.reserve(checkpoints.size());
    for (u64 n : checkpoints) {
        GapProfile p = gap_profile(rec, n, dedup_tol);
        rows.push_back(GapSeriesRow{n, p.g(), p.max_multiplicity(), p.max_ratio()});
    }
    return rows;
}

namespace {

nlohmann::ordered_json profile_to_json(const GapProfile& p) {
    nlohmann::ordered_json j;
    j["N"] = p.n();
    j["g"] = p.g();
    auto lengths = nlohmann::ordered_json::array();
    if (p.is_exact()) {
        for (const auto& gp : p.exact_lengths())
            lengths.push_back(std::to_string(gp.num) + "/2^" + std::to_string(gp.exp));
    } else {
        for (double v : p.approx_lengths()) lengths.push_back(v);
    }
    j["lengths"] = std::move(lengths);
    j["multiplicities"] = p.multiplicities();
    j["max_ratio"] = p.max_ratio();
    return j;
}

}  // namespace

std::string gap_profile_json(const GapProfile& profile) { return profile_to_json(profile).dump(); }

std::string gap_profiles_json(std::span<const GapProfile> profiles) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : profiles) arr.push_back(profile_to_json(p));
    return arr.dump();
}

}  // namespace ppclab
