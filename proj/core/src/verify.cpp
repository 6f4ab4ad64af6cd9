#include "ppclab/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ppclab/construction.hpp"
#include "ppclab/gap_stats.hpp"
#include "ppclab/generators.hpp"
#include "ppclab/oracles.hpp"
#include "ppclab/pair_correlation.hpp"
#include "ppclab/rng.hpp"

namespace ppclab {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(8) << v;
    return os.str();
}

bool bits_equal(double a, double b) {
    return std::bit_cast<u64>(a) == std::bit_cast<u64>(b);
}

// The statistical checks all run on this schedule: grids refine fast enough
// that desk-scale N already sits close to the asymptotic regime.
ConstructionConfig half_schedule(u32 m_max) {
    std::vector<u32> a, b;
    for (u32 m = 1; m <= m_max; ++m) {
        a.push_back((m + 1) / 2);
        b.push_back(m - m / 2);
    }
    return ConstructionConfig::from_tables(std::move(a), std::move(b));
}

ExactRational exact_total_length(const GapProfile& p) {
    ExactRational total = 0;
    const auto& ls = p.exact_lengths();
    const auto& mult = p.multiplicities();
    for (std::size_t i = 0; i < ls.size(); ++i)
        total += ExactRational(BigInt(ls[i].num) * mult[i], BigInt(1) << ls[i].exp);
    return total;
}

CheckResult check_counting(u64 seed) {
    SplitMix64 rng(seed);
    int mismatches = 0;
    std::string first;
    for (int inst = 0; inst < 200; ++inst) {
        u64 n = 1 + rng.next() % 512;
        bool exact = (inst & 1) == 0;
        Predicate pred = (inst & 2) ? Predicate::Strict : Predicate::NonStrict;
        SequenceRecord rec = [&] {
            if (exact) {
                std::vector<DyadicPoint> pts;
                pts.reserve(n);
                u32 emax = (inst % 7 == 3) ? 40 : 16;
                for (u64 i = 0; i < n; ++i) {
                    u32 e = static_cast<u32>(rng.next() % (emax + 1));
                    u64 num = e == 0 ? 0 : rng.next() & ((u64{1} << e) - 1);
                    pts.push_back(DyadicPoint::make(num, e));
                }
                return SequenceRecord::exact(std::move(pts), SequenceMeta{"scratch", {}, {}});
            }
            std::vector<double> pts;
            pts.reserve(n);
            for (u64 i = 0; i < n; ++i) pts.push_back(rng.next_unit());
            return SequenceRecord::approx(std::move(pts), SequenceMeta{"scratch", {}, {}});
        }();
        Radius r{0.25, 1.0};
        switch (inst % 5) {
            case 0: r = {0.0, 1.0}; break;
            case 1: r = {0.5, 1.0}; break;
            case 2: r = {rng.next_unit() * 0.5, 1.0}; break;
            case 3: r = {rng.next_unit(), 1.0 + rng.next_unit()}; break;
            case 4:
                if (n >= 2) {
                    // radius equal to a realized distance, to land on ties
                    u64 i = rng.next() % n, j = rng.next() % n;
                    if (i == j) j = (j + 1) % n;
                    double d = rec.is_exact() ? torus_distance(rec.exact_points()[i],
                                                               rec.exact_points()[j])
                                                    .value()
                                              : torus_distance_f64(rec.approx_points()[i],
                                                                   rec.approx_points()[j]);
                    r = {d, 1.0};
                }
                break;
        }
        u64 slow = pair_count_brute(rec, n, r, pred);
        u64 fast = pair_count_fast(rec, n, r, pred);
        if (slow != fast) {
            ++mismatches;
            if (first.empty()) {
                std::ostringstream os;
                os << "instance " << inst << " (n=" << n << (exact ? ", exact" : ", binary64")
                   << (pred == Predicate::Strict ? ", strict" : ", nonstrict") << "): brute "
                   << slow << " vs fast " << fast;
                first = os.str();
            }
        }
    }
    if (mismatches > 0)
        return {"fast and brute pair counts agree", false,
                std::to_string(mismatches) + " of 200 instances mismatch; first: " + first};
    return {"fast and brute pair counts agree", true, "200 random instances, exact match"};
}

CheckResult check_gap_identities(u64 seed) {
    std::vector<SequenceRecord> recs;
    recs.push_back(kronecker(golden_alpha(), u64{1} << 14));
    recs.push_back(iid_uniform(u64{1} << 14, seed));
    recs.push_back(equispaced(u64{1} << 14));
    auto target = GapCountTarget::builtin_logn(u64{1} << 14);
    auto cfg = ConstructionConfig::derive(target, 13);
    recs.push_back(construct_sequence(u64{1} << 14, cfg, seed));
    const std::vector<u64> checkpoints{1, 2, 3, 5, 16, 100, 777, 4096, 16384};
    u64 profiles = 0;
    for (const auto& rec : recs) {
        for (u64 n : checkpoints) {
            GapProfile p = gap_profile(rec, n, 0.0);
            ++profiles;
            u64 count = 0;
            for (u64 m : p.multiplicities()) count += m;
            bool ok = count == n && p.g() * p.max_multiplicity() >= n;
            if (p.is_exact())
                ok = ok && exact_total_length(p) == 1;
            else {
                double total = 0.0;
                for (std::size_t i = 0; i < p.g(); ++i)
                    total += p.approx_lengths()[i] * static_cast<double>(p.multiplicities()[i]);
                ok = ok && std::fabs(total - 1.0) <= 1e-9;
            }
            if (!ok) {
                std::ostringstream os;
                os << "violated for kind=" << rec.meta().kind << " at n=" << n;
                return {"gap profiles satisfy the counting identities", false, os.str()};
            }
        }
    }
    return {"gap profiles satisfy the counting identities", true,
            std::to_string(profiles) + " profiles: multiplicities sum to n, lengths sum to 1, "
                                       "count times max multiplicity covers n"};
}

CheckResult check_three_gap() {
    SequenceRecord rec = kronecker(golden_alpha(), 4096);
    for (u64 n = 2; n <= 4096; ++n) {
        GapProfile p = gap_profile(rec, n, 1e-12);
        if (p.g() > 3 || 3 * p.max_multiplicity() < n) {
            std::ostringstream os;
            os << "n=" << n << ": " << p.g() << " distinct lengths, max multiplicity "
               << p.max_multiplicity();
            return {"golden rotation keeps at most three gaps", false, os.str()};
        }
    }
    return {"golden rotation keeps at most three gaps", true,
            "all n in 2..4096: g <= 3 and max multiplicity >= n/3"};
}

std::pair<GapCountTarget, ConstructionConfig> ceiling_setup() {
    auto target = GapCountTarget::builtin_logn(u64{1} << 15);
    auto cfg = ConstructionConfig::derive(target, 14);
    return {std::move(target), std::move(cfg)};
}

CheckResult check_gap_ceiling(u64 seed_base) {
    auto [target, cfg] = ceiling_setup();
    u64 checked = 0;
    for (u64 s = 0; s < 20; ++s) {
        SequenceRecord rec = construct_sequence(u64{1} << 15, cfg, seed_base + s);
        for (u32 k = 4; k <= 15; ++k) {
            u64 n = u64{1} << k;
            GapProfile p = gap_profile(rec, n, 0.0);
            u32 m = slot_of(n, cfg).m;
            u32 bprev = m >= 2 ? cfg.b(m - 1) : 0;
            u64 bound = u64{1} << (m + cfg.a(m) - bprev);
            ++checked;
            if (p.g() > bound || p.g() > target.q(n)) {
                std::ostringstream os;
                os << "seed " << seed_base + s << ", n=" << n << ": g=" << p.g()
                   << " exceeds ceiling min(" << bound << ", " << target.q(n) << ")";
                return {"constructed sequences respect the gap-count ceiling", false, os.str()};
            }
        }
    }
    return {"constructed sequences respect the gap-count ceiling", true,
            std::to_string(checked) + " checkpoint profiles within both ceilings, zero tolerance"};
}

CheckResult check_grid_sandwich(u64 seed_base) {
    auto [target, cfg] = ceiling_setup();
    (void)target;
    u64 checked = 0;
    for (u64 s = 0; s < 20; ++s) {
        SequenceRecord rec = construct_sequence(u64{1} << 15, cfg, seed_base + s);
        for (u32 k = 4; k <= 15; ++k) {
            u64 n = u64{1} << k;
            u32 m = slot_of(n, cfg).m;
            u32 fine = m + cfg.a(m);
            auto pts = std::span(rec.exact_points()).first(n);
            std::vector<u64> pos;
            pos.reserve(n);
            bool inside = true;
            for (const auto& p : pts) {
                if (p.exp() > fine) {
                    inside = false;
                    break;
                }
                pos.push_back(p.num() << (fine - p.exp()));
            }
            if (inside) {
                std::sort(pos.begin(), pos.end());
                u32 coarse = cfg.b(m - 1);  // checkpoints land in blocks m >= 3
                for (u64 j = 0; j < (u64{1} << coarse) && inside; ++j)
                    inside = std::binary_search(pos.begin(), pos.end(), j << (fine - coarse));
            }
            ++checked;
            if (!inside) {
                std::ostringstream os;
                os << "seed " << seed_base + s << ", n=" << n
                   << ": prefix not sandwiched between its coarse and fine grids";
                return {"prefixes sit between coarse and fine grids", false, os.str()};
            }
        }
    }
    return {"prefixes sit between coarse and fine grids", true,
            std::to_string(checked) + " checkpoints: coarse grid included, fine grid contains"};
}

CheckResult check_expectation_trend() {
    ConstructionConfig cfg = half_schedule(16);
    std::ostringstream os;
    for (double s : {0.5, 1.0, 2.0}) {
        ExactRational twos = ExactRational(s) * 2;
        auto rel = [&](u64 n) {
            ExactRational e = pc_expectation(n, s, static_cast<double>(n), cfg);
            return boost::multiprecision::abs(e / twos - 1);
        };
        ExactRational r16 = rel(u64{1} << 16);
        ExactRational r8 = rel(u64{1} << 8);
        if (!(r16 <= ExactRational(1, 20) && r16 < r8)) {
            std::ostringstream bad;
            bad << "s=" << fmt(s) << ": relative error " << fmt(r16.convert_to<double>())
                << " at n=2^16 (n=2^8: " << fmt(r8.convert_to<double>()) << ")";
            return {"expectation oracle tracks 2s", false, bad.str()};
        }
        if (os.tellp() > 0) os << ", ";
        os << "s=" << fmt(s) << ": " << fmt(r16.convert_to<double>());
    }
    return {"expectation oracle tracks 2s", true,
            "relative error at n=2^16 within 5% and below n=2^8 (" + os.str() + ")"};
}

CheckResult check_variance_scaling() {
    ConstructionConfig cfg = half_schedule(16);
    ExactRational base = ExactRational(256) * pc_variance(256, 1.0, 256.0, cfg);
    std::ostringstream os;
    for (u32 k : {8u, 10u, 12u, 14u}) {
        u64 n = u64{1} << k;
        ExactRational scaled = ExactRational(n) * pc_variance(n, 1.0, static_cast<double>(n), cfg);
        if (!(scaled <= 4 * base)) {
            std::ostringstream bad;
            bad << "n=2^" << k << ": n*Var = " << fmt(scaled.convert_to<double>())
                << " exceeds 4x the n=2^8 value " << fmt(base.convert_to<double>());
            return {"scaled variance stays bounded", false, bad.str()};
        }
        if (os.tellp() > 0) os << ", ";
        os << "2^" << k << ": " << fmt(scaled.convert_to<double>());
    }
    return {"scaled variance stays bounded", true, "n*Var(n, 1) <= 4x the n=2^8 value (" + os.str() + ")"};
}

CheckResult check_mc_agreement(u64 seed) {
    ConstructionConfig cfg = half_schedule(16);
    const u64 n = u64{1} << 10;
    double expectation = pc_expectation(n, 1.0, static_cast<double>(n), cfg).convert_to<double>();
    double variance = pc_variance(n, 1.0, static_cast<double>(n), cfg).convert_to<double>();
    MomentReport rep = mc_moments(n, 1.0, cfg, Scaling::identity(), 500, seed);
    bool mean_ok = std::fabs(rep.mean - expectation) <= 3 * rep.std_error;
    bool var_ok = std::fabs(rep.variance - variance) <= 0.5 * variance;
    std::ostringstream os;
    os << "mean " << fmt(rep.mean) << " vs " << fmt(expectation) << " (3se = "
       << fmt(3 * rep.std_error) << "), variance " << fmt(rep.variance) << " vs "
       << fmt(variance);
    return {"monte carlo moments match the oracles", mean_ok && var_ok, os.str()};
}

CheckResult check_construction_ppc(u64 seed) {
    ConstructionConfig cfg = half_schedule(16);
    SequenceRecord rec = construct_sequence(u64{1} << 16, cfg, seed);
    std::ostringstream os;
    for (double s : {0.5, 1.0, 2.0}) {
        double f = pc_statistic(rec, PcQuery{u64{1} << 16, s, Scaling::identity(),
                                             Predicate::Strict});
        double tol = 0.1 * std::max(1.0, 2 * s);
        if (!(std::fabs(f - 2 * s) <= tol)) {
            std::ostringstream bad;
            bad << "s=" << fmt(s) << ": F = " << fmt(f) << ", off 2s by more than " << fmt(tol);
            return {"one construction realization shows Poissonian counts", false, bad.str()};
        }
        if (os.tellp() > 0) os << ", ";
        os << "F(" << fmt(s) << ")=" << fmt(f);
    }
    GapProfile wide = gap_profile(rec, u64{1} << 16, 0.0);
    GapProfile narrow = gap_profile(rec, u64{1} << 8, 0.0);
    if (!(wide.max_ratio() < narrow.max_ratio())) {
        std::ostringstream bad;
        bad << "max multiplicity ratio " << fmt(wide.max_ratio()) << " at n=2^16 not below "
            << fmt(narrow.max_ratio()) << " at n=2^8";
        return {"one construction realization shows Poissonian counts", false, bad.str()};
    }
    os << "; max ratio " << fmt(narrow.max_ratio()) << " -> " << fmt(wide.max_ratio());
    return {"one construction realization shows Poissonian counts", true, os.str()};
}

CheckResult check_determinism(const AcceptanceManifest& mf) {
    auto target = GapCountTarget::builtin_logn(u64{1} << 12);
    auto cfg = ConstructionConfig::derive(target, 11);
    ConstructionConfig half = half_schedule(16);
    bool ok = true;
    std::string why;
    auto expect = [&](bool cond, const char* what) {
        if (!cond && why.empty()) why = what;
        ok = ok && cond;
    };
    expect(identical(construct_sequence(u64{1} << 12, cfg, mf.gap_seed_base),
                     construct_sequence(u64{1} << 12, cfg, mf.gap_seed_base)),
           "construction rerun differs");
    expect(identical(sample_random_model(2048, cfg, mf.mc_seed),
                     sample_random_model(2048, cfg, mf.mc_seed)),
           "reference model rerun differs");
    MomentReport r1 = mc_moments(256, 1.0, half, Scaling::identity(), 50, mf.mc_seed);
    MomentReport r2 = mc_moments(256, 1.0, half, Scaling::identity(), 50, mf.mc_seed);
    expect(bits_equal(r1.mean, r2.mean) && bits_equal(r1.variance, r2.variance) &&
               bits_equal(r1.std_error, r2.std_error),
           "monte carlo rerun differs");
    SequenceRecord s1 = iid_uniform(4096, mf.identity_seed);
    SequenceRecord s2 = iid_uniform(4096, mf.identity_seed);
    expect(identical(s1, s2), "iid generator rerun differs");
    double f1 = pc_statistic(s1, PcQuery{4096, 1.0});
    double f2 = pc_statistic(s2, PcQuery{4096, 1.0});
    expect(bits_equal(f1, f2), "statistic rerun differs");
    expect(identical(kronecker(golden_alpha(), 4096), kronecker(golden_alpha(), 4096)),
           "rotation generator rerun differs");
    return {"seeded reruns are bit-identical", ok,
            ok ? "construction, reference model, monte carlo, generators and statistics" : why};
}

}  // namespace

std::vector<CheckResult> run_acceptance_suite(const AcceptanceManifest& manifest) {
    std::vector<CheckResult> results;
    results.push_back(check_counting(manifest.counting_seed));
    results.push_back(check_gap_identities(manifest.identity_seed));
    results.push_back(check_three_gap());
    results.push_back(check_gap_ceiling(manifest.gap_seed_base));
    results.push_back(check_grid_sandwich(manifest.gap_seed_base));
    results.push_back(check_expectation_trend());
    results.push_back(check_variance_scaling());
    results.push_back(check_mc_agreement(manifest.mc_seed));
    results.push_back(check_construction_ppc(manifest.construction_seed));
    results.push_back(check_determinism(manifest));
    return results;
}

bool print_acceptance_report(std::ostream& out, const AcceptanceManifest& manifest) {
    auto results = run_acceptance_suite(manifest);
    bool all = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        all = all && r.pass;
        out << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << r.name
            << ": " << r.detail << '\n';
    }
    out << (all ? "acceptance suite: all checks passed"
                : "acceptance suite: FAILURES above")
        << '\n';
    return all;
}

}  // namespace ppclab
