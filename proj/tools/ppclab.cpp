// ppclab command line front end.
//
//   generate   write a sequence file (equispaced | kronecker | iid | construction)
//   ppc        pair correlation curve over an s-grid
//   gaps       gap profiles at prefix checkpoints
//   oracle     exact moments of the statistic under the random reference model
//   mc         Monte Carlo moments under the same model
//   verify     run the acceptance suite
//
// Exit codes: 0 success, 1 validation error (bad data), 2 usage error.
// Every run prints a single effective-config line to stderr; together with
// the input files it reproduces the run exactly. There is no ambient
// entropy: every randomized command takes an explicit seed.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ppclab/construction.hpp"
#include "ppclab/errors.hpp"
#include "ppclab/gap_stats.hpp"
#include "ppclab/generators.hpp"
#include "ppclab/oracles.hpp"
#include "ppclab/pair_correlation.hpp"
#include "ppclab/sequence.hpp"
#include "ppclab/verify.hpp"

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Effective-config line: all resolved parameters plus a fingerprint, one
// line on stderr, machine-parseable after the fixed prefix.
void print_effective_config(ordered_json params) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a(params.dump()));
    params["digest"] = buf;
    std::cerr << "effective-config: " << params.dump() << "\n";
}

ordered_json seed_json(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    return "none";
}

double parse_double_strict(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size() || !std::isfinite(v)) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
    }
}

std::uint64_t parse_u64_strict(const std::string& text, const char* what) {
    try {
        if (text.empty() || text[0] == '-' || text[0] == '+') throw std::invalid_argument("");
        std::size_t pos = 0;
        unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
    }
}

// "start:stop:step" -> start, start+step, ... strictly below stop, plus stop
// itself when it sits on the step lattice. A single number is the
// one-point grid.
std::vector<double> parse_s_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::string piece;
    std::istringstream ss(spec);
    while (std::getline(ss, piece, ':')) parts.push_back(piece);
    if (parts.size() == 1) return {parse_double_strict(parts[0], "--s-grid")};
    if (parts.size() != 3) throw std::invalid_argument("--s-grid: expected s or start:stop:step");

    double start = parse_double_strict(parts[0], "--s-grid start");
    double stop = parse_double_strict(parts[1], "--s-grid stop");
    double step = parse_double_strict(parts[2], "--s-grid step");
    if (step <= 0) throw std::invalid_argument("--s-grid: step must be positive");
    if (stop < start) throw std::invalid_argument("--s-grid: stop below start");

    std::vector<double> grid;
    double lattice_eps = step * 1e-9;
    for (std::uint64_t i = 0;; ++i) {
        double v = start + static_cast<double>(i) * step;
        if (v >= stop - lattice_eps) break;
        grid.push_back(v);
        if (grid.size() > 1000000) throw std::invalid_argument("--s-grid: more than 10^6 points");
    }
    double hops = std::round((stop - start) / step);
    if (std::abs(start + hops * step - stop) <= lattice_eps) grid.push_back(stop);
    if (grid.empty()) throw std::invalid_argument("--s-grid: grid is empty");
    return grid;
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& spec) {
    std::vector<std::uint64_t> out;
    std::string piece;
    std::istringstream ss(spec);
    while (std::getline(ss, piece, ',')) out.push_back(parse_u64_strict(piece, "--checkpoints"));
    if (out.empty()) throw std::invalid_argument("--checkpoints: list is empty");
    return out;
}

ppclab::Scaling parse_scaling(const std::string& name) {
    if (name == "identity") return ppclab::Scaling::identity();
    if (name == "plus-sqrt") return ppclab::Scaling::plus_sqrt();
    if (name == "minus-sqrt") return ppclab::Scaling::minus_sqrt();
    throw std::invalid_argument("--scaling: expected identity, plus-sqrt or minus-sqrt");
}

ppclab::Predicate parse_predicate(const std::string& name) {
    if (name == "strict") return ppclab::Predicate::Strict;
    if (name == "nonstrict") return ppclab::Predicate::NonStrict;
    throw std::invalid_argument("--predicate: expected strict or nonstrict");
}

double parse_alpha(const std::string& text) {
    if (text == "golden") return ppclab::golden_alpha();
    return parse_double_strict(text, "--alpha");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ppclab::ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ppclab::ValidationError("cannot open " + out_path + " for writing");
    out << text;
    if (!out) throw ppclab::ValidationError("write to " + out_path + " failed");
}

std::vector<std::uint32_t> parse_u32_array_file(const std::string& path, const char* what) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(slurp(path));
    } catch (const ordered_json::exception& e) {
        throw ppclab::ValidationError(std::string(what) + " " + path + ": " + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw ppclab::ValidationError(std::string(what) + " " + path +
                                      ": expected a nonempty JSON array of integers");
    std::vector<std::uint32_t> out;
    for (const auto& v : doc) {
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xffffffffull)
            throw ppclab::ValidationError(std::string(what) + " " + path +
                                          ": entries must be small nonnegative integers");
        out.push_back(v.get<std::uint32_t>());
    }
    return out;
}

struct ScheduleResult {
    ppclab::ConstructionConfig cfg;
    std::optional<std::uint64_t> file_seed;
    std::string spec;  // for the effective-config line
};

// Derive a schedule from a builtin target, sized just large enough for n.
// random_model asks for the all-random reference model (needs 2^m_max >= n)
// rather than the full construction (needs max_len() >= n).
ppclab::ConstructionConfig derive_builtin(bool logn, std::uint64_t n, bool random_model) {
    for (std::uint32_t m_max = 1; m_max <= 59; ++m_max) {
        auto target = logn ? ppclab::GapCountTarget::builtin_logn(m_max + 1)
                           : ppclab::GapCountTarget::builtin_linear(m_max + 1);
        auto cfg = ppclab::ConstructionConfig::derive(target, m_max);
        std::uint64_t have = random_model ? cfg.max_random_len() : cfg.max_len();
        if (have >= n) return cfg;
    }
    throw ppclab::ValidationError("--n too large for a builtin schedule");
}

ScheduleResult resolve_schedule(const std::string& q_spec, const std::string& a_file,
                                const std::string& b_file, std::uint64_t n, bool random_model) {
    bool have_q = !q_spec.empty();
    bool have_ab = !a_file.empty() || !b_file.empty();
    if (have_q && have_ab)
        throw std::invalid_argument("--q-spec and --a/--b are mutually exclusive");
    if (have_ab && (a_file.empty() || b_file.empty()))
        throw std::invalid_argument("--a and --b must be given together");
    if (!have_q && !have_ab)
        throw std::invalid_argument("a schedule is required: --q-spec or --a/--b");

    if (have_ab) {
        auto a = parse_u32_array_file(a_file, "--a");
        auto b = parse_u32_array_file(b_file, "--b");
        return {ppclab::ConstructionConfig::from_tables(std::move(a), std::move(b)), std::nullopt,
                "a=" + a_file + ",b=" + b_file};
    }
    if (q_spec == "builtin:logn" || q_spec == "builtin:linear")
        return {derive_builtin(q_spec == "builtin:logn", n, random_model), std::nullopt, q_spec};

    // A file: either a JSON array (the q table) or a full config object.
    ordered_json doc;
    std::string text = slurp(q_spec);
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw ppclab::ValidationError("--q-spec " + q_spec + ": " + e.what());
    }
    if (doc.is_array()) {
        std::vector<std::uint64_t> q;
        for (const auto& v : doc) {
            if (!v.is_number_unsigned())
                throw ppclab::ValidationError("--q-spec " + q_spec +
                                              ": q entries must be nonnegative integers");
            q.push_back(v.get<std::uint64_t>());
        }
        if (q.size() < 2)
            throw ppclab::ValidationError("--q-spec " + q_spec + ": need at least 2 entries");
        auto target = ppclab::GapCountTarget::from_table(std::move(q));
        auto m_max = static_cast<std::uint32_t>(target.size() - 1);
        return {ppclab::ConstructionConfig::derive(target, m_max), std::nullopt, q_spec};
    }
    auto loaded = ppclab::read_config_json(text);
    return {std::move(loaded.config), loaded.seed, q_spec};
}

void report_warnings(const ppclab::ConstructionConfig& cfg) {
    for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << "\n";
}

std::string scaling_name(const ppclab::Scaling& sc) {
    switch (sc.kind()) {
        case ppclab::Scaling::Kind::Identity: return "identity";
        case ppclab::Scaling::Kind::PlusSqrt: return "plus-sqrt";
        case ppclab::Scaling::Kind::MinusSqrt: return "minus-sqrt";
        case ppclab::Scaling::Kind::Custom: break;
    }
    return "custom";
}

std::string rational_str(const ppclab::ExactRational& v) {
    return v.str();
}

// ---- subcommand bodies ----------------------------------------------------

struct GenerateArgs {
    std::string kind, alpha, out, q_spec, a_file, b_file;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> seed;
};

int cmd_generate(const GenerateArgs& args) {
    if (args.n == 0) throw std::invalid_argument("--n must be at least 1");

    ordered_json line{{"command", "generate"}, {"kind", args.kind}, {"n", args.n}};
    ppclab::SequenceRecord rec = [&] {
        if (args.kind == "equispaced") {
            if (args.seed) std::cerr << "note: --seed ignored for equispaced\n";
            line["seed"] = "none";
            return ppclab::equispaced(args.n);
        }
        if (args.kind == "kronecker") {
            if (args.alpha.empty())
                throw std::invalid_argument("--alpha is required for kind=kronecker");
            if (args.seed) std::cerr << "note: --seed ignored for kronecker\n";
            double alpha = parse_alpha(args.alpha);
            line["alpha"] = ppclab::format_f64(alpha);
            line["seed"] = "none";
            return ppclab::kronecker(alpha, args.n);
        }
        if (args.kind == "iid") {
            if (!args.seed) throw std::invalid_argument("--seed is required for kind=iid");
            line["seed"] = *args.seed;
            return ppclab::iid_uniform(args.n, *args.seed);
        }
        if (args.kind == "construction") {
            auto sched = resolve_schedule(args.q_spec, args.a_file, args.b_file, args.n, false);
            report_warnings(sched.cfg);
            std::optional<std::uint64_t> seed = args.seed ? args.seed : sched.file_seed;
            if (!seed)
                throw std::invalid_argument("--seed is required for kind=construction");
            line["schedule"] = sched.spec;
            line["schedule_digest"] = sched.cfg.digest();
            line["seed"] = *seed;
            return ppclab::construct_sequence(args.n, sched.cfg, *seed);
        }
        throw std::invalid_argument("--kind: expected equispaced, kronecker, iid or construction");
    }();

    line["out"] = args.out.empty() ? "-" : args.out;
    print_effective_config(std::move(line));

    std::ostringstream body;
    ppclab::write_sequence(rec, body);
    write_text(args.out, body.str());
    return 0;
}

struct PpcArgs {
    std::string in, s_grid, scaling = "identity", predicate, out, format = "csv";
    std::optional<std::uint64_t> n;
};

int cmd_ppc(const PpcArgs& args) {
    auto rec = ppclab::read_sequence_file(args.in);
    std::uint64_t n = args.n.value_or(rec.size());
    if (n < 1 || n > rec.size())
        throw ppclab::ValidationError("--n out of range: file has " + std::to_string(rec.size()) +
                                      " points");
    auto grid = parse_s_grid(args.s_grid);
    auto scaling = parse_scaling(args.scaling);
    // F uses the strict count with identity scaling; the rescaled variant
    // uses the nonstrict count. An explicit --predicate overrides both.
    ppclab::Predicate pred = args.predicate.empty()
        ? (scaling.kind() == ppclab::Scaling::Kind::Identity ? ppclab::Predicate::Strict
                                                             : ppclab::Predicate::NonStrict)
        : parse_predicate(args.predicate);

    print_effective_config(ordered_json{{"command", "ppc"},
                                        {"in", args.in},
                                        {"n", n},
                                        {"s_grid", args.s_grid},
                                        {"scaling", args.scaling},
                                        {"predicate",
                                         pred == ppclab::Predicate::Strict ? "strict" : "nonstrict"},
                                        {"seed", seed_json(rec.meta().seed)},
                                        {"format", args.format}});

    auto rows = ppclab::pc_curve(rec, n, grid, scaling, pred);
    if (args.format == "csv") {
        std::ostringstream body;
        ppclab::write_pc_curve_csv(rows, body);
        write_text(args.out, body.str());
    } else if (args.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& [s, f] : rows) arr.push_back(ordered_json{{"s", s}, {"F", f}});
        write_text(args.out, arr.dump(2) + "\n");
    } else {
        throw std::invalid_argument("--format: expected csv or json");
    }
    return 0;
}

struct GapsArgs {
    std::string in, checkpoints, out, format = "json";
    std::optional<double> tol;
};

int cmd_gaps(const GapsArgs& args) {
    auto rec = ppclab::read_sequence_file(args.in);
    std::vector<std::uint64_t> cps = args.checkpoints.empty()
        ? std::vector<std::uint64_t>{rec.size()}
        : parse_checkpoints(args.checkpoints);
    double tol = args.tol ? *args.tol : (rec.is_exact() ? 0.0 : 1e-12);

    print_effective_config(ordered_json{{"command", "gaps"},
                                        {"in", args.in},
                                        {"checkpoints", cps},
                                        {"tol", tol},
                                        {"seed", seed_json(rec.meta().seed)},
                                        {"format", args.format}});

    auto series = ppclab::gap_series(rec, cps, tol);  // validates checkpoints
    if (args.format == "json") {
        std::vector<ppclab::GapProfile> profiles;
        profiles.reserve(cps.size());
        for (auto cp : cps) profiles.push_back(ppclab::gap_profile(rec, cp, tol));
        write_text(args.out, ppclab::gap_profiles_json(profiles) + "\n");
    } else if (args.format == "csv") {
        std::ostringstream body;
        body << "N,g,max_multiplicity,max_ratio\n";
        for (const auto& row : series)
            body << row.n << ',' << row.g << ',' << row.max_multiplicity << ','
                 << ppclab::format_f64(row.max_ratio) << '\n';
        write_text(args.out, body.str());
    } else {
        throw std::invalid_argument("--format: expected csv or json");
    }
    return 0;
}

struct OracleArgs {
    std::string s_grid, scaling = "identity", out, format = "json", q_spec, a_file, b_file;
    std::uint64_t n = 0;
};

int cmd_oracle(const OracleArgs& args) {
    if (args.n == 0) throw std::invalid_argument("--n must be at least 1");
    auto sched = resolve_schedule(args.q_spec, args.a_file, args.b_file, args.n, true);
    report_warnings(sched.cfg);
    if (sched.cfg.max_random_len() < args.n)
        throw ppclab::ValidationError("schedule covers the random model only up to n=" +
                                      std::to_string(sched.cfg.max_random_len()));
    auto grid = parse_s_grid(args.s_grid);
    auto scaling = parse_scaling(args.scaling);
    double y = scaling.y(args.n);

    print_effective_config(ordered_json{{"command", "oracle"},
                                        {"n", args.n},
                                        {"s_grid", args.s_grid},
                                        {"scaling", args.scaling},
                                        {"schedule", sched.spec},
                                        {"schedule_digest", sched.cfg.digest()},
                                        {"seed", "none"},
                                        {"format", args.format}});

    ordered_json rows = ordered_json::array();
    for (double s : grid) {
        auto e = ppclab::pc_expectation(args.n, s, y, sched.cfg);
        auto v = ppclab::pc_variance(args.n, s, y, sched.cfg);
        rows.push_back(ordered_json{
            {"s", s},
            {"expectation",
             ordered_json{{"exact", rational_str(e)}, {"binary64", e.convert_to<double>()}}},
            {"variance",
             ordered_json{{"exact", rational_str(v)}, {"binary64", v.convert_to<double>()}}}});
    }

    if (args.format == "json") {
        ordered_json doc{{"command", "oracle"},
                         {"n", args.n},
                         {"scaling", args.scaling},
                         {"y", y},
                         {"schedule_digest", sched.cfg.digest()},
                         {"rows", rows}};
        write_text(args.out, doc.dump(2) + "\n");
    } else if (args.format == "csv") {
        std::ostringstream body;
        body << "s,expectation,variance\n";
        for (const auto& row : rows)
            body << ppclab::format_f64(row["s"].get<double>()) << ','
                 << ppclab::format_f64(row["expectation"]["binary64"].get<double>()) << ','
                 << ppclab::format_f64(row["variance"]["binary64"].get<double>()) << '\n';
        write_text(args.out, body.str());
    } else {
        throw std::invalid_argument("--format: expected csv or json");
    }
    return 0;
}

struct McArgs {
    std::string s_grid, scaling = "identity", out, format = "json", q_spec, a_file, b_file;
    std::uint64_t n = 0, samples = 0;
    std::optional<std::uint64_t> seed;
};

int cmd_mc(const McArgs& args) {
    if (args.n == 0) throw std::invalid_argument("--n must be at least 1");
    if (args.samples < 2) throw std::invalid_argument("--samples must be at least 2");
    auto sched = resolve_schedule(args.q_spec, args.a_file, args.b_file, args.n, true);
    report_warnings(sched.cfg);
    std::optional<std::uint64_t> seed = args.seed ? args.seed : sched.file_seed;
    if (!seed) throw std::invalid_argument("--seed is required for mc");
    if (sched.cfg.max_random_len() < args.n)
        throw ppclab::ValidationError("schedule covers the random model only up to n=" +
                                      std::to_string(sched.cfg.max_random_len()));
    auto grid = parse_s_grid(args.s_grid);
    auto scaling = parse_scaling(args.scaling);

    print_effective_config(ordered_json{{"command", "mc"},
                                        {"n", args.n},
                                        {"samples", args.samples},
                                        {"s_grid", args.s_grid},
                                        {"scaling", args.scaling},
                                        {"schedule", sched.spec},
                                        {"schedule_digest", sched.cfg.digest()},
                                        {"seed", *seed},
                                        {"format", args.format}});

    ordered_json rows = ordered_json::array();
    for (double s : grid) {
        auto rep = ppclab::mc_moments(args.n, s, sched.cfg, scaling, args.samples, *seed);
        rows.push_back(ordered_json{{"s", s},
                                    {"mean", rep.mean},
                                    {"variance", rep.variance},
                                    {"std_error", rep.std_error}});
    }

    if (args.format == "json") {
        ordered_json doc{{"command", "mc"},      {"n", args.n},
                         {"seed", *seed},        {"samples", args.samples},
                         {"scaling", args.scaling}, {"schedule_digest", sched.cfg.digest()},
                         {"rows", rows}};
        write_text(args.out, doc.dump(2) + "\n");
    } else if (args.format == "csv") {
        std::ostringstream body;
        body << "s,mean,variance,std_error\n";
        for (const auto& row : rows)
            body << ppclab::format_f64(row["s"].get<double>()) << ','
                 << ppclab::format_f64(row["mean"].get<double>()) << ','
                 << ppclab::format_f64(row["variance"].get<double>()) << ','
                 << ppclab::format_f64(row["std_error"].get<double>()) << '\n';
        write_text(args.out, body.str());
    } else {
        throw std::invalid_argument("--format: expected csv or json");
    }
    return 0;
}

int cmd_verify() {
    print_effective_config(ordered_json{{"command", "verify"}, {"seed", "manifest"}});
    return ppclab::print_acceptance_report(std::cout) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ppclab: pair correlations and gap statistics on the torus"};
    app.require_subcommand(1);

    GenerateArgs gen;
    std::uint64_t gen_seed = 0;
    auto* sub_gen = app.add_subcommand("generate", "Write a sequence file");
    sub_gen->add_option("--kind", gen.kind, "equispaced|kronecker|iid|construction")->required();
    sub_gen->add_option("--n", gen.n, "sequence length")->required();
    sub_gen->add_option("--alpha", gen.alpha, "kronecker rotation: 'golden' or a decimal");
    auto* gen_seed_opt = sub_gen->add_option("--seed", gen_seed, "RNG seed (randomized kinds)");
    sub_gen->add_option("--out", gen.out, "output file, '-' for stdout (default)");
    sub_gen->add_option("--q-spec", gen.q_spec,
                        "schedule: builtin:logn, builtin:linear, or a JSON file "
                        "(q table array or config object)");
    sub_gen->add_option("--a", gen.a_file, "explicit schedule: JSON array file for a(m)");
    sub_gen->add_option("--b", gen.b_file, "explicit schedule: JSON array file for b(m)");

    PpcArgs ppc;
    std::uint64_t ppc_n = 0;
    auto* sub_ppc = app.add_subcommand("ppc", "Pair correlation curve over an s-grid");
    sub_ppc->add_option("--in", ppc.in, "sequence file")->required();
    auto* ppc_n_opt = sub_ppc->add_option("--n", ppc_n, "prefix length (default: whole file)");
    sub_ppc->add_option("--s-grid", ppc.s_grid, "s or start:stop:step")->required();
    sub_ppc->add_option("--scaling", ppc.scaling, "identity|plus-sqrt|minus-sqrt");
    sub_ppc->add_option("--predicate", ppc.predicate,
                        "strict|nonstrict (default: strict for identity, else nonstrict)");
    sub_ppc->add_option("--out", ppc.out, "output file, '-' for stdout (default)");
    sub_ppc->add_option("--format", ppc.format, "csv|json (default csv)");

    GapsArgs gaps;
    double gaps_tol = 0.0;
    auto* sub_gaps = app.add_subcommand("gaps", "Gap profiles at prefix checkpoints");
    sub_gaps->add_option("--in", gaps.in, "sequence file")->required();
    sub_gaps->add_option("--checkpoints", gaps.checkpoints,
                         "comma separated prefix lengths (default: whole file)");
    auto* gaps_tol_opt = sub_gaps->add_option(
        "--tol", gaps_tol, "binary64 dedup tolerance (default 1e-12; exact input requires 0)");
    sub_gaps->add_option("--out", gaps.out, "output file, '-' for stdout (default)");
    sub_gaps->add_option("--format", gaps.format, "json|csv (default json)");

    OracleArgs oracle;
    auto* sub_oracle = app.add_subcommand("oracle", "Exact moments under the random model");
    sub_oracle->add_option("--n", oracle.n, "prefix length")->required();
    sub_oracle->add_option("--s-grid", oracle.s_grid, "s or start:stop:step")->required();
    sub_oracle->add_option("--scaling", oracle.scaling, "identity|plus-sqrt|minus-sqrt");
    sub_oracle->add_option("--q-spec", oracle.q_spec,
                           "schedule: builtin:logn, builtin:linear, or a JSON file");
    sub_oracle->add_option("--a", oracle.a_file, "explicit schedule: JSON array file for a(m)");
    sub_oracle->add_option("--b", oracle.b_file, "explicit schedule: JSON array file for b(m)");
    sub_oracle->add_option("--out", oracle.out, "output file, '-' for stdout (default)");
    sub_oracle->add_option("--format", oracle.format, "json|csv (default json)");

    McArgs mc;
    std::uint64_t mc_seed = 0;
    auto* sub_mc = app.add_subcommand("mc", "Monte Carlo moments under the random model");
    sub_mc->add_option("--n", mc.n, "prefix length")->required();
    sub_mc->add_option("--s-grid", mc.s_grid, "s or start:stop:step")->required();
    sub_mc->add_option("--samples", mc.samples, "number of Monte Carlo samples")->required();
    auto* mc_seed_opt = sub_mc->add_option("--seed", mc_seed, "master RNG seed");
    sub_mc->add_option("--scaling", mc.scaling, "identity|plus-sqrt|minus-sqrt");
    sub_mc->add_option("--q-spec", mc.q_spec,
                       "schedule: builtin:logn, builtin:linear, or a JSON file");
    sub_mc->add_option("--a", mc.a_file, "explicit schedule: JSON array file for a(m)");
    sub_mc->add_option("--b", mc.b_file, "explicit schedule: JSON array file for b(m)");
    sub_mc->add_option("--out", mc.out, "output file, '-' for stdout (default)");
    sub_mc->add_option("--format", mc.format, "json|csv (default json)");

    auto* sub_verify = app.add_subcommand("verify", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sub_gen) {
            if (gen_seed_opt->count() > 0) gen.seed = gen_seed;
            return cmd_generate(gen);
        }
        if (*sub_ppc) {
            if (ppc_n_opt->count() > 0) ppc.n = ppc_n;
            return cmd_ppc(ppc);
        }
        if (*sub_gaps) {
            if (gaps_tol_opt->count() > 0) gaps.tol = gaps_tol;
            return cmd_gaps(gaps);
        }
        if (*sub_oracle) return cmd_oracle(oracle);
        if (*sub_mc) {
            if (mc_seed_opt->count() > 0) mc.seed = mc_seed;
            return cmd_mc(mc);
        }
        if (*sub_verify) return cmd_verify();
        return 2;
    } catch (const ppclab::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
