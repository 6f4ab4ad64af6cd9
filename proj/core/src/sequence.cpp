#include "ppclab/sequence.hpp"

#include <bit>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ppclab/errors.hpp"

namespace ppclab {

namespace {

bool is_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '=') return false;
    return true;
}

void check_meta(const SequenceMeta& meta) {
    if (!is_token(meta.kind))
        throw std::invalid_argument("sequence kind must be a non-empty token");
}

std::uint64_t parse_u64(std::string_view tok, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.begin(), tok.end(), v);
    if (ec != std::errc{} || p != tok.end())
        throw ValidationError(std::string("sequence file: bad ") + what + " '" + std::string(tok) + "'");
    return v;
}

}  // namespace

SequenceRecord SequenceRecord::exact(std::vector<DyadicPoint> pts, SequenceMeta meta) {
    check_meta(meta);
    SequenceRecord r;
    r.points_ = std::move(pts);
    r.meta_ = std::move(meta);
    return r;
}

SequenceRecord SequenceRecord::approx(std::vector<double> pts, SequenceMeta meta) {
    check_meta(meta);
    for (double v : pts)
        if (!(std::isfinite(v) && v >= 0.0 && v < 1.0))
            throw std::invalid_argument("sequence values must be finite and in [0,1)");
    SequenceRecord r;
    r.points_ = std::move(pts);
    r.meta_ = std::move(meta);
    return r;
}

std::size_t SequenceRecord::size() const {
    return is_exact() ? std::get<0>(points_).size() : std::get<1>(points_).size();
}

const std::vector<DyadicPoint>& SequenceRecord::exact_points() const {
    if (!is_exact()) throw std::invalid_argument("sequence is not exact");
    return std::get<0>(points_);
}

const std::vector<double>& SequenceRecord::approx_points() const {
    if (is_exact()) throw std::invalid_argument("sequence is not binary64");
    return std::get<1>(points_);
}

TorusPoint SequenceRecord::point(std::size_t i) const {
    if (i >= size()) throw std::out_of_range("sequence index out of range");
    if (is_exact()) return TorusPoint::exact(std::get<0>(points_)[i]);
    return TorusPoint::approx(std::get<1>(points_)[i]);
}

std::string format_f64(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_sequence(const SequenceRecord& rec, std::ostream& out) {
    out << "#ppclab v1 kind=" << rec.meta().kind << " n=" << rec.size()
        << " repr=" << (rec.is_exact() ? "dyadic" : "f64") << " seed=";
    if (rec.meta().seed)
        out << *rec.meta().seed;
    else
        out << "none";
    out << '\n';
    if (rec.is_exact()) {
        for (const auto& p : rec.exact_points()) out << p.num() << ' ' << p.exp() << '\n';
    } else {
        for (double v : rec.approx_points()) out << format_f64(v) << '\n';
    }
    if (!out) throw ValidationError("sequence write failed");
}

void write_sequence_file(const SequenceRecord& rec, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open for writing: " + path.string());
    write_sequence(rec, f);
}

SequenceRecord read_sequence(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ValidationError("sequence file: missing header");

    // Header fields are positional; anything else is a format error.
    std::istringstream hs(header);
    std::string magic, ver, kindf, nf, reprf, seedf, extra;
    hs >> magic >> ver >> kindf >> nf >> reprf >> seedf;
    if (!hs || magic != "#ppclab" || ver != "v1" || kindf.rfind("kind=", 0) != 0 ||
        nf.rfind("n=", 0) != 0 || reprf.rfind("repr=", 0) != 0 || seedf.rfind("seed=", 0) != 0 ||
        (hs >> extra))
        throw ValidationError("sequence file: malformed header '" + header + "'");

    SequenceMeta meta;
    meta.kind = kindf.substr(5);
    if (!is_token(meta.kind)) throw ValidationError("sequence file: empty kind");
    std::uint64_t n = parse_u64(nf.substr(2), "n");
    std::string repr = reprf.substr(5);
    std::string seed = seedf.substr(5);
    if (seed != "none") meta.seed = parse_u64(seed, "seed");

    std::string line;
    if (repr == "dyadic") {
        std::vector<DyadicPoint> pts;
        pts.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            if (!std::getline(in, line)) throw ValidationError("sequence file: truncated");
            std::istringstream ls(line);
            std::string t1, t2, t3;
            ls >> t1 >> t2;
            if (!ls || (ls >> t3))
                throw ValidationError("sequence file: bad dyadic line '" + line + "'");
            std::uint64_t num = parse_u64(t1, "numerator");
            std::uint64_t exp = parse_u64(t2, "exponent");
            if (exp > kMaxDyadicExp)
                throw ValidationError("sequence file: exponent exceeds 62 in '" + line + "'");
            if ((num >> exp) != 0)
                throw ValidationError("sequence file: numerator not below 2^exp in '" + line + "'");
            if (num != 0 && (num & 1) == 0)
                throw ValidationError("sequence file: non-canonical dyadic '" + line + "'");
            if (num == 0 && exp != 0)
                throw ValidationError("sequence file: non-canonical dyadic '" + line + "'");
            pts.push_back(DyadicPoint::make(num, static_cast<std::uint32_t>(exp)));
        }
        if (std::getline(in, line) && !line.empty())
            throw ValidationError("sequence file: trailing data");
        return SequenceRecord::exact(std::move(pts), std::move(meta));
    }
    if (repr == "f64") {
        std::vector<double> pts;
        pts.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            if (!std::getline(in, line)) throw ValidationError("sequence file: truncated");
            errno = 0;
            char* end = nullptr;
            double v = std::strtod(line.c_str(), &end);
            if (end == line.c_str() || *end != '\0' || errno == ERANGE)
                throw ValidationError("sequence file: bad f64 line '" + line + "'");
            if (!(std::isfinite(v) && v >= 0.0 && v < 1.0))
                throw ValidationError("sequence file: value outside [0,1) in '" + line + "'");
            pts.push_back(v);
        }
        if (std::getline(in, line) && !line.empty())
            throw ValidationError("sequence file: trailing data");
        return SequenceRecord::approx(std::move(pts), std::move(meta));
    }
    throw ValidationError("sequence file: unknown repr '" + repr + "'");
}

SequenceRecord read_sequence_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open for reading: " + path.string());
    return read_sequence(f);
}

bool identical(const SequenceRecord& a, const SequenceRecord& b) {
    if (a.is_exact() != b.is_exact() || a.size() != b.size()) return false;
    if (a.meta().kind != b.meta().kind || a.meta().seed != b.meta().seed) return false;
    if (a.is_exact()) return a.exact_points() == b.exact_points();
    const auto& x = a.approx_points();
    const auto& y = b.approx_points();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::bit_cast<std::uint64_t>(x[i]) != std::bit_cast<std::uint64_t>(y[i])) return false;
    return true;
}

}  // namespace ppclab
