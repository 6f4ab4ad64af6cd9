#pragma once

// Finite sequences on the torus with homogeneous representation, plus the
// text file format used to exchange them:
//
//   #ppclab v1 kind=<label> n=<N> repr=<dyadic|f64> seed=<u64|none>
//   <num> <exp>            one point per line, canonical dyadic
//   ...
//
// or, for repr=f64, one decimal per line printed with 17 significant
// digits (round-trips binary64 exactly). Readers are strict: they reject
// non-canonical dyadic lines, header mismatches and out-of-range values.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ppclab/torus.hpp"

namespace ppclab {

struct SequenceMeta {
    std::string kind;  // single token, e.g. "equispaced", "kronecker"
    std::optional<std::uint64_t> seed;
    std::string config_digest;  // process metadata, not serialized
};

class SequenceRecord {
public:
    static SequenceRecord exact(std::vector<DyadicPoint> pts, SequenceMeta meta);
    // Validates every value to be finite and in [0,1).
    static SequenceRecord approx(std::vector<double> pts, SequenceMeta meta);

    bool is_exact() const { return points_.index() == 0; }
    std::size_t size() const;

    const std::vector<DyadicPoint>& exact_points() const;  // throws if approx
    const std::vector<double>& approx_points() const;      // throws if exact
    TorusPoint point(std::size_t i) const;                 // 0-based

    const SequenceMeta& meta() const { return meta_; }

private:
    std::variant<std::vector<DyadicPoint>, std::vector<double>> points_;
    SequenceMeta meta_;
};

void write_sequence(const SequenceRecord& rec, std::ostream& out);
void write_sequence_file(const SequenceRecord& rec, const std::filesystem::path& path);
SequenceRecord read_sequence(std::istream& in);
SequenceRecord read_sequence_file(const std::filesystem::path& path);

// Bitwise equality: representation, kind, seed and every point (binary64
// compared by bit pattern). This is the round-trip contract of the format.
bool identical(const SequenceRecord& a, const SequenceRecord& b);

// "%.17g" rendering used everywhere a binary64 leaves the process as text.
std::string format_f64(double v);

}  // namespace ppclab
