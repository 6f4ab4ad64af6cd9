#pragma once
// The acceptance suite: end-to-end checks that the laboratory delivers its
// guarantees, from exact counting identities to the statistical behavior of
// the constructed sequences. Every randomized check starts from a seed
// recorded in the manifest, so the suite is deterministic run to run.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ppclab {

struct AcceptanceManifest {
    std::uint64_t counting_seed = 1001;
    std::uint64_t gap_seed_base = 0;  // 20 construction seeds: base .. base+19
    std::uint64_t identity_seed = 11;
    std::uint64_t mc_seed = 42;
    std::uint64_t construction_seed = 7;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> run_acceptance_suite(const AcceptanceManifest& manifest = {});

// One line per check plus a summary line; true when every check passed.
bool print_acceptance_report(std::ostream& out, const AcceptanceManifest& manifest = {});

}  // namespace ppclab
