#pragma once

#include <string>
#include <vector>

#include "cayspar/cayley.hpp"
#include "cayspar/group.hpp"

namespace cayspar {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;       // parse / configuration errors
inline constexpr int kExitVerifyFail = 3;   // a requested verification failed
inline constexpr int kExitNumerical = 4;    // numerical-tolerance failure

/// Default root seed used when --seed is not given (documented in README).
inline constexpr std::uint64_t kDefaultSeed = 1729;

struct CliResult {
    int exitCode = 0;
    std::string out;  // report payload (JSON or CSV) when no --out path is set
    std::string err;  // human-readable diagnostics
};

/// Runs the command line given as argv-style tokens (without the program
/// name). The binary entry point is a thin wrapper around this, which keeps
/// the whole surface testable in-process.
CliResult run_cli(const std::vector<std::string>& args);

/// Group spec grammar:
///   cyclic:N | f2:K | dihedral:M | sym:M | product:SPEC,SPEC | table:PATH
GroupTable parse_group_spec(const std::string& spec);

/// Generator spec grammar: `all` (all non-identity elements), a comma list
/// of element indices, or file:PATH in the `elem [weight]` format.
std::vector<GeneratorEntry> parse_generator_spec(const std::string& spec, const GroupTable& g);

}  // namespace cayspar
