#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace onlinectl {

inline const std::vector<std::string> kSubcommands{"colour", "pack", "chains", "reduce", "wkl", "analysis"};

struct Scenario {
    std::string subcommand;
    std::string solver; ///< empty picks the subcommand's default
    std::size_t n = 12;
    std::size_t d = 2;
    std::size_t k = 3;
    std::size_t t = 0;
    std::uint64_t seed = 1;
    std::size_t seeds = 1;
    std::size_t horizon = 8;
    std::filesystem::path out_dir = "out";
    std::optional<std::size_t> oracle_cap;
};

/// Thrown for an unknown subcommand or solver.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes <out_dir>/<subcommand>.csv plus one instance file per row under
/// <out_dir>/instances, prints a summary to `log` and returns the exit status.
int run_scenario(const Scenario& scenario, std::ostream& log);

} // namespace onlinectl
