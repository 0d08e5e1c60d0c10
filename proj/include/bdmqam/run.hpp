#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bdmqam/coverage.hpp"
#include "bdmqam/numeric.hpp"
#include "bdmqam/strategies.hpp"

namespace bdmqam {

// Top-level commands exposed by the CLI.
enum class Command {
    capacity,  // per-bit capacity curves over an Es/N0 grid
    coverage,  // coverage -> threshold table for the cell model
    sweep,     // spectral-efficiency curves of all strategies over t
    compare,   // per-t winner report across strategies
    validate,  // Monte Carlo / exhaustive-search cross-checks
};

std::string_view to_string(Command c);

// One fully resolved invocation. Defaults reproduce the headline scenario:
// a 98% base / 90% enhanced coverage split in the default cell.
struct RunConfig {
    Command command = Command::sweep;
    CellModel cell;
    double g_base = 0.98;
    double g_enh = 0.90;
    GridSpec t_grid{0.0, 5.0, 0.05};
    GridSpec alpha_grid{0.0, 15.0, 0.02};
    GridSpec esn0_grid{-10.0, 30.0, 0.5};
    std::vector<double> capacity_alphas{1.0, 2.0};
    std::vector<double> coverages{0.98, 0.95, 0.90, 0.80, 0.70};
    std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
    std::string out_dir = ".";
    std::string output;             // main CSV; empty = default name per command
    std::string constellation_out;  // optional point-list CSV (capacity command)
    std::string cdf_out;            // optional coverage-vs-threshold CSV (coverage command)
    std::uint64_t seed = 1;
    std::int64_t mc_draws = 1'000'000;
    int oracle_instances = 200;
};

// Absolute or out_dir-relative path of the main CSV the command will write.
// Empty for `validate`, which only prints a report.
std::string output_path(const RunConfig& config);

// Validates the config, runs the command, writes CSV files, and reports
// progress on `out` and problems on `err`. Returns 0 on success, 1 when a
// validation check fails, 2 on a configuration error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bdmqam
