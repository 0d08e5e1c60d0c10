// Command-line front end for the broadcast multiplexing trade-off library.
// Five subcommands cover the pipeline: per-bit capacity curves, the
// coverage/threshold table, strategy sweeps over the rate ratio, a per-ratio
// winner report, and the Monte Carlo / exhaustive-search cross-checks.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bdmqam/run.hpp"

namespace {

void add_common_options(CLI::App* cmd, bdmqam::RunConfig& cfg) {
    cmd->add_option("--intercept", cfg.cell.intercept_db,
                    "Mean SNR at 1 km distance (dB)")
        ->capture_default_str();
    cmd->add_option("--slope", cfg.cell.slope, "Path-loss slope (dB per decade of km)")
        ->capture_default_str();
    cmd->add_option("--sigma", cfg.cell.sigma_db, "Shadowing standard deviation (dB)")
        ->capture_default_str();
    cmd->add_option("--radius", cfg.cell.radius_km, "Cell radius (km)")->capture_default_str();
    cmd->add_option("-o,--output", cfg.output,
                    "Output CSV path (defaults to a per-command file name)");
    cmd->add_option("--out-dir", cfg.out_dir, "Directory for relative output paths")
        ->envname("BDMQAM_OUT_DIR")
        ->capture_default_str();
    // --config lives on the root app (config files are processed there);
    // fallthrough lets it be written after the subcommand name
    cmd->fallthrough();
}

void add_grid_options(CLI::App* cmd, bdmqam::GridSpec& g, const std::string& prefix,
                      const std::string& what) {
    cmd->add_option("--" + prefix + "-min", g.min, "Smallest " + what)->capture_default_str();
    cmd->add_option("--" + prefix + "-max", g.max, "Largest " + what)->capture_default_str();
    cmd->add_option("--" + prefix + "-step", g.step, "Grid step of the " + what)
        ->capture_default_str();
}

void add_target_options(CLI::App* cmd, bdmqam::RunConfig& cfg) {
    cmd->add_option("--g-base", cfg.g_base, "Coverage target of the base stream, in (0,1)")
        ->capture_default_str();
    cmd->add_option("--g-enh", cfg.g_enh, "Coverage target of the enhanced stream, in (0,1)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    bdmqam::RunConfig cfg;
    std::vector<std::string> strategy_names;
    for (const bdmqam::Strategy s : bdmqam::kAllStrategies) {
        strategy_names.emplace_back(bdmqam::to_string(s));
    }

    CLI::App app{
        "bdmqam - spectral efficiency vs coverage trade-off of broadcast "
        "multiplexing strategies over (non-uniform) 16-QAM"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from a TOML config file with one [subcommand] section "
                   "(flags override it)");

    CLI::App* capacity = app.add_subcommand(
        "capacity", "Per-bit BICM capacities over an Es/N0 grid, one curve set per alpha");
    add_common_options(capacity, cfg);
    add_grid_options(capacity, cfg.esn0_grid, "esn0", "Es/N0 value (dB)");
    capacity->add_option("--alphas", cfg.capacity_alphas, "Constellation parameters to evaluate")
        ->capture_default_str();
    capacity->add_option("--constellation-out", cfg.constellation_out,
                         "Also write the constellation point list to this CSV");

    CLI::App* coverage = app.add_subcommand(
        "coverage", "Decoding thresholds achieving the requested coverage fractions");
    add_common_options(coverage, cfg);
    coverage->add_option("--coverages", cfg.coverages, "Coverage fractions, each in (0,1)")
        ->capture_default_str();
    coverage->add_option("--cdf-out", cfg.cdf_out,
                         "Also write coverage vs threshold over the dB grid to this CSV");
    add_grid_options(coverage, cfg.esn0_grid, "thr", "threshold value (dB) of the CDF output");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Spectral efficiency of each strategy over a rate-ratio grid");
    add_common_options(sweep, cfg);
    add_target_options(sweep, cfg);
    add_grid_options(sweep, cfg.t_grid, "t", "enhanced/base rate ratio");
    add_grid_options(sweep, cfg.alpha_grid, "alpha", "constellation parameter");
    sweep->add_option("--strategies", strategy_names, "Strategies to evaluate")
        ->capture_default_str();

    CLI::App* compare = app.add_subcommand(
        "compare", "Winner-per-rate-ratio report across the selected strategies");
    add_common_options(compare, cfg);
    add_target_options(compare, cfg);
    add_grid_options(compare, cfg.t_grid, "t", "enhanced/base rate ratio");
    add_grid_options(compare, cfg.alpha_grid, "alpha", "constellation parameter");
    compare->add_option("--strategies", strategy_names, "Strategies to evaluate")
        ->capture_default_str();

    CLI::App* validate = app.add_subcommand(
        "validate", "Cross-check quadrature against Monte Carlo and the allocation rule "
                    "against exhaustive search");
    add_common_options(validate, cfg);
    validate->add_option("--seed", cfg.seed, "Seed of every Monte Carlo check")
        ->capture_default_str();
    validate->add_option("--draws", cfg.mc_draws, "Monte Carlo draws per check (>= 10000)")
        ->capture_default_str();
    validate->add_option("--instances", cfg.oracle_instances,
                         "Random allocation instances to cross-check")
        ->capture_default_str();
    validate->add_option("--coverages", cfg.coverages,
                         "Coverage fractions probed by the coverage checks")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    if (capacity->parsed()) cfg.command = bdmqam::Command::capacity;
    if (coverage->parsed()) cfg.command = bdmqam::Command::coverage;
    if (sweep->parsed()) cfg.command = bdmqam::Command::sweep;
    if (compare->parsed()) cfg.command = bdmqam::Command::compare;
    if (validate->parsed()) cfg.command = bdmqam::Command::validate;

    cfg.strategies.clear();
    for (const std::string& name : strategy_names) {
        const auto s = bdmqam::strategy_from_string(name);
        if (!s) {
            std::cerr << "config error: unknown strategy '" << name << "'\n";
            return 2;
        }
        cfg.strategies.push_back(*s);
    }

    return bdmqam::run(cfg, std::cout, std::cerr);
}
