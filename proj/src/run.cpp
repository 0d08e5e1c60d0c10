#include "bdmqam/run.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bdmqam/bitcap.hpp"
#include "bdmqam/constellation.hpp"
#include "bdmqam/csv.hpp"

namespace fs = std::filesystem;

namespace bdmqam {

namespace {

[[noreturn]] void fail_config(const std::string& msg) { throw std::invalid_argument(msg); }

void check_grid(const GridSpec& g, const std::string& name,
                double min_allowed = -std::numeric_limits<double>::infinity()) {
    if (!std::isfinite(g.min) || g.min < min_allowed) {
        fail_config(name + ".min is out of range");
    }
    if (!std::isfinite(g.max) || g.max < g.min) {
        fail_config(name + ".max must be >= " + name + ".min");
    }
    if (!std::isfinite(g.step) || g.step <= 0.0) {
        fail_config(name + ".step must be > 0");
    }
}

void check_config(const RunConfig& cfg) {
    cfg.cell.validate();
    if (!(cfg.g_enh > 0.0 && cfg.g_enh < cfg.g_base && cfg.g_base < 1.0)) {
        fail_config("g_base/g_enh must satisfy 0 < g_enh < g_base < 1");
    }
    check_grid(cfg.t_grid, "t_grid", 0.0);
    check_grid(cfg.alpha_grid, "alpha_grid", 0.0);
    check_grid(cfg.esn0_grid, "esn0_grid");
    if (cfg.capacity_alphas.empty()) fail_config("capacity_alphas must not be empty");
    for (const double a : cfg.capacity_alphas) {
        if (!std::isfinite(a) || a < 0.0) {
            fail_config("capacity_alphas entries must be finite and >= 0");
        }
    }
    if (cfg.coverages.empty()) fail_config("coverages must not be empty");
    for (const double g : cfg.coverages) {
        if (!(g > 0.0 && g < 1.0)) fail_config("coverages entries must lie in (0, 1)");
    }
    if (cfg.strategies.empty()) fail_config("strategies must not be empty");
    if (cfg.mc_draws < 10'000) fail_config("mc_draws must be >= 10000");
    if (cfg.oracle_instances < 1) fail_config("oracle_instances must be >= 1");
}

std::string pct(double g) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", 100.0 * g);
    return buf;
}

std::string num3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string default_name(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::capacity: return "capacity.csv";
        case Command::coverage: return "coverage.csv";
        case Command::sweep: return "sweep_gb" + pct(cfg.g_base) + "_ge" + pct(cfg.g_enh) + ".csv";
        case Command::compare:
            return "compare_gb" + pct(cfg.g_base) + "_ge" + pct(cfg.g_enh) + ".csv";
        case Command::validate: return "";
    }
    return "";
}

fs::path resolve(const RunConfig& cfg, const std::string& name) {
    fs::path p(name);
    if (p.is_relative()) p = fs::path(cfg.out_dir) / p;
    return p;
}

fs::path main_path(const RunConfig& cfg) {
    return resolve(cfg, cfg.output.empty() ? default_name(cfg) : cfg.output);
}

std::string grid_str(const GridSpec& g) {
    return csv_num(g.min) + ":" + csv_num(g.max) + ":" + csv_num(g.step);
}

std::string join_nums(std::span<const double> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += csv_num(v[i]);
    }
    return s;
}

// The comment line records every numeric knob so a CSV re-identifies the run
// that produced it; output paths are deliberately excluded.
std::string config_comment(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# bdmqam command=" << to_string(cfg.command) << " cell=" << csv_num(cfg.cell.intercept_db)
       << ',' << csv_num(cfg.cell.slope) << ',' << csv_num(cfg.cell.sigma_db) << ','
       << csv_num(cfg.cell.radius_km) << " g_base=" << csv_num(cfg.g_base)
       << " g_enh=" << csv_num(cfg.g_enh) << " t_grid=" << grid_str(cfg.t_grid)
       << " alpha_grid=" << grid_str(cfg.alpha_grid) << " esn0_grid=" << grid_str(cfg.esn0_grid)
       << " capacity_alphas=" << join_nums(cfg.capacity_alphas)
       << " coverages=" << join_nums(cfg.coverages) << " strategies=";
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
        if (i) os << ',';
        os << to_string(cfg.strategies[i]);
    }
    os << " seed=" << cfg.seed << " mc_draws=" << cfg.mc_draws
       << " oracle_instances=" << cfg.oracle_instances;
    return os.str();
}

// Binary mode keeps the mandated LF line endings on every platform.
std::ofstream open_csv(const fs::path& p) {
    std::ofstream ofs(p, std::ios::binary);
    if (!ofs) throw std::runtime_error("cannot open output file: " + p.string());
    return ofs;
}

void run_capacity(const RunConfig& cfg, std::ostream& out) {
    const fs::path path = main_path(cfg);
    auto ofs = open_csv(path);
    ofs << config_comment(cfg) << '\n';
    write_capacity_curves_csv(cfg.capacity_alphas, cfg.esn0_grid.values(), ofs);
    out << "wrote " << path.string() << '\n';

    if (!cfg.constellation_out.empty()) {
        const fs::path cpath = resolve(cfg, cfg.constellation_out);
        auto cofs = open_csv(cpath);
        cofs << config_comment(cfg) << '\n';
        cofs << "alpha,index,b1b2b3b4,i,q\n";
        for (const double a : cfg.capacity_alphas) {
            const NuQam16 c = build_constellation(a);
            for (int k = 0; k < 16; ++k) {
                cofs << csv_num(a) << ',' << k << ',' << label_bits(c.labels[k]) << ','
                     << csv_num(c.points[k].real()) << ',' << csv_num(c.points[k].imag()) << '\n';
            }
        }
        out << "wrote " << cpath.string() << '\n';
    }
}

void run_coverage(const RunConfig& cfg, std::ostream& out) {
    const fs::path path = main_path(cfg);
    auto ofs = open_csv(path);
    ofs << config_comment(cfg) << '\n';
    write_coverage_table_csv(cfg.cell, cfg.coverages, ofs);
    out << "wrote " << path.string() << '\n';

    if (!cfg.cdf_out.empty()) {
        const fs::path cpath = resolve(cfg, cfg.cdf_out);
        auto cofs = open_csv(cpath);
        cofs << config_comment(cfg) << '\n';
        write_coverage_cdf_csv(cfg.cell, cfg.esn0_grid.values(), cofs);
        out << "wrote " << cpath.string() << '\n';
    }
}

void run_sweep(const RunConfig& cfg, std::ostream& out) {
    const StreamTargets targets = StreamTargets::from_coverages(cfg.cell, cfg.g_base, cfg.g_enh);
    const auto points =
        sweep(targets, cfg.t_grid.values(), cfg.strategies, cfg.alpha_grid.values());
    const fs::path path = main_path(cfg);
    auto ofs = open_csv(path);
    ofs << config_comment(cfg) << '\n';
    write_sweep_csv(targets, points, ofs);
    out << "wrote " << path.string() << '\n';
}

void run_compare(const RunConfig& cfg, std::ostream& out) {
    const StreamTargets targets = StreamTargets::from_coverages(cfg.cell, cfg.g_base, cfg.g_enh);
    const auto t_values = cfg.t_grid.values();
    const auto points = sweep(targets, t_values, cfg.strategies, cfg.alpha_grid.values());

    const fs::path path = main_path(cfg);
    auto ofs = open_csv(path);
    ofs << config_comment(cfg) << '\n';
    ofs << "t,se_time_sharing,se_hierarchical,se_bdm_uniform,se_bdm_nonuniform,winner\n";

    std::size_t idx = 0;
    for (const double t : t_values) {
        std::array<std::optional<double>, 4> se{};
        for (std::size_t s = 0; s < kAllStrategies.size(); ++s) {
            if (idx < points.size() && points[idx].strategy == kAllStrategies[s]) {
                se[s] = points[idx].se_total;
                ++idx;
            }
        }
        ofs << csv_num(t);
        std::optional<double> best;
        Strategy winner = Strategy::time_sharing;
        for (std::size_t s = 0; s < kAllStrategies.size(); ++s) {
            ofs << ',';
            if (se[s]) {
                ofs << csv_num(*se[s]);
                if (!best || *se[s] >= *best) {  // ties go to the later strategy
                    best = *se[s];
                    winner = kAllStrategies[s];
                }
            }
        }
        ofs << ',' << (best ? to_string(winner) : "") << '\n';
    }
    out << "wrote " << path.string() << '\n';
}

class CheckReporter {
  public:
    explicit CheckReporter(std::ostream& out) : out_(out) {}

    void line(bool ok, const std::string& what) {
        out_ << (ok ? "[PASS] " : "[FAIL] ") << what << '\n';
        if (!ok) all_ok_ = false;
    }

    bool all_ok() const { return all_ok_; }

  private:
    std::ostream& out_;
    bool all_ok_ = true;
};

bool run_validate(const RunConfig& cfg, std::ostream& out) {
    CheckReporter r(out);

    {
        double worst = 0.0;
        for (const double a : {0.0, 0.5, 1.0, 2.0, 5.0, 15.0}) {
            worst = std::max(worst, std::fabs(build_constellation(a).mean_energy() - 1.0));
        }
        r.line(worst <= 1e-12, "constellation mean energy = 1 across alpha (worst |delta| = " +
                                   num3(worst) + ", tol 1e-12)");
    }

    {
        struct Probe {
            double alpha, esn0_db;
            int bit;
        };
        const std::array<Probe, 4> probes{{{1.0, 10.0, 1}, {1.0, 10.0, 3}, {2.0, 5.0, 1},
                                           {2.0, 15.0, 4}}};
        for (std::size_t k = 0; k < probes.size(); ++k) {
            const Probe& p = probes[k];
            const NuQam16 c = build_constellation(p.alpha);
            const double quad = bit_capacity(c, {p.esn0_db}, p.bit);
            const McEstimate mc = mc_bit_capacity(c, {p.esn0_db}, p.bit, cfg.mc_draws,
                                                  cfg.seed + k);
            const double delta = std::fabs(quad - mc.estimate);
            r.line(delta <= 3.0 * mc.std_error,
                   "bit capacity quadrature vs monte-carlo (alpha=" + num3(p.alpha) + ", esn0=" +
                       num3(p.esn0_db) + " dB, bit " + std::to_string(p.bit) + "): |delta| = " +
                       num3(delta) + ", 3*se = " + num3(3.0 * mc.std_error));
        }
    }

    {
        double worst = 0.0;
        for (const double g : cfg.coverages) {
            const double thr = threshold_of_coverage(cfg.cell, g);
            worst = std::max(worst, std::fabs(coverage_of_threshold(cfg.cell, thr) - g));
        }
        r.line(worst <= 1e-9, "coverage/threshold round trip (worst |delta| = " + num3(worst) +
                                  ", tol 1e-9)");
    }

    {
        std::size_t k = 0;
        for (const double g : cfg.coverages) {
            const double thr = threshold_of_coverage(cfg.cell, g);
            const double quad = coverage_of_threshold(cfg.cell, thr);
            const McEstimate mc = mc_coverage(cfg.cell, thr, cfg.mc_draws, cfg.seed + 100 + k);
            const double delta = std::fabs(quad - mc.estimate);
            r.line(delta <= 3.0 * mc.std_error,
                   "coverage quadrature vs monte-carlo (g=" + num3(g) + "): |delta| = " +
                       num3(delta) + ", 3*se = " + num3(3.0 * mc.std_error));
            ++k;
        }
    }

    {
        std::mt19937_64 rng(cfg.seed + 1000);
        std::uniform_real_distribution<double> cap_dist(0.02, 1.0);
        std::uniform_real_distribution<double> t_dist(0.0, 5.0);
        double worst_se = 0.0;
        double worst_ratio = 0.0;
        for (int i = 0; i < cfg.oracle_instances; ++i) {
            BitCapacities cb, ce;
            for (int j = 0; j < 4; ++j) cb.c[j] = cap_dist(rng);
            for (int j = 0; j < 4; ++j) ce.c[j] = cap_dist(rng);
            const double t = t_dist(rng);

            const Allocation rule = bdm_allocate(cb, ce, t);
            double se_base = 0.0, se_enh = 0.0;
            for (int j = 0; j < 4; ++j) {
                se_base += rule.beta[j] * cb.c[j];
                se_enh += (1.0 - rule.beta[j]) * ce.c[j];
            }
            if (se_base > 0.0) {
                worst_ratio = std::max(worst_ratio, std::fabs(se_enh / se_base - t));
            }

            const Allocation grid = brute_force_allocate(cb, ce, t, 100);
            double se_grid = 0.0;
            for (int j = 0; j < 4; ++j) {
                se_grid += grid.beta[j] * cb.c[j] + (1.0 - grid.beta[j]) * ce.c[j];
            }
            worst_se = std::max(worst_se, std::fabs((se_base + se_enh) - se_grid));
        }
        r.line(worst_se <= 1e-3,
               "allocation rule vs exhaustive search on " + std::to_string(cfg.oracle_instances) +
                   " random instances (worst |delta se| = " + num3(worst_se) + ", tol 1e-3)");
        r.line(worst_ratio <= 1e-9, "allocation achieves the requested rate ratio (worst |delta| = " +
                                        num3(worst_ratio) + ", tol 1e-9)");
    }

    {
        const NuQam16 c = build_constellation(15.0);
        const double half_var = SnrPoint{30.0}.n0() / 2.0;
        const double v64 = detail::axis_bit_capacity(c.pam_levels, kAxisMagBit, half_var, 64);
        const double v96 = detail::axis_bit_capacity(c.pam_levels, kAxisMagBit, half_var, 96);
        const double delta = std::fabs(v64 - v96);
        r.line(delta <= 1e-6, "quadrature order self-consistency at alpha=15, esn0=30 dB (|delta| = " +
                                  num3(delta) + ", tol 1e-6)");
    }

    out << (r.all_ok() ? "validation passed" : "validation failed") << '\n';
    return r.all_ok();
}

}  // namespace

std::string_view to_string(Command c) {
    switch (c) {
        case Command::capacity: return "capacity";
        case Command::coverage: return "coverage";
        case Command::sweep: return "sweep";
        case Command::compare: return "compare";
        case Command::validate: return "validate";
    }
    return "unknown";
}

std::string output_path(const RunConfig& config) {
    if (config.command == Command::validate) return {};
    return main_path(config).string();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        check_config(config);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }
    try {
        switch (config.command) {
            case Command::capacity: run_capacity(config, out); return 0;
            case Command::coverage: run_coverage(config, out); return 0;
            case Command::sweep: run_sweep(config, out); return 0;
            case Command::compare: run_compare(config, out); return 0;
            case Command::validate: return run_validate(config, out) ? 0 : 1;
        }
        err << "error: unknown command\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace bdmqam
