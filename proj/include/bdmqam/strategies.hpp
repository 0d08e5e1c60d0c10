#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bdmqam/bitcap.hpp"
#include "bdmqam/coverage.hpp"

namespace bdmqam {

enum class Strategy {
    time_sharing,
    hierarchical,
    bdm_uniform,
    bdm_nonuniform,
};

inline constexpr std::array<Strategy, 4> kAllStrategies{
    Strategy::time_sharing,
    Strategy::hierarchical,
    Strategy::bdm_uniform,
    Strategy::bdm_nonuniform,
};

std::string_view to_string(Strategy s);
std::optional<Strategy> strategy_from_string(std::string_view name);

// Coverage targets for the two streams and their decoding thresholds. The
// base stream has the wider coverage, hence the lower threshold.
struct StreamTargets {
    double g_base = 0.0;
    double g_enh = 0.0;
    double thr_base_db = 0.0;
    double thr_enh_db = 0.0;

    // Derives both thresholds from the cell model; requires g_enh < g_base.
    static StreamTargets from_coverages(const CellModel& cell, double g_base, double g_enh);
};

// Fraction of each bit index assigned to the base stream; 1 - beta[i] goes
// to the enhanced stream.
struct Allocation {
    std::array<double, 4> beta{};
};

// One evaluated operating point of a strategy.
struct StrategyPoint {
    Strategy strategy = Strategy::time_sharing;
    double t_ratio = 0.0;  // achieved enhanced/base rate ratio
    std::optional<double> alpha;
    std::optional<Allocation> allocation;
    std::optional<double> time_share_x;
    double se_base = 0.0;
    double se_enh = 0.0;
    double se_total = 0.0;
};

// Time sharing between two full-constellation streams with BICM totals
// cap_total_base/cap_total_enh: the enhanced stream gets the time fraction
// x = t*Cb / (Ce + t*Cb).
StrategyPoint time_sharing_point(double cap_total_base, double cap_total_enh, double t);

struct HmCurvePoint {
    double alpha = 0.0;
    double t = 0.0;
    double se_base = 0.0;
    double se_enh = 0.0;
    double se_total = 0.0;
};

// Hierarchical modulation curve over an alpha grid: the base stream rides
// the sign bits at the base threshold, the enhanced stream the magnitude
// bits at the enhanced threshold. t is decreasing in alpha.
std::vector<HmCurvePoint> hm_curve(const StreamTargets& targets, std::span<const double> alphas);

// Solves t(alpha) = t by bisection on alpha in [0, 15]. Returns nullopt when
// no alpha in the bracket achieves the requested ratio within 1e-3 (t above
// t(0) or below t(15)).
std::optional<StrategyPoint> hm_point_at_t(const StreamTargets& targets, double t);

// Ratio-ordering bit allocation: bits with the smallest C_e/C_b ratio fill
// the base stream, with at most one fractional bit chosen so the achieved
// rate ratio equals t exactly. All capacities must be positive.
Allocation bdm_allocate(const BitCapacities& caps_base, const BitCapacities& caps_enh, double t);

// Exhaustive grid search over allocations satisfying the ratio constraint;
// test oracle for bdm_allocate. grid_steps must be >= 100.
Allocation brute_force_allocate(const BitCapacities& caps_base, const BitCapacities& caps_enh,
                                double t, int grid_steps);

// BDM operating point for one constellation parameter; alpha = 1 is the
// plain uniform-QAM BDM strategy.
StrategyPoint bdm_point(const StreamTargets& targets, double t, double alpha);

// BDM with the constellation parameter optimized over a grid (maximum taken
// at a grid point, no interpolation; ties keep the smallest alpha).
StrategyPoint bdm_nu_point(const StreamTargets& targets, double t, std::span<const double> alphas);

// Bit capacities at both stream thresholds for every alpha on a grid;
// immutable once built, shared by the sweep evaluations.
class CapacityTable {
  public:
    static CapacityTable build(const StreamTargets& targets, std::span<const double> alphas);

    std::span<const double> alphas() const { return alphas_; }
    const BitCapacities& base(std::size_t i) const { return base_[i]; }
    const BitCapacities& enh(std::size_t i) const { return enh_[i]; }
    std::size_t size() const { return alphas_.size(); }

  private:
    std::vector<double> alphas_;
    std::vector<BitCapacities> base_;
    std::vector<BitCapacities> enh_;
};

StrategyPoint bdm_nu_point(const StreamTargets& targets, double t, const CapacityTable& table);

// Full curve family over a rate-ratio grid. Points are ordered by t, then by
// strategy in kAllStrategies order; hierarchical points are omitted where
// the ratio is unattainable.
std::vector<StrategyPoint> sweep(const StreamTargets& targets, std::span<const double> t_grid,
                                 std::span<const Strategy> strategies,
                                 std::span<const double> alphas);

// strategy,g_base,g_enh,t,alpha,beta1..beta4,x,se_base,se_enh,se_total rows;
// inapplicable fields are left empty.
void write_sweep_csv(const StreamTargets& targets, std::span<const StrategyPoint> points,
                     std::ostream& os);

namespace detail {

// Ratio-ordering allocation over n >= 1 bit channels.
std::vector<double> allocate_by_ratio(std::span<const double> caps_base,
                                      std::span<const double> caps_enh, double t);

// Grid-search oracle over n >= 1 bit channels.
std::vector<double> brute_force_allocation(std::span<const double> caps_base,
                                           std::span<const double> caps_enh, double t,
                                           int grid_steps);

}  // namespace detail

}  // namespace bdmqam
