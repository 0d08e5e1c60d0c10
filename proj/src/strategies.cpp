#include "bdmqam/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "bdmqam/csv.hpp"

namespace bdmqam {

namespace {

constexpr double kAlphaLo = 0.0;
constexpr double kAlphaHi = 15.0;
constexpr double kHmRatioTol = 1e-3;

void check_ratio(double t) {
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("t must be finite and >= 0");
}

double hm_base_se(const StreamTargets& targets, double alpha) {
    const NuQam16 c = build_constellation(alpha);
    const BitCapacities caps = all_bit_capacities(c, {targets.thr_base_db});
    return caps.c[0] + caps.c[1];
}

double hm_enh_se(const StreamTargets& targets, double alpha) {
    const NuQam16 c = build_constellation(alpha);
    const BitCapacities caps = all_bit_capacities(c, {targets.thr_enh_db});
    return caps.c[2] + caps.c[3];
}

double hm_ratio(const StreamTargets& targets, double alpha) {
    return hm_enh_se(targets, alpha) / hm_base_se(targets, alpha);
}

StrategyPoint hm_point_at_alpha(const StreamTargets& targets, double alpha) {
    StrategyPoint p;
    p.strategy = Strategy::hierarchical;
    p.alpha = alpha;
    p.se_base = hm_base_se(targets, alpha);
    p.se_enh = hm_enh_se(targets, alpha);
    p.se_total = p.se_base + p.se_enh;
    p.t_ratio = p.se_enh / p.se_base;
    return p;
}

StrategyPoint bdm_point_from_caps(const BitCapacities& caps_base, const BitCapacities& caps_enh,
                                  double t, double alpha) {
    StrategyPoint p;
    p.strategy = (alpha == 1.0) ? Strategy::bdm_uniform : Strategy::bdm_nonuniform;
    p.alpha = alpha;
    const Allocation alloc = bdm_allocate(caps_base, caps_enh, t);
    p.allocation = alloc;
    p.se_base = 0.0;
    p.se_enh = 0.0;
    for (int i = 0; i < 4; ++i) {
        p.se_base += alloc.beta[i] * caps_base.c[i];
        p.se_enh += (1.0 - alloc.beta[i]) * caps_enh.c[i];
    }
    p.se_total = p.se_base + p.se_enh;
    p.t_ratio = t;  // exact by construction of the fractional bit
    return p;
}

}  // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::time_sharing: return "time_sharing";
        case Strategy::hierarchical: return "hierarchical";
        case Strategy::bdm_uniform: return "bdm_uniform";
        case Strategy::bdm_nonuniform: return "bdm_nonuniform";
    }
    return "unknown";
}

std::optional<Strategy> strategy_from_string(std::string_view name) {
    for (const Strategy s : kAllStrategies) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

StreamTargets StreamTargets::from_coverages(const CellModel& cell, double g_base, double g_enh) {
    if (!(g_enh > 0.0 && g_enh < g_base && g_base < 1.0)) {
        throw std::invalid_argument("StreamTargets: need 0 < g_enh < g_base < 1");
    }
    StreamTargets t;
    t.g_base = g_base;
    t.g_enh = g_enh;
    t.thr_base_db = threshold_of_coverage(cell, g_base);
    t.thr_enh_db = threshold_of_coverage(cell, g_enh);
    return t;
}

StrategyPoint time_sharing_point(double cap_total_base, double cap_total_enh, double t) {
    if (!(cap_total_base > 0.0) || !(cap_total_enh > 0.0)) {
        throw std::invalid_argument("time_sharing_point: capacities must be positive");
    }
    check_ratio(t);
    StrategyPoint p;
    p.strategy = Strategy::time_sharing;
    const double x = t * cap_total_base / (cap_total_enh + t * cap_total_base);
    p.time_share_x = x;
    p.se_base = (1.0 - x) * cap_total_base;
    p.se_enh = x * cap_total_enh;
    p.se_total = p.se_base + p.se_enh;
    p.t_ratio = t;  // exact by construction of x
    return p;
}

std::vector<HmCurvePoint> hm_curve(const StreamTargets& targets, std::span<const double> alphas) {
    if (alphas.empty()) throw std::invalid_argument("hm_curve: empty alpha grid");
    std::vector<HmCurvePoint> out;
    out.reserve(alphas.size());
    for (const double a : alphas) {
        const double se_b = hm_base_se(targets, a);
        const double se_e = hm_enh_se(targets, a);
        out.push_back({a, se_e / se_b, se_b, se_e, se_b + se_e});
    }
    return out;
}

std::optional<StrategyPoint> hm_point_at_t(const StreamTargets& targets, double t) {
    check_ratio(t);
    const double t_lo_alpha = hm_ratio(targets, kAlphaLo);  // largest achievable ratio
    if (t > t_lo_alpha) return std::nullopt;
    const double t_hi_alpha = hm_ratio(targets, kAlphaHi);  // smallest achievable ratio
    if (t < t_hi_alpha && t_hi_alpha - t > kHmRatioTol) return std::nullopt;
    if (t <= t_hi_alpha) return hm_point_at_alpha(targets, kAlphaHi);

    double lo = kAlphaLo;  // t(lo) >= t
    double hi = kAlphaHi;  // t(hi) <= t
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hm_ratio(targets, mid) >= t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hm_point_at_alpha(targets, 0.5 * (lo + hi));
}

namespace detail {

std::vector<double> allocate_by_ratio(std::span<const double> caps_base,
                                      std::span<const double> caps_enh, double t) {
    const std::size_t n = caps_base.size();
    if (n == 0 || caps_enh.size() != n) {
        throw std::invalid_argument("allocate_by_ratio: need matching nonempty capacity lists");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(caps_base[i] > 0.0) || !(caps_enh[i] > 0.0)) {
            throw std::invalid_argument("allocate_by_ratio: capacities must be positive");
        }
    }
    check_ratio(t);

    // ascending C_e/C_b, ties by bit index
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return caps_enh[a] / caps_base[a] < caps_enh[b] / caps_base[b];
    });

    // Walk the fill level: bits before the boundary go fully to the base
    // stream, bits after it fully to the enhanced stream, and the boundary
    // bit takes the fraction that makes the achieved ratio hit t.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        double base_full = 0.0;
        for (std::size_t m = 0; m < k; ++m) base_full += caps_base[order[m]];
        double enh_full = 0.0;
        for (std::size_t m = k + 1; m < n; ++m) enh_full += caps_enh[order[m]];

        const double beta =
            (enh_full + caps_enh[j] - t * base_full) / (t * caps_base[j] + caps_enh[j]);
        if (beta >= -1e-12 && beta <= 1.0 + 1e-12) {
            std::vector<double> out(n, 0.0);
            for (std::size_t m = 0; m < k; ++m) out[order[m]] = 1.0;
            out[j] = std::clamp(beta, 0.0, 1.0);
            return out;
        }
    }
    throw std::logic_error("allocate_by_ratio: no boundary segment matched");
}

std::vector<double> brute_force_allocation(std::span<const double> caps_base,
                                           std::span<const double> caps_enh, double t,
                                           int grid_steps) {
    const std::size_t n = caps_base.size();
    if (n == 0 || caps_enh.size() != n) {
        throw std::invalid_argument("brute_force_allocation: need matching nonempty lists");
    }
    if (grid_steps < 100) {
        throw std::invalid_argument("brute_force_allocation: grid_steps must be >= 100");
    }
    check_ratio(t);

    // Every coordinate in turn acts as the free one solved from the ratio
    // constraint while the others run over the grid.
    std::vector<double> best;
    double best_total = -1.0;
    std::vector<double> beta(n, 0.0);
    const double step = 1.0 / grid_steps;

    for (std::size_t free_idx = 0; free_idx < n; ++free_idx) {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != free_idx) rest.push_back(i);
        }
        std::vector<int> ticks(rest.size(), 0);
        while (true) {
            double base_part = 0.0;
            double enh_part = 0.0;
            for (std::size_t m = 0; m < rest.size(); ++m) {
                const double b = ticks[m] * step;
                beta[rest[m]] = b;
                base_part += b * caps_base[rest[m]];
                enh_part += (1.0 - b) * caps_enh[rest[m]];
            }
            const double bf = (enh_part + caps_enh[free_idx] - t * base_part) /
                              (t * caps_base[free_idx] + caps_enh[free_idx]);
            if (bf >= -1e-12 && bf <= 1.0 + 1e-12) {
                beta[free_idx] = std::clamp(bf, 0.0, 1.0);
                double total = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    total += beta[i] * caps_base[i] + (1.0 - beta[i]) * caps_enh[i];
                }
                if (total > best_total) {
                    best_total = total;
                    best = beta;
                }
            }
            // odometer over the non-free coordinates
            std::size_t pos = 0;
            for (; pos < ticks.size(); ++pos) {
                if (++ticks[pos] <= grid_steps) break;
                ticks[pos] = 0;
            }
            if (pos == ticks.size()) break;
        }
    }
    if (best.empty()) throw std::runtime_error("brute_force_allocation: no feasible grid point");
    return best;
}

}  // namespace detail

Allocation bdm_allocate(const BitCapacities& caps_base, const BitCapacities& caps_enh, double t) {
    const auto beta = detail::allocate_by_ratio(caps_base.c, caps_enh.c, t);
    Allocation a;
    std::copy(beta.begin(), beta.end(), a.beta.begin());
    return a;
}

Allocation brute_force_allocate(const BitCapacities& caps_base, const BitCapacities& caps_enh,
                                double t, int grid_steps) {
    const auto beta = detail::brute_force_allocation(caps_base.c, caps_enh.c, t, grid_steps);
    Allocation a;
    std::copy(beta.begin(), beta.end(), a.beta.begin());
    return a;
}

StrategyPoint bdm_point(const StreamTargets& targets, double t, double alpha) {
    const NuQam16 c = build_constellation(alpha);
    const BitCapacities caps_base = all_bit_capacities(c, {targets.thr_base_db});
    const BitCapacities caps_enh = all_bit_capacities(c, {targets.thr_enh_db});
    return bdm_point_from_caps(caps_base, caps_enh, t, alpha);
}

CapacityTable CapacityTable::build(const StreamTargets& targets, std::span<const double> alphas) {
    if (alphas.empty()) throw std::invalid_argument("CapacityTable: empty alpha grid");
    CapacityTable table;
    table.alphas_.assign(alphas.begin(), alphas.end());
    table.base_.reserve(alphas.size());
    table.enh_.reserve(alphas.size());
    for (const double a : alphas) {
        const NuQam16 c = build_constellation(a);
        table.base_.push_back(all_bit_capacities(c, {targets.thr_base_db}));
        table.enh_.push_back(all_bit_capacities(c, {targets.thr_enh_db}));
    }
    return table;
}

StrategyPoint bdm_nu_point(const StreamTargets& targets, double t, const CapacityTable& table) {
    (void)targets;  // thresholds are already baked into the table
    check_ratio(t);
    std::optional<StrategyPoint> best;
    for (std::size_t i = 0; i < table.size(); ++i) {
        StrategyPoint p =
            bdm_point_from_caps(table.base(i), table.enh(i), t, table.alphas()[i]);
        if (!best || p.se_total > best->se_total) best = p;
    }
    best->strategy = Strategy::bdm_nonuniform;
    return *best;
}

StrategyPoint bdm_nu_point(const StreamTargets& targets, double t, std::span<const double> alphas) {
    return bdm_nu_point(targets, t, CapacityTable::build(targets, alphas));
}

std::vector<StrategyPoint> sweep(const StreamTargets& targets, std::span<const double> t_grid,
                                 std::span<const Strategy> strategies,
                                 std::span<const double> alphas) {
    if (t_grid.empty()) throw std::invalid_argument("sweep: empty t grid");
    if (strategies.empty()) throw std::invalid_argument("sweep: empty strategy set");

    const auto wants = [&](Strategy s) {
        return std::find(strategies.begin(), strategies.end(), s) != strategies.end();
    };

    const NuQam16 uniform = build_constellation(1.0);
    const BitCapacities caps_base_1 = all_bit_capacities(uniform, {targets.thr_base_db});
    const BitCapacities caps_enh_1 = all_bit_capacities(uniform, {targets.thr_enh_db});

    std::optional<CapacityTable> table;
    if (wants(Strategy::bdm_nonuniform)) table = CapacityTable::build(targets, alphas);

    std::vector<StrategyPoint> out;
    for (const double t : t_grid) {
        for (const Strategy s : kAllStrategies) {
            if (!wants(s)) continue;
            switch (s) {
                case Strategy::time_sharing:
                    out.push_back(time_sharing_point(caps_base_1.total(), caps_enh_1.total(), t));
                    break;
                case Strategy::hierarchical:
                    if (auto p = hm_point_at_t(targets, t)) out.push_back(*p);
                    break;
                case Strategy::bdm_uniform:
                    out.push_back(bdm_point_from_caps(caps_base_1, caps_enh_1, t, 1.0));
                    break;
                case Strategy::bdm_nonuniform:
                    out.push_back(bdm_nu_point(targets, t, *table));
                    break;
            }
        }
    }
    return out;
}

void write_sweep_csv(const StreamTargets& targets, std::span<const StrategyPoint> points,
                     std::ostream& os) {
    os << "strategy,g_base,g_enh,t,alpha,beta1,beta2,beta3,beta4,x,se_base,se_enh,se_total\n";
    for (const auto& p : points) {
        os << to_string(p.strategy) << ',' << csv_num(targets.g_base) << ','
           << csv_num(targets.g_enh) << ',' << csv_num(p.t_ratio) << ',';
        if (p.alpha) os << csv_num(*p.alpha);
        for (int i = 0; i < 4; ++i) {
            os << ',';
            if (p.allocation) os << csv_num(p.allocation->beta[i]);
        }
        os << ',';
        if (p.time_share_x) os << csv_num(*p.time_share_x);
        os << ',' << csv_num(p.se_base) << ',' << csv_num(p.se_enh) << ','
           << csv_num(p.se_total) << '\n';
    }
}

}  // namespace bdmqam
