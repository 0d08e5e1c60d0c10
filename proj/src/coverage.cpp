#include "bdmqam/coverage.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "bdmqam/csv.hpp"

namespace bdmqam {

namespace {

constexpr std::size_t kGlNodes = 256;
constexpr double kBracketLo = -50.0;
constexpr double kBracketHi = 60.0;

const QuadRule& gl_rule() {
    static const QuadRule r = gauss_legendre(kGlNodes);
    return r;
}

}  // namespace

void CellModel::validate() const {
    if (!(sigma_db > 0.0) || !(radius_km > 0.0) || !(slope > 0.0) ||
        !std::isfinite(intercept_db)) {
        throw std::invalid_argument("CellModel: need sigma_db > 0, radius_km > 0, slope > 0");
    }
}

double coverage_of_threshold(const CellModel& m, double s_db) {
    m.validate();
    if (!std::isfinite(s_db)) throw std::invalid_argument("coverage_of_threshold: s_db not finite");
    const QuadRule& rule = gl_rule();
    const double R = m.radius_km;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = R * (rule.nodes[i] + 1.0) / 2.0;
        const double mu = m.intercept_db - m.slope * std::log10(r);
        // position density 2r/R^2, Jacobian R/2
        acc += rule.weights[i] * (R / 2.0) * (2.0 * r / (R * R)) *
               normal_cdf((mu - s_db) / m.sigma_db);
    }
    return acc;
}

double threshold_of_coverage(const CellModel& m, double g) {
    m.validate();
    if (!(g > 0.0 && g < 1.0)) {
        throw std::invalid_argument("threshold_of_coverage: coverage must be in (0, 1)");
    }
    double lo = kBracketLo;  // coverage(lo) >= g
    double hi = kBracketHi;  // coverage(hi) < g
    if (coverage_of_threshold(m, lo) < g || coverage_of_threshold(m, hi) >= g) {
        throw std::domain_error("threshold_of_coverage: target outside the [-50, 60] dB bracket");
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (coverage_of_threshold(m, mid) >= g) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

McEstimate mc_coverage(const CellModel& m, double s_db, std::int64_t draws, std::uint64_t seed) {
    m.validate();
    if (!std::isfinite(s_db)) throw std::invalid_argument("mc_coverage: s_db not finite");
    if (draws < 10'000) throw std::invalid_argument("mc_coverage: draws must be >= 10000");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> shadow(0.0, m.sigma_db);

    std::int64_t hits = 0;
    for (std::int64_t d = 0; d < draws; ++d) {
        const double r = m.radius_km * std::sqrt(unit(rng));
        const double snr = m.intercept_db - m.slope * std::log10(r) - shadow(rng);
        if (snr >= s_db) ++hits;
    }
    const double n = static_cast<double>(draws);
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

std::vector<CoveragePair> coverage_table(const CellModel& m, std::span<const double> coverages) {
    std::vector<CoveragePair> out;
    out.reserve(coverages.size());
    for (const double g : coverages) out.push_back({g, threshold_of_coverage(m, g)});
    return out;
}

void write_coverage_table_csv(const CellModel& m, std::span<const double> coverages,
                              std::ostream& os) {
    os << "coverage,threshold_db\n";
    for (const auto& [g, thr] : coverage_table(m, coverages)) {
        os << csv_num(g) << ',' << csv_num(thr) << '\n';
    }
}

void write_coverage_cdf_csv(const CellModel& m, std::span<const double> thresholds,
                            std::ostream& os) {
    os << "threshold_db,coverage\n";
    for (const double s : thresholds) {
        os << csv_num(s) << ',' << csv_num(coverage_of_threshold(m, s)) << '\n';
    }
}

}  // namespace bdmqam
