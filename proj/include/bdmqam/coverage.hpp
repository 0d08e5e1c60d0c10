#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bdmqam/numeric.hpp"

namespace bdmqam {

// Receiver SNR over a circular cell: SNR_dB(r) = intercept_db
// - slope*log10(r) - X with X ~ N(0, sigma_db^2), receivers uniform over the
// disk of radius radius_km. Defaults give the urban macro-cell profile used
// throughout the tool.
struct CellModel {
    double intercept_db = 10.81;
    double slope = 37.6;  // dB per decade of km
    double sigma_db = 8.0;
    double radius_km = 0.75;

    void validate() const;  // throws std::invalid_argument on bad parameters
};

struct CoveragePair {
    double coverage;
    double threshold_db;
};

// Fraction of receivers whose SNR exceeds s_db, by radial Gauss-Legendre
// quadrature over the shadowing-averaged CDF. Strictly decreasing in s_db.
double coverage_of_threshold(const CellModel& m, double s_db);

// Inverse of coverage_of_threshold on g in (0, 1), by bisection over
// [-50, 60] dB.
double threshold_of_coverage(const CellModel& m, double g);

// Seeded Monte Carlo estimate of coverage_of_threshold (uniform position in
// the disk plus Gaussian shadowing). draws must be >= 10^4.
McEstimate mc_coverage(const CellModel& m, double s_db, std::int64_t draws, std::uint64_t seed);

std::vector<CoveragePair> coverage_table(const CellModel& m, std::span<const double> coverages);

// coverage,threshold_db rows.
void write_coverage_table_csv(const CellModel& m, std::span<const double> coverages,
                              std::ostream& os);

// threshold_db,coverage rows over the given thresholds.
void write_coverage_cdf_csv(const CellModel& m, std::span<const double> thresholds,
                            std::ostream& os);

}  // namespace bdmqam
