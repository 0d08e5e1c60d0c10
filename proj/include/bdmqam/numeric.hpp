#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bdmqam {

// Nodes and weights of an n-point Gaussian quadrature rule.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Hermite rule for integrals of f(x) exp(-x^2) over the real line.
QuadRule gauss_hermite(std::size_t n);

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(std::size_t n);

// log(sum_i exp(v_i)), stable for widely spread exponents.
double log_sum_exp(std::span<const double> v);

// Standard normal CDF.
double normal_cdf(double z);

// Result of a seeded Monte Carlo estimator.
struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Inclusive arithmetic grid; values() yields min, min+step, ..., up to max
// (the endpoint is kept when it lands within half a step).
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
};

}  // namespace bdmqam
