#include "bdmqam/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bdmqam {

QuadRule gauss_hermite(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_hermite: order must be positive");
    constexpr double eps = 1e-14;
    constexpr int max_iter = 100;
    constexpr double pim4 = 0.7511255444649425;  // pi^(-1/4)

    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const std::size_t m = (n + 1) / 2;
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        // root guesses from the previous root (largest root first)
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        int it = 0;
        for (; it < max_iter; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= eps) break;
        }
        if (it >= max_iter) throw std::runtime_error("gauss_hermite: no convergence");
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

QuadRule gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: order must be positive");
    constexpr double eps = 1e-14;
    constexpr int max_iter = 100;

    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        int it = 0;
        for (; it < max_iter; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= eps) break;
        }
        if (it >= max_iter) throw std::runtime_error("gauss_legendre: no convergence");
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

double log_sum_exp(std::span<const double> v) {
    if (v.empty()) return -std::numeric_limits<double>::infinity();
    const double vmax = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(vmax)) return vmax;
    double acc = 0.0;
    for (const double x : v) acc += std::exp(x - vmax);
    return vmax + std::log(acc);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::vector<double> GridSpec::values() const {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(min) || !std::isfinite(max) ||
        max < min) {
        throw std::invalid_argument("GridSpec: need finite min <= max and step > 0");
    }
    std::vector<double> out;
    const auto count = static_cast<std::size_t>((max - min) / step + 0.5);
    out.reserve(count + 1);
    for (std::size_t i = 0;; ++i) {
        const double v = min + static_cast<double>(i) * step;
        if (v > max + 0.5 * step) break;
        out.push_back(std::min(v, max));
    }
    return out;
}

}  // namespace bdmqam
