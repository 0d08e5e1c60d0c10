#include "bdmqam/bitcap.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "bdmqam/csv.hpp"

namespace bdmqam {

namespace {

constexpr std::size_t kGhNodes = 64;

const QuadRule& gh_rule(std::size_t n) {
    static const QuadRule r64 = gauss_hermite(kGhNodes);
    if (n == kGhNodes) return r64;
    thread_local QuadRule custom;
    custom = gauss_hermite(n);
    return custom;
}

void check_bit_index(int bit_index) {
    if (bit_index < 1 || bit_index > 4) {
        throw std::invalid_argument("bit_index must be in 1..4");
    }
}

void check_snr(SnrPoint snr) {
    if (!std::isfinite(snr.esn0_db)) throw std::invalid_argument("esn0_db must be finite");
}

}  // namespace

double SnrPoint::n0() const { return std::pow(10.0, -esn0_db / 10.0); }

double BitCapacities::total() const { return c[0] + c[1] + c[2] + c[3]; }

namespace detail {

double axis_bit_capacity(const std::array<double, 4>& levels, const std::array<int, 4>& codes,
                         double noise_var, std::size_t gh_nodes) {
    const QuadRule& rule = gh_rule(gh_nodes);
    const double spread = std::sqrt(2.0 * noise_var);
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
            const double y = levels[k] + spread * rule.nodes[m];
            std::array<double, 4> e;
            for (int j = 0; j < 4; ++j) {
                const double d = y - levels[j];
                e[j] = -d * d / (2.0 * noise_var);
            }
            const double lse_all = log_sum_exp(e);
            std::array<double, 4> sub;
            std::size_t ns = 0;
            for (int j = 0; j < 4; ++j) {
                if (codes[j] == codes[k]) sub[ns++] = e[j];
            }
            const double lse_sub = log_sum_exp(std::span<const double>(sub.data(), ns));
            acc += rule.weights[m] * (lse_all - lse_sub);
        }
    }
    acc /= 4.0 * std::sqrt(std::numbers::pi) * std::numbers::ln2;
    return 1.0 - acc;
}

}  // namespace detail

double bit_capacity(const NuQam16& c, SnrPoint snr, int bit_index) {
    check_bit_index(bit_index);
    check_snr(snr);
    const auto& codes = (bit_index <= 2) ? kAxisSignBit : kAxisMagBit;
    return detail::axis_bit_capacity(c.pam_levels, codes, snr.n0() / 2.0, kGhNodes);
}

BitCapacities all_bit_capacities(const NuQam16& c, SnrPoint snr) {
    check_snr(snr);
    const double var = snr.n0() / 2.0;
    const double c_sign = detail::axis_bit_capacity(c.pam_levels, kAxisSignBit, var, kGhNodes);
    const double c_mag = detail::axis_bit_capacity(c.pam_levels, kAxisMagBit, var, kGhNodes);
    return {{c_sign, c_sign, c_mag, c_mag}};
}

McEstimate mc_bit_capacity(const NuQam16& c, SnrPoint snr, int bit_index, std::int64_t draws,
                           std::uint64_t seed) {
    check_bit_index(bit_index);
    check_snr(snr);
    if (draws < 10'000) throw std::invalid_argument("mc_bit_capacity: draws must be >= 10000");

    const double n0 = snr.n0();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 15);
    std::normal_distribution<double> noise(0.0, std::sqrt(n0 / 2.0));

    std::array<int, 16> bitval;
    for (int j = 0; j < 16; ++j) bitval[j] = label_bit(c.labels[j], bit_index);

    // Terms more than ~45 nats below their sum's maximum are lost to double
    // rounding anyway, so their exp() calls are skipped.
    constexpr double kNegligible = -45.0;

    double sum = 0.0;
    double sumsq = 0.0;
    std::array<double, 16> e;
    for (std::int64_t d = 0; d < draws; ++d) {
        const int k = pick(rng);
        const double yi = c.points[k].real() + noise(rng);
        const double yq = c.points[k].imag() + noise(rng);
        const int b = bitval[k];

        double m_all = -std::numeric_limits<double>::infinity();
        double m_sub = m_all;
        for (int j = 0; j < 16; ++j) {
            const double di = yi - c.points[j].real();
            const double dq = yq - c.points[j].imag();
            e[j] = -(di * di + dq * dq) / n0;
            if (e[j] > m_all) m_all = e[j];
            if (bitval[j] == b && e[j] > m_sub) m_sub = e[j];
        }
        double s_all = 0.0;
        double s_sub = 0.0;
        for (int j = 0; j < 16; ++j) {
            const double t = e[j] - m_all;
            if (t > kNegligible) s_all += std::exp(t);
            if (bitval[j] == b) {
                const double ts = e[j] - m_sub;
                if (ts > kNegligible) s_sub += std::exp(ts);
            }
        }
        const double lse_all = m_all + std::log(s_all);
        const double lse_sub = m_sub + std::log(s_sub);
        const double v = 1.0 - (lse_all - lse_sub) / std::numbers::ln2;
        sum += v;
        sumsq += v * v;
    }
    const double n = static_cast<double>(draws);
    const double mean = sum / n;
    const double var = (sumsq - n * mean * mean) / (n - 1.0);
    return {mean, std::sqrt(std::max(var, 0.0) / n)};
}

double subchannel_capacity(const BitCapacities& caps, const std::array<double, 4>& fractions) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (!(fractions[i] >= 0.0 && fractions[i] <= 1.0)) {
            throw std::invalid_argument("subchannel_capacity: fractions must be in [0, 1]");
        }
        acc += fractions[i] * caps.c[i];
    }
    return acc;
}

void write_capacity_curves_csv(std::span<const double> alphas, std::span<const double> esn0_grid,
                               std::ostream& os) {
    os << "esn0_db,alpha,C1,C2,C3,C4,total\n";
    for (const double a : alphas) {
        const NuQam16 c = build_constellation(a);
        for (const double s : esn0_grid) {
            const BitCapacities caps = all_bit_capacities(c, {s});
            os << csv_num(s) << ',' << csv_num(a);
            for (const double ci : caps.c) os << ',' << csv_num(ci);
            os << ',' << csv_num(caps.total()) << '\n';
        }
    }
}

}  // namespace bdmqam
