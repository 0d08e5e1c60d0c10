#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>

#include "bdmqam/constellation.hpp"
#include "bdmqam/numeric.hpp"

namespace bdmqam {

// Operating point E_s/N_0 in dB. Symbol energy is fixed to 1, so the complex
// noise density is N0 = 10^(-esn0_db/10), N0/2 per dimension.
struct SnrPoint {
    double esn0_db = 0.0;

    double n0() const;
};

// Mutual information of the four binary sub-channels, bits per channel use.
struct BitCapacities {
    std::array<double, 4> c{};  // c[i-1] is the capacity of bit i

    double total() const;
};

// Capacity of the binary-input channel carrying bit `bit_index` (1..4) of
// the mapping, over complex AWGN with equiprobable symbols. Deterministic
// Gauss-Hermite evaluation; the product labeling reduces each bit to a
// one-dimensional 4-level computation with per-dimension variance N0/2.
double bit_capacity(const NuQam16& c, SnrPoint snr, int bit_index);

// All four bit capacities. With the product Gray labeling C1 == C2 and
// C3 == C4 exactly.
BitCapacities all_bit_capacities(const NuQam16& c, SnrPoint snr);

// Seeded Monte Carlo estimator of the same quantity, run on the full
// two-dimensional constellation (no product factorization), as an
// independent cross-check of bit_capacity. draws must be >= 10^4.
McEstimate mc_bit_capacity(const NuQam16& c, SnrPoint snr, int bit_index,
                           std::int64_t draws, std::uint64_t seed);

// Capacity of a sub-channel assigned the given fraction of each bit index:
// sum_i fractions[i] * caps.c[i]. Each fraction must lie in [0, 1].
double subchannel_capacity(const BitCapacities& caps, const std::array<double, 4>& fractions);

// esn0_db,alpha,C1,C2,C3,C4,total rows, one curve per alpha.
void write_capacity_curves_csv(std::span<const double> alphas, std::span<const double> esn0_grid,
                               std::ostream& os);

namespace detail {

// One-dimensional 4-level bit channel with an explicit quadrature order;
// axis_codes gives the bit value carried by each level.
double axis_bit_capacity(const std::array<double, 4>& levels, const std::array<int, 4>& codes,
                         double noise_var, std::size_t gh_nodes);

}  // namespace detail

}  // namespace bdmqam
