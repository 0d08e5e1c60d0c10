#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace bdmqam {

// Per-axis Gray code over the level order (-outer, -inner, +inner, +outer).
// Sign bit: 0 = positive half-plane. Magnitude bit: 0 = outer level.
inline constexpr std::array<int, 4> kAxisSignBit{1, 1, 0, 0};
inline constexpr std::array<int, 4> kAxisMagBit{0, 1, 1, 0};

// Non-uniform 16-QAM. Each axis carries the 4-PAM levels
// {-(dh+2dl), -dh, +dh, +(dh+2dl)} with dh/dl = alpha, scaled so the mean
// symbol energy is 1. alpha = 1 is the uniform 16-QAM; alpha = 0 collapses
// the two inner levels onto the axis (9 distinct positions for 16 labels).
//
// Labels are b1 b2 b3 b4: b1/b2 are the I/Q sign bits, b3/b4 the I/Q
// magnitude bits, so b1,b2 form the high-protection pair.
struct NuQam16 {
    double alpha = 1.0;
    double d_h = 0.0;
    double d_l = 0.0;
    std::array<double, 4> pam_levels{};             // -outer, -inner, +inner, +outer
    std::array<std::complex<double>, 16> points{};  // real = I, imag = Q
    std::array<std::uint8_t, 16> labels{};          // b1 in the most significant bit

    double mean_energy() const;
};

// Throws std::invalid_argument unless alpha is finite and >= 0.
NuQam16 build_constellation(double alpha);

// Label of point `index` (0..15); throws std::out_of_range otherwise.
std::uint8_t label_of(const NuQam16& c, int index);

// Value of bit b1..b4 (bit_index 1..4) of a label.
int label_bit(std::uint8_t label, int bit_index);

// "b1b2b3b4" as a 4-character string.
std::string label_bits(std::uint8_t label);

// index,b1b2b3b4,i,q rows for plotting.
void write_points_csv(const NuQam16& c, std::ostream& os);

}  // namespace bdmqam
