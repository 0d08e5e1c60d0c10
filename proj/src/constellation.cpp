#include "bdmqam/constellation.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "bdmqam/csv.hpp"

namespace bdmqam {

double NuQam16::mean_energy() const {
    double acc = 0.0;
    for (const auto& p : points) acc += std::norm(p);
    return acc / 16.0;
}

NuQam16 build_constellation(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0) {
        throw std::invalid_argument("build_constellation: alpha must be finite and nonnegative");
    }
    NuQam16 c;
    c.alpha = alpha;
    // Unit mean energy: per-axis mean square is (dh^2 + (dh+2dl)^2)/2, both
    // axes together give dh^2 + (dh+2dl)^2 = 1.
    c.d_l = 1.0 / std::sqrt(alpha * alpha + (alpha + 2.0) * (alpha + 2.0));
    c.d_h = alpha * c.d_l;
    const double outer = c.d_h + 2.0 * c.d_l;
    c.pam_levels = {-outer, -c.d_h, c.d_h, outer};

    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int idx = 4 * a + b;
            c.points[idx] = {c.pam_levels[a], c.pam_levels[b]};
            c.labels[idx] = static_cast<std::uint8_t>(
                (kAxisSignBit[a] << 3) | (kAxisSignBit[b] << 2) |
                (kAxisMagBit[a] << 1) | kAxisMagBit[b]);
        }
    }
    return c;
}

std::uint8_t label_of(const NuQam16& c, int index) {
    if (index < 0 || index > 15) throw std::out_of_range("label_of: index must be in 0..15");
    return c.labels[static_cast<std::size_t>(index)];
}

int label_bit(std::uint8_t label, int bit_index) {
    if (bit_index < 1 || bit_index > 4) {
        throw std::out_of_range("label_bit: bit_index must be in 1..4");
    }
    return (label >> (4 - bit_index)) & 1;
}

std::string label_bits(std::uint8_t label) {
    std::string s(4, '0');
    for (int i = 1; i <= 4; ++i) s[i - 1] = label_bit(label, i) ? '1' : '0';
    return s;
}

void write_points_csv(const NuQam16& c, std::ostream& os) {
    os << "index,b1b2b3b4,i,q\n";
    for (int idx = 0; idx < 16; ++idx) {
        os << idx << ',' << label_bits(c.labels[idx]) << ',' << csv_num(c.points[idx].real())
           << ',' << csv_num(c.points[idx].imag()) << '\n';
    }
}

}  // namespace bdmqam
