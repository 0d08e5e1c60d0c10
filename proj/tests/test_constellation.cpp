#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "bdmqam/constellation.hpp"

using namespace bdmqam;

namespace {

constexpr double kTestAlphas[] = {0.0, 0.5, 1.0, 2.0, 5.0, 15.0};

}  // namespace

TEST_CASE("per-axis bit codes form a Gray sequence over the level order") {
    for (int k = 0; k + 1 < 4; ++k) {
        const int flips = (kAxisSignBit[k] != kAxisSignBit[k + 1]) +
                          (kAxisMagBit[k] != kAxisMagBit[k + 1]);
        CHECK(flips == 1);
    }
}

TEST_CASE("constellation geometry follows the level parameterization") {
    for (const double alpha : kTestAlphas) {
        CAPTURE(alpha);
        const NuQam16 c = build_constellation(alpha);
        CHECK(c.alpha == alpha);

        // d_l normalizes the mean symbol energy to 1
        const double d_l = 1.0 / std::sqrt(alpha * alpha + (alpha + 2.0) * (alpha + 2.0));
        CHECK(c.d_l == doctest::Approx(d_l).epsilon(1e-14));
        CHECK(c.d_h == doctest::Approx(alpha * d_l).epsilon(1e-14));

        CHECK(c.pam_levels[0] == doctest::Approx(-(c.d_h + 2.0 * c.d_l)).epsilon(1e-14));
        CHECK(c.pam_levels[1] == doctest::Approx(-c.d_h).epsilon(1e-14));
        CHECK(c.pam_levels[2] == doctest::Approx(c.d_h).epsilon(1e-14));
        CHECK(c.pam_levels[3] == doctest::Approx(c.d_h + 2.0 * c.d_l).epsilon(1e-14));

        CHECK(c.mean_energy() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("known special cases: uniform, alpha=2, degenerate alpha=0") {
    const NuQam16 uniform = build_constellation(1.0);
    const double s10 = std::sqrt(10.0);
    CHECK(uniform.pam_levels[0] == doctest::Approx(-3.0 / s10).epsilon(1e-14));
    CHECK(uniform.pam_levels[1] == doctest::Approx(-1.0 / s10).epsilon(1e-14));
    CHECK(uniform.pam_levels[2] == doctest::Approx(1.0 / s10).epsilon(1e-14));
    CHECK(uniform.pam_levels[3] == doctest::Approx(3.0 / s10).epsilon(1e-14));

    const NuQam16 two = build_constellation(2.0);
    const double s5 = std::sqrt(5.0);
    CHECK(two.pam_levels[2] == doctest::Approx(1.0 / s5).epsilon(1e-14));
    CHECK(two.pam_levels[3] == doctest::Approx(2.0 / s5).epsilon(1e-14));

    // alpha=0 collapses the inner levels onto the axis: 16 labels on 9 points
    const NuQam16 zero = build_constellation(0.0);
    CHECK(zero.pam_levels[1] == 0.0);
    CHECK(zero.pam_levels[2] == 0.0);
    CHECK(zero.pam_levels[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(zero.pam_levels[3] == doctest::Approx(1.0).epsilon(1e-14));
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : zero.points) distinct.insert({p.real(), p.imag()});
    CHECK(distinct.size() == 9);
}

TEST_CASE("labels are a bijection onto the 16 four-bit values") {
    for (const double alpha : kTestAlphas) {
        CAPTURE(alpha);
        const NuQam16 c = build_constellation(alpha);
        std::set<int> seen;
        for (int k = 0; k < 16; ++k) seen.insert(label_of(c, k));
        CHECK(seen.size() == 16);
        CHECK(*seen.begin() == 0);
        CHECK(*seen.rbegin() == 15);
    }
}

TEST_CASE("sign bits track the half-plane, magnitude bits the ring") {
    for (const double alpha : {0.5, 1.0, 2.0, 5.0, 15.0}) {
        CAPTURE(alpha);
        const NuQam16 c = build_constellation(alpha);
        const double outer = c.d_h + 2.0 * c.d_l;
        for (int k = 0; k < 16; ++k) {
            const std::uint8_t label = c.labels[k];
            // b1/b2: 0 on the positive I/Q half-plane
            CHECK(label_bit(label, 1) == (c.points[k].real() < 0.0 ? 1 : 0));
            CHECK(label_bit(label, 2) == (c.points[k].imag() < 0.0 ? 1 : 0));
            // b3/b4: 0 on the outer level of the axis
            const bool i_outer = std::fabs(std::fabs(c.points[k].real()) - outer) < 1e-12;
            const bool q_outer = std::fabs(std::fabs(c.points[k].imag()) - outer) < 1e-12;
            CHECK(label_bit(label, 3) == (i_outer ? 0 : 1));
            CHECK(label_bit(label, 4) == (q_outer ? 0 : 1));
        }
    }
}

TEST_CASE("lattice neighbors differ in exactly one label bit") {
    // Points are indexed I-major: index = 4*i_idx + q_idx.
    for (const double alpha : {0.5, 1.0, 2.0}) {
        CAPTURE(alpha);
        const NuQam16 c = build_constellation(alpha);
        auto hamming = [](std::uint8_t a, std::uint8_t b) {
            int n = 0;
            for (int bit = 1; bit <= 4; ++bit) n += label_bit(a, bit) != label_bit(b, bit);
            return n;
        };
        for (int i = 0; i < 4; ++i) {
            for (int q = 0; q < 4; ++q) {
                if (i + 1 < 4) CHECK(hamming(c.labels[4 * i + q], c.labels[4 * (i + 1) + q]) == 1);
                if (q + 1 < 4) CHECK(hamming(c.labels[4 * i + q], c.labels[4 * i + q + 1]) == 1);
            }
        }
    }
}

TEST_CASE("label helpers and error handling") {
    const NuQam16 c = build_constellation(1.0);
    for (int k = 0; k < 16; ++k) {
        CHECK(label_of(c, k) == c.labels[k]);
        const std::string bits = label_bits(c.labels[k]);
        REQUIRE(bits.size() == 4);
        for (int i = 0; i < 4; ++i) {
            CHECK(bits[i] == static_cast<char>('0' + label_bit(c.labels[k], i + 1)));
        }
    }
    CHECK_THROWS_AS(label_of(c, -1), std::out_of_range);
    CHECK_THROWS_AS(label_of(c, 16), std::out_of_range);

    CHECK_THROWS_AS(build_constellation(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("point CSV carries a header and all 16 rows") {
    const NuQam16 c = build_constellation(2.0);
    std::ostringstream os;
    write_points_csv(c, os);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "index,b1b2b3b4,i,q");
    int rows = 0;
    while (std::getline(is, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 16);
}
