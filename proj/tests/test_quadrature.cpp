#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "bdmqam/numeric.hpp"

using namespace bdmqam;

namespace {

double gh_moment(const QuadRule& r, int power) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        acc += r.weights[i] * std::pow(r.nodes[i], power);
    }
    return acc;
}

}  // namespace

TEST_CASE("Gauss-Hermite small orders match the closed forms") {
    const QuadRule r1 = gauss_hermite(1);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r1.weights[0] == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));

    const QuadRule r2 = gauss_hermite(2);
    REQUIRE(r2.nodes.size() == 2);
    CHECK(std::fabs(r2.nodes[0]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Hermite 64-point rule integrates Gaussian moments") {
    const QuadRule r = gauss_hermite(64);
    REQUIRE(r.nodes.size() == 64);
    const double spi = std::sqrt(std::numbers::pi);

    CHECK(gh_moment(r, 0) == doctest::Approx(spi).epsilon(1e-13));
    CHECK(gh_moment(r, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(gh_moment(r, 2) == doctest::Approx(spi / 2.0).epsilon(1e-13));
    CHECK(gh_moment(r, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(gh_moment(r, 4) == doctest::Approx(3.0 * spi / 4.0).epsilon(1e-13));

    // integral of x^20 exp(-x^2) = 19!! sqrt(pi) / 2^10
    const double m20 = 654729075.0 * spi / 1024.0;
    CHECK(gh_moment(r, 20) == doctest::Approx(m20).epsilon(1e-12));
}

TEST_CASE("Gauss-Hermite nodes are symmetric with positive weights") {
    const QuadRule r = gauss_hermite(64);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        CHECK(r.weights[i] > 0.0);
        CHECK(r.nodes[i] == doctest::Approx(-r.nodes[r.nodes.size() - 1 - i]).epsilon(1e-13));
    }
}

TEST_CASE("Gauss-Legendre rules integrate polynomials and cos") {
    const QuadRule r2 = gauss_legendre(2);
    REQUIRE(r2.nodes.size() == 2);
    CHECK(std::fabs(r2.nodes[0]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

    const QuadRule r = gauss_legendre(256);
    REQUIRE(r.nodes.size() == 256);
    double w_sum = 0.0, x2 = 0.0, x10 = 0.0, cosx = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        w_sum += r.weights[i];
        x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
        x10 += r.weights[i] * std::pow(r.nodes[i], 10);
        cosx += r.weights[i] * std::cos(r.nodes[i]);
    }
    // tolerances allow rounding accumulated over the 256-term sums
    CHECK(w_sum == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(x10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
    CHECK(cosx == doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-13));
}

TEST_CASE("log_sum_exp is exact on small inputs and stable on extreme ones") {
    const std::vector<double> two_zeros{0.0, 0.0};
    CHECK(log_sum_exp(two_zeros) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));

    const std::vector<double> single{-3.25};
    CHECK(log_sum_exp(single) == doctest::Approx(-3.25).epsilon(1e-15));

    // naive evaluation would overflow
    const std::vector<double> huge{1000.0, 1000.0 + std::log(3.0)};
    CHECK(log_sum_exp(huge) == doctest::Approx(1000.0 + std::log(4.0)).epsilon(1e-14));

    const std::vector<double> tiny{-1000.0, -1001.0};
    CHECK(log_sum_exp(tiny) ==
          doctest::Approx(-1000.0 + std::log1p(std::exp(-1.0))).epsilon(1e-14));
}

TEST_CASE("normal_cdf matches reference values") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
    CHECK(normal_cdf(-1.0) == doctest::Approx(1.0 - 0.841344746068543).epsilon(1e-12));
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(normal_cdf(-8.0) == doctest::Approx(6.22096057427178e-16).epsilon(1e-9));
    CHECK(normal_cdf(8.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("GridSpec produces inclusive, exactly terminated grids") {
    const GridSpec t{0.0, 5.0, 0.05};
    const auto tv = t.values();
    REQUIRE(tv.size() == 101);
    CHECK(tv.front() == 0.0);
    CHECK(tv.back() == 5.0);  // endpoint must be hit exactly
    CHECK(tv[20] == doctest::Approx(1.0).epsilon(1e-15));

    const GridSpec a{0.0, 15.0, 0.02};
    const auto av = a.values();
    REQUIRE(av.size() == 751);
    CHECK(av.back() == 15.0);
    CHECK(av[50] == 1.0);  // 50 * 0.02 is exact in binary floating point

    const GridSpec odd{0.0, 1.0, 0.3};
    const auto ov = odd.values();
    REQUIRE(ov.size() == 4);  // 0, 0.3, 0.6, 0.9; 1.2 overshoots by more than step/2
    CHECK(ov.back() == doctest::Approx(0.9).epsilon(1e-15));

    const GridSpec single{2.0, 2.0, 1.0};
    const auto sv = single.values();
    REQUIRE(sv.size() == 1);
    CHECK(sv[0] == 2.0);
}
