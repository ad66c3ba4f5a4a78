#include <doctest.h>

#include <random>

#include "nhirota/phase.hpp"

using namespace nh;

TEST_CASE("theta values") {
    CHECK(theta(0.0, 1.3, -0.4, 2.0) == cplx(0.0));
    CHECK(std::abs(theta(0.5, -3.0, 0.0, 1.0) - (-1.0)) < 1e-15);
    CHECK(theta(0.37, -2.0, 0.5, 1.5).imag() == 0.0);
}

TEST_CASE("stationary points") {
    const PhaseGeometry g = stationary_points(-3.0, 0.0, 1.0);
    CHECK(g.z1 == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(g.z2 == doctest::Approx(0.5).epsilon(1e-15));
    const PhaseGeometry h = stationary_points(0.0, 1.0, 1.0);
    CHECK(h.z1 == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(h.z2) < 1e-15);
    CHECK_THROWS_AS(stationary_points(1.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(stationary_points(-1.0, 0.0, 0.0), ConfigError);
}

TEST_CASE("sign of Re(2 i theta)") {
    const PhaseGeometry g = stationary_points(-3.0, 0.0, 1.0);
    CHECK(sign_re_itheta(0.3, g) == 0);
    CHECK(sign_re_itheta({0.0, 0.2}, g) == 1);
    CHECK(sign_re_itheta({1.0, 0.2}, g) == -1);
}

TEST_CASE("stationary phase value") {
    const PhaseGeometry g = stationary_points(-3.0, 0.0, 1.0);
    CHECK(stationary_phase_value(g, 1.0, 2) == doctest::Approx(-2.0).epsilon(1e-14));
    const PhaseGeometry h = stationary_points(0.0, 1.0, 1.0);
    CHECK(std::abs(stationary_phase_value(h, 3.0, 2)) < 1e-15);
    const double v = stationary_phase_value(h, 1.0, 1);
    CHECK(std::abs(v - 2.0 * theta(h.z1, 0.0, 1.0, 1.0).real()) < 1e-10);
}

TEST_CASE("random geometries: roots, ordering, Vieta, phase identity") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> ua(-3.0, 3.0), ub(0.1, 3.0), ux(-6.0, 6.0), ut(0.5, 50.0);
    int n = 0;
    while (n < 1000) {
        const double a = ua(gen), b = (n % 2 ? -1.0 : 1.0) * ub(gen), xi = ux(gen);
        if (a * a - 3.0 * b * xi <= 1e-6) continue;
        const PhaseGeometry g = stationary_points(xi, a, b);
        CHECK(g.z1 < g.z2);
        for (int j = 1; j <= 2; ++j) CHECK(std::abs(theta_prime(g.zj(j), xi, a, b)) < 1e-10 * (1.0 + std::abs(xi)));
        CHECK(std::abs(g.z1 + g.z2 + a / (3.0 * b)) < 1e-10);
        CHECK(std::abs(g.z1 * g.z2 - xi / (12.0 * b)) < 1e-10);
        CHECK_NOTHROW(stationary_phase_value(g, ut(gen), 1 + n % 2));
        ++n;
    }
}
