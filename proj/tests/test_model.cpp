#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "triobose/model.hpp"

using namespace triobose;

TEST_CASE("equilibrium geometry") {
    auto eq = equilibrium({0.1});
    CHECK(eq.x_c == doctest::Approx(0.5).epsilon(1e-14));
    eq = equilibrium({100.0});
    CHECK(eq.x_c == doctest::Approx(5.0).epsilon(1e-14));
    eq = equilibrium({1.0});
    CHECK(eq.x_c == doctest::Approx(1.077217345015942).epsilon(1e-12));
    CHECK(eq.v_min == doctest::Approx(3.481191625209584).epsilon(1e-12));
    CHECK(eq.positions[0] == -eq.x_c);
    CHECK(eq.positions[1] == 0.0);
    CHECK(eq.positions[2] == eq.x_c);

    CHECK_THROWS_AS(equilibrium({0.0}), std::domain_error);
    CHECK_THROWS_AS(equilibrium({-2.0}), std::domain_error);
}

TEST_CASE("exact potential values and singularity") {
    CHECK(potential_exact(-1, 0, 1, {0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(potential_exact(-1, 0, 1, {1.0}) == doctest::Approx(3.5).epsilon(1e-15));
    CHECK_THROWS_AS(potential_exact(0.3, 0.3, 1.0, {1.0}), std::domain_error);
    CHECK_THROWS_AS(potential_exact(0.3, 1.0, 0.3, {1.0}), std::domain_error);

    // value at the classical minimum reproduces v_min
    auto eq = equilibrium({7.5});
    CHECK(potential_exact(eq.positions[0], eq.positions[1], eq.positions[2], {7.5}) ==
          doctest::Approx(eq.v_min).epsilon(1e-13));
}

TEST_CASE("one-body and pair forms of the potential agree") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        double x1 = u(rng), x2 = u(rng), x3 = u(rng);
        if (x1 == x2 || x2 == x3 || x1 == x3) continue;
        double a = potential_exact(x1, x2, x3, {2.5});
        double b = potential_exact_pair_form(x1, x2, x3, {2.5});
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("harmonic expansion at and near the minimum") {
    const TrapParams p{200.0};
    auto eq = equilibrium(p);
    CHECK(potential_harmonic(eq.positions[0], eq.positions[1], eq.positions[2], p) ==
          doctest::Approx(eq.v_min).epsilon(1e-14));

    // rigid centre-of-mass shift adds exactly (3/2) delta^2
    for (double d : {0.1, 0.7, -1.3}) {
        double v = potential_harmonic(eq.positions[0] + d, eq.positions[1] + d,
                                      eq.positions[2] + d, p);
        CHECK(v == doctest::Approx(eq.v_min + 1.5 * d * d).epsilon(1e-12));
    }

    // Taylor remainder: cubic in the displacement, so shrinking the
    // displacement by 2 shrinks the error by about 8
    std::mt19937 rng(777);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        double d1 = n(rng), d2 = n(rng), d3 = n(rng);
        double norm = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
        d1 /= 10 * norm, d2 /= 10 * norm, d3 /= 10 * norm;  // |delta| = 0.1
        auto err = [&](double s) {
            double ve = potential_exact(eq.positions[0] + s * d1, eq.positions[1] + s * d2,
                                        eq.positions[2] + s * d3, p);
            double vh = potential_harmonic(eq.positions[0] + s * d1, eq.positions[1] + s * d2,
                                           eq.positions[2] + s * d3, p);
            return std::abs(ve - vh);
        };
        double quad = potential_harmonic(eq.positions[0] + d1, eq.positions[1] + d2,
                                         eq.positions[2] + d3, p) -
                      eq.v_min;
        CHECK(err(1.0) <= 0.05 * quad);      // remainder is second-order small
        CHECK(err(0.5) <= err(1.0) / 6.0);   // and scales at least cubically
    }
}

TEST_CASE("first derivatives at the minimum cancel against displacements") {
    // dV/dx21 = dV/dx32 = -(7/15) x_c and dV/dx31 = +(7/15) x_c at the minimum,
    // which equals 7 g^(1/3)/(3*10^(2/3)) up to the sign pattern (-1)^(i+j);
    // the weighted sum over pair displacements vanishes identically.
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (double g : {0.3, 1.0, 12.0, 400.0}) {
        auto eq = equilibrium({g});
        auto dpair = [&](double d) { return d / 3.0 - g / (d * d); };
        const double c = 7.0 * std::cbrt(g) / (3.0 * std::pow(10.0, 2.0 / 3.0));
        CHECK(dpair(eq.x_c) == doctest::Approx(-c).epsilon(1e-12));
        CHECK(dpair(2.0 * eq.x_c) == doctest::Approx(c).epsilon(1e-12));
        for (int i = 0; i < 25; ++i) {
            double x1 = u(rng), x2 = u(rng), x3 = u(rng);
            double s = dpair(eq.x_c) * ((x2 - x1) - eq.x_c) + dpair(eq.x_c) * ((x3 - x2) - eq.x_c) +
                       dpair(2 * eq.x_c) * ((x3 - x1) - 2 * eq.x_c);
            CHECK(std::abs(s) <= 1e-12 * (1.0 + std::abs(dpair(eq.x_c)) * 10.0));
        }
    }
}

TEST_CASE("harmonic ground-state energy") {
    CHECK(energy_harmonic({1.0}) == doctest::Approx(6.051376486873252).epsilon(1e-13));
    CHECK(energy_harmonic({1e-9}) ==
          doctest::Approx(2.570184861663668).epsilon(1e-6));  // g -> 0+ limit
    double prev = 0.0;
    for (double g : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        double e = energy_harmonic({g});
        CHECK(e > prev);
        prev = e;
    }
    CHECK_THROWS_AS(energy_harmonic({0.0}), std::domain_error);
}
