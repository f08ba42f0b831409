#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qplab/potential.hpp"

using namespace qplab;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
}

TEST_CASE("validate_admissible: cos has the two standard critical points") {
    auto rep = validate_admissible(cos_potential());
    CHECK(rep.admissible);
    REQUIRE(rep.critical_points.size() == 2);
    // {0, 1/2} with second derivatives -+ 4 pi^2.
    for (const auto& cp : rep.critical_points) {
        double d0 = std::min(std::abs(cp.x), std::abs(cp.x - 1.0));
        double dhalf = std::abs(cp.x - 0.5);
        bool at_zero = d0 < 1e-9;
        bool at_half = dhalf < 1e-9;
        CHECK((at_zero || at_half));
        if (at_zero) CHECK(cp.second_derivative == doctest::Approx(-two_pi * two_pi));
        if (at_half) CHECK(cp.second_derivative == doctest::Approx(two_pi * two_pi));
    }
    CHECK(rep.range_min == doctest::Approx(-1.0));
    CHECK(rep.range_max == doctest::Approx(1.0));
}

TEST_CASE("validate_admissible: constant potential has no critical points") {
    auto rep = validate_admissible(constant_potential(0.7));
    CHECK(rep.critical_points.empty());
    CHECK_FALSE(rep.admissible);
}

TEST_CASE("validate_admissible: cos(4 pi x) has four critical points") {
    SmoothFunction f{
        [](double x) { return std::cos(2.0 * two_pi * x); },
        [](double x) { return -2.0 * two_pi * std::sin(2.0 * two_pi * x); },
        [](double x) { return -4.0 * two_pi * two_pi * std::cos(2.0 * two_pi * x); },
    };
    auto rep = validate_admissible(f);
    CHECK(rep.critical_points.size() == 4);
    CHECK_FALSE(rep.admissible);
}

TEST_CASE("validate_admissible: flat-bottomed well trips the degeneracy error") {
    // v = (1 - cos(2 pi x))^2 has v' ~ x^3 near 0: a sign-change critical
    // point with vanishing second derivative.
    SmoothFunction f{
        [](double x) { return std::pow(1.0 - std::cos(two_pi * x), 2); },
        [](double x) {
            return 2.0 * (1.0 - std::cos(two_pi * x)) * two_pi * std::sin(two_pi * x);
        },
        [](double x) {
            double c = std::cos(two_pi * x), s = std::sin(two_pi * x);
            return 2.0 * two_pi * two_pi * (s * s + (1.0 - c) * c);
        },
    };
    CHECK_THROWS_AS(validate_admissible(f), DegenerateCritical);
}

TEST_CASE("derivative consistency: analytic families match finite differences") {
    CHECK(derivative_consistency_error(cos_potential()) < 1e-6);
    CHECK(derivative_consistency_error(perturbed_cos(0.2)) < 1e-6);
}

TEST_CASE("szego_angle: half-cos gives an admissible two-critical-point function") {
    auto theta = cos_potential(0.5);
    auto psi = szego_angle(theta, golden);
    CHECK(derivative_consistency_error(psi) < 1e-6);
    auto rep = validate_admissible(psi);
    CHECK(rep.admissible);
    CHECK(rep.critical_points.size() == 2);
}

TEST_CASE("szego_angle: constant theta and alpha = 0 give the zero function") {
    auto z1 = szego_angle(constant_potential(0.3), golden);
    auto z2 = szego_angle(cos_potential(0.5), 0.0);
    for (double x : {0.0, 0.1, 0.37, 0.9}) {
        CHECK(z1.eval(x) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(z2.eval(x) == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("tabulated potential: spline reproduces cos to interpolation accuracy") {
    const int n = 256;
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = std::cos(two_pi * i / n);
    auto f = tabulated_potential(vals);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double x = i / 1000.0;
        worst = std::max(worst, std::abs(f.eval(x) - std::cos(two_pi * x)));
    }
    CHECK(worst < 1e-7);

    auto rep = validate_admissible(f, 2048, 1e-4);
    CHECK(rep.admissible);
}
