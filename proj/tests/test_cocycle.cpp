#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qplab/cocycle.hpp"
#include "qplab/frequency.hpp"

using namespace qplab;

namespace {
constexpr double pi = std::numbers::pi;
const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

double mat_dist(const Mat2& A, const Mat2& B) { return (A - B).max_abs(); }

CocycleSpec rotation_spec(double lambda, double theta) {
    CocycleSpec s;
    s.family = Family::rotation;
    s.shape = cos_potential(0.3);
    s.lambda = lambda;
    s.t = theta;
    return s;
}
}  // namespace

TEST_CASE("make_map: schrodinger at E = 0 with zero potential") {
    CocycleSpec s;
    s.family = Family::schrodinger;
    s.shape = constant_potential(0.0);
    s.lambda = 3.0;
    s.t = 0.0;
    auto map = make_map(s);
    Mat2 expect{0.0, -1.0, 1.0, 0.0};
    for (double x : {0.0, 0.2, 0.77}) CHECK(mat_dist(map(x), expect) < 1e-15);
}

TEST_CASE("make_map: polar rotation part is R_{pi/2} when t = v(x)") {
    // cot(phi) = t - v = 0 means phi = pi/2, rotation [[0,-1],[1,0]].
    CocycleSpec s;
    s.family = Family::polar;
    s.shape = constant_potential(0.4);
    s.lambda = 2.0;
    s.t = 0.4;
    auto map = make_map(s);
    Mat2 got = map(0.1);
    Mat2 expect = Mat2::diagonal(2.0, 0.5) * Mat2{0.0, -1.0, 1.0, 0.0};
    CHECK(mat_dist(got, expect) < 1e-15);
}

TEST_CASE("make_map: szego reduction with constant theta, k = 0") {
    CocycleSpec s;
    s.family = Family::szego;
    s.shape = constant_potential(0.0);
    s.lambda = 0.6;
    s.alpha = golden;
    s.t = 0.3;
    auto map = make_map(s);
    double l = std::sqrt(1.6 / 0.4);
    Mat2 expect = Mat2::diagonal(l, 1.0 / l) * Mat2::rotation(pi * 0.3);
    for (double x : {0.0, 0.5, 0.9}) CHECK(mat_dist(map(x), expect) < 1e-12);
}

TEST_CASE("make_map: polar family accepts a varying lambda(x) above the floor") {
    CocycleSpec s;
    s.family = Family::polar;
    s.shape = cos_potential();
    s.lambda = 2.0;
    s.t = 0.3;
    s.lambda_is_function = true;
    s.lambda_x = {
        [](double x) { return 3.0 + 0.5 * std::cos(2.0 * pi * x); },
        [](double x) { return -0.5 * 2.0 * pi * std::sin(2.0 * pi * x); },
        [](double x) { return -0.5 * 4.0 * pi * pi * std::cos(2.0 * pi * x); },
    };
    auto map = make_map(s);
    Mat2 m = map(0.2);
    CHECK(std::abs(m.det() - 1.0) < 1e-12);

    // lambda(x) dipping to the floor is rejected.
    s.lambda_x.eval = [](double x) { return 2.0 + std::cos(2.0 * pi * x); };
    CHECK_THROWS_AS(make_map(s), InvalidSpec);
}

TEST_CASE("make_map: invalid specs are rejected") {
    CocycleSpec s;
    s.family = Family::polar;
    s.shape = cos_potential();
    s.lambda = 0.5;  // polar requires lambda > 1
    CHECK_THROWS_AS(make_map(s), InvalidSpec);

    CocycleSpec z;
    z.family = Family::szego;
    z.shape = constant_potential(0.0);
    z.lambda = 1.5;  // szego requires |lambda| < 1
    CHECK_THROWS_AS(make_map(z), InvalidSpec);
}

TEST_CASE("iterate: n = 0 is the identity, n = 1 is the norm-split map value") {
    auto spec = rotation_spec(5.0, 0.2);
    auto map = make_map(spec);
    auto p0 = iterate(map, golden, 0.3, 0);
    CHECK(p0.log_norm == 0.0);
    CHECK(mat_dist(p0.unit, Mat2::identity()) == 0.0);

    auto p1 = iterate(map, golden, 0.3, 1);
    Mat2 direct = map(0.3);
    CHECK(p1.log_norm == doctest::Approx(std::log(direct.op_norm())).epsilon(1e-14));
    CHECK(mat_dist(p1.reconstruct(), direct) < 1e-12);
}

TEST_CASE("iterate: reconstruction matches direct product up to n = 30") {
    auto spec = rotation_spec(3.0, 0.4);
    auto map = make_map(spec);
    double x = 0.123;
    Mat2 direct = Mat2::identity();
    for (long long n = 1; n <= 30; ++n) {
        direct = map(wrap_unit(x + (n - 1) * golden)) * direct;
        auto p = iterate(map, golden, x, n);
        double rel = mat_dist(p.reconstruct(), direct) / direct.op_norm();
        CHECK(rel < 1e-8);
    }

    // Determinant preservation checked on a mildly expanding family, where
    // det of the reconstructed product is numerically meaningful.
    auto mild = make_map(rotation_spec(1.3, 0.4));
    for (long long n = 1; n <= 30; ++n) {
        auto p = iterate(mild, golden, x, n);
        CHECK(std::abs(p.reconstruct().det() - 1.0) < 1e-6);
    }
}

TEST_CASE("iterate: negative n matches the inverse-at-shifted-phase rule") {
    auto spec = rotation_spec(4.0, 0.15);
    auto map = make_map(spec);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        double x = unif(rng);
        long long n = 1 + static_cast<long long>(unif(rng) * 19);
        // Oracle: invert the forward product at the shifted base point.
        // det = 1, so the adjugate is the numerically stable inverse.
        Mat2 fwd = iterate(map, golden, wrap_unit(x - n * golden), n).reconstruct();
        Mat2 inv = fwd.adjugate();
        Mat2 got = iterate(map, golden, x, -n).reconstruct();
        CHECK(mat_dist(got, inv) / std::max(1.0, inv.op_norm()) < 1e-8);
    }
}

TEST_CASE("iterate: cocycle property over signed m, n") {
    auto spec = rotation_spec(2.5, 0.6);
    auto map = make_map(spec);
    double x = 0.517;
    for (long long m : {-10L, -3L, 1L, 7L, 10L}) {
        for (long long n : {-10L, -2L, 4L, 9L}) {
            Mat2 lhs = iterate(map, golden, x, m + n).reconstruct();
            Mat2 left = iterate(map, golden, wrap_unit(x + n * golden), m).reconstruct();
            Mat2 right = iterate(map, golden, x, n).reconstruct();
            Mat2 rhs = left * right;
            double scale = std::max(1.0, rhs.op_norm());
            CHECK(mat_dist(lhs, rhs) / scale < 1e-7);
        }
    }
}

TEST_CASE("iterate: log_norm is nonnegative for SL(2,R) products") {
    auto spec = rotation_spec(1.5, 0.9);
    auto map = make_map(spec);
    for (long long n : {1L, 5L, 20L, 100L, -8L, -50L}) {
        auto p = iterate(map, golden, 0.21, n);
        CHECK(p.log_norm >= -1e-12);
        CHECK(std::abs(p.unit.op_norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("conjugation_check: SU(1,1) conjugates into SL(2,R)") {
    CHECK(conjugation_check(100, 1e-10));
    // Identity (f = 0, t = 0) and a specific sample.
    CHECK(szego_conjugation_residual(0.0, 0.0, 0.0) < 1e-14);
    CHECK(szego_conjugation_residual(0.5, 0.0, 0.0) < 1e-12);
}
