#include "qplab/cocycle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qplab/frequency.hpp"

namespace qplab {

namespace {

constexpr double pi = std::numbers::pi;

// Rotation part of the polar form, built from w = t - v(x) without trig:
// cos phi = w / sqrt(w^2 + 1), sin phi = 1 / sqrt(w^2 + 1).
Mat2 polar_rotation(double w) {
    double h = std::hypot(w, 1.0);
    double cp = w / h, sp = 1.0 / h;
    return {cp, -sp, sp, cp};
}

void check_polar_lambda(const CocycleSpec& spec) {
    if (!spec.lambda_is_function) {
        if (!(spec.lambda > 1.0))
            throw InvalidSpec("polar family requires lambda > 1");
        return;
    }
    // Spot-check lambda(x) > lambda and |lambda^(m)| < C*lambda on a grid.
    const int n = 256;
    const double cap = 1e3 * spec.lambda;
    for (int i = 0; i < n; ++i) {
        double x = static_cast<double>(i) / n;
        if (!(spec.lambda_x.eval(x) > spec.lambda))
            throw InvalidSpec("polar family: lambda(x) must stay above the floor");
        if (std::abs(spec.lambda_x.deriv1(x)) >= cap ||
            std::abs(spec.lambda_x.deriv2(x)) >= cap)
            throw InvalidSpec("polar family: lambda(x) derivatives too large");
    }
}

}  // namespace

CocycleMap make_map(const CocycleSpec& spec) {
    switch (spec.family) {
        case Family::schrodinger: {
            auto v = spec.shape.eval;
            double E = spec.t, lam = spec.lambda;
            return [v, E, lam](double x) -> Mat2 {
                return {E - lam * v(x), -1.0, 1.0, 0.0};
            };
        }
        case Family::polar: {
            check_polar_lambda(spec);
            auto v = spec.shape.eval;
            double t = spec.t;
            if (spec.lambda_is_function) {
                auto lx = spec.lambda_x.eval;
                return [v, t, lx](double x) -> Mat2 {
                    double l = lx(x);
                    return Mat2::diagonal(l, 1.0 / l) * polar_rotation(t - v(x));
                };
            }
            double l = spec.lambda;
            return [v, t, l](double x) -> Mat2 {
                return Mat2::diagonal(l, 1.0 / l) * polar_rotation(t - v(x));
            };
        }
        case Family::rotation: {
            if (!(spec.lambda > 1.0))
                throw InvalidSpec("rotation family requires lambda > 1");
            auto psi = spec.shape.eval;
            double l = spec.lambda, theta = spec.t;
            return [psi, l, theta](double x) -> Mat2 {
                return Mat2::diagonal(l, 1.0 / l) * Mat2::rotation(psi(x) + theta);
            };
        }
        case Family::szego: {
            if (!(spec.lambda > 0.0 && spec.lambda < 1.0))
                throw InvalidSpec("szego family requires 0 < lambda < 1");
            // Reduced SL(2,R) form of the Verblunsky cocycle with
            // f = lambda * exp(2 pi i (theta(x) + k x)).
            double l = std::sqrt((1.0 + spec.lambda) / (1.0 - spec.lambda));
            SmoothFunction psi = szego_angle(spec.shape, spec.alpha);
            auto psi_eval = psi.eval;
            double shift = pi * (static_cast<double>(spec.szego_k) * spec.alpha + spec.t);
            return [psi_eval, l, shift](double x) -> Mat2 {
                return Mat2::diagonal(l, 1.0 / l) *
                       Mat2::rotation(pi * psi_eval(x) + shift);
            };
        }
    }
    throw InvalidSpec("unknown family");
}

ScaledProduct iterate(const CocycleMap& map, double alpha, double x, long long n) {
    ScaledProduct p;
    p.n = n;
    if (n == 0) return p;

    if (n > 0) {
        for (long long j = 0; j < n; ++j) {
            Mat2 m = map(wrap_unit(x + static_cast<double>(j) * alpha)) * p.unit;
            double s = m.op_norm();
            p.unit = (1.0 / s) * m;
            p.log_norm += std::log(s);
        }
    } else {
        // A_{-n}(x) = A(x-n a)^{-1} ... A(x-a)^{-1}; matrices are SL(2,R), so
        // the inverse is the adjugate.
        for (long long j = 1; j <= -n; ++j) {
            Mat2 m = map(wrap_unit(x - static_cast<double>(j) * alpha)).adjugate() * p.unit;
            double s = m.op_norm();
            p.unit = (1.0 / s) * m;
            p.log_norm += std::log(s);
        }
    }
    return p;
}

double szego_conjugation_residual(double f_re, double f_im, double t) {
    using cplx = std::complex<double>;
    const cplx I(0.0, 1.0);
    cplx f(f_re, f_im);
    cplx sqE = std::exp(pi * I * t);
    double scale = 1.0 / std::sqrt(1.0 - std::norm(f));
    // Verblunsky one-step matrix in SU(1,1) form [[a, b], [conj b, conj a]]
    // with a = sqrt(E)*scale, b = -conj(f)/sqrt(E)*scale; |a|^2 - |b|^2 = 1.
    cplx m11 = scale * sqE;
    cplx m12 = scale * (-std::conj(f) / sqE);
    cplx m21 = std::conj(m12);
    cplx m22 = std::conj(m11);

    // Q = -1/(1+i) [[1, -i], [1, i]]; Q* M Q should be real with det 1.
    const cplx qs = -1.0 / (1.0 + I);
    cplx q11 = qs, q12 = -I * qs, q21 = qs, q22 = I * qs;
    cplx a11 = std::conj(q11) * m11 + std::conj(q21) * m21;
    cplx a12 = std::conj(q11) * m12 + std::conj(q21) * m22;
    cplx a21 = std::conj(q12) * m11 + std::conj(q22) * m21;
    cplx a22 = std::conj(q12) * m12 + std::conj(q22) * m22;
    cplx r11 = a11 * q11 + a12 * q21;
    cplx r12 = a11 * q12 + a12 * q22;
    cplx r21 = a21 * q11 + a22 * q21;
    cplx r22 = a21 * q12 + a22 * q22;

    double imag_part = std::max({std::abs(r11.imag()), std::abs(r12.imag()),
                                 std::abs(r21.imag()), std::abs(r22.imag())});
    double det_err = std::abs((r11 * r22 - r12 * r21) - 1.0);
    return std::max(imag_part, det_err);
}

bool conjugation_check(int samples, double tol, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < samples; ++i) {
        double r = 0.95 * unif(rng);           // |f| < 1
        double phase = unif(rng);
        double t = unif(rng);                  // E on the unit circle
        double fr = r * std::cos(2.0 * pi * phase);
        double fi = r * std::sin(2.0 * pi * phase);
        if (szego_conjugation_residual(fr, fi, t) > tol) return false;
    }
    return true;
}

}  // namespace qplab
