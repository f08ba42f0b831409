#pragma once
// 2x2 real matrices with the closed-form singular-value helpers used all over
// the transfer-matrix code. No iterative SVD anywhere: for 2x2 the operator
// norm follows from (||A||_F^2, det) exactly.

#include <cmath>

namespace qplab {

struct Mat2 {
    double a = 1.0, b = 0.0;  // [[a, b],
    double c = 0.0, d = 1.0;  //  [c, d]]

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 rotation(double phi) {
        double cp = std::cos(phi), sp = std::sin(phi);
        return {cp, -sp, sp, cp};
    }
    static Mat2 diagonal(double l1, double l2) { return {l1, 0.0, 0.0, l2}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    double frob2() const { return a * a + b * b + c * c + d * d; }

    // Adjugate; equals the inverse for det = 1.
    Mat2 adjugate() const { return {d, -b, -c, a}; }

    Mat2 inverse() const {
        double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    Mat2 transpose() const { return {a, c, b, d}; }

    friend Mat2 operator*(const Mat2& L, const Mat2& R) {
        return {L.a * R.a + L.b * R.c, L.a * R.b + L.b * R.d,
                L.c * R.a + L.d * R.c, L.c * R.b + L.d * R.d};
    }
    friend Mat2 operator*(double s, const Mat2& M) {
        return {s * M.a, s * M.b, s * M.c, s * M.d};
    }
    friend Mat2 operator-(const Mat2& L, const Mat2& R) {
        return {L.a - R.a, L.b - R.b, L.c - R.c, L.d - R.d};
    }

    // Largest singular value: sigma+^2 = (s + sqrt(s^2 - 4 det^2)) / 2.
    double op_norm() const {
        double s = frob2();
        double dt = det();
        double disc = s * s - 4.0 * dt * dt;
        if (disc < 0.0) disc = 0.0;
        return std::sqrt(0.5 * (s + std::sqrt(disc)));
    }

    // Smallest singular value, computed stably as |det| / sigma+.
    double sv_min() const {
        double n = op_norm();
        return n > 0.0 ? std::abs(det()) / n : 0.0;
    }

    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }
};

}  // namespace qplab
