#pragma once
// The four cocycle families over the circle rotation, and overflow-safe
// n-step transfer-matrix products for n in Z.
//
// Families (t is the scan parameter):
//   schrodinger  A(x) = [[t - lambda*v(x), -1], [1, 0]]           (t = E)
//   polar        A(x) = diag(L(x), 1/L(x)) * R_phi,  cot phi = t - v(x)
//   rotation     A(x) = diag(lambda, 1/lambda) * R_{psi(x)} * R_t
//   szego        reduction of the SU(1,1) Verblunsky cocycle to the rotation
//                family: diag(sqrt((1+l)/(1-l)), sqrt((1-l)/(1+l))) *
//                R_{pi[theta(x)-theta(x-alpha)+k*alpha]} * R_{pi t}

#include <cstdint>
#include <functional>

#include "qplab/mat2.hpp"
#include "qplab/potential.hpp"

namespace qplab {

enum class Family { schrodinger, polar, rotation, szego };

struct CocycleSpec {
    Family family = Family::schrodinger;
    SmoothFunction shape;        // potential v, rotation angle psi, or szego theta
    double lambda = 2.0;         // coupling (for polar: the floor of lambda(x))
    double t = 0.0;              // E | E/lambda | theta | spectral angle
    double alpha = 0.0;          // used by the szego reduction only
    int szego_k = 0;             // integer winding of the Verblunsky phase

    bool lambda_is_function = false;
    SmoothFunction lambda_x;     // polar-family lambda(x), must stay > lambda

    CocycleSpec with_t(double new_t) const {
        CocycleSpec s = *this;
        s.t = new_t;
        return s;
    }
};

using CocycleMap = std::function<Mat2(double)>;

// Build the one-step map x -> A(x). Throws InvalidSpec when family invariants
// fail (polar lambda floor, szego |lambda| < 1, ...).
CocycleMap make_map(const CocycleSpec& spec);

// n-step product stored as (log of operator norm, norm-1 unit factor).
// Renormalized every step, so it never overflows and log_norm tracks
// log||A_n|| up to accumulated rounding.
struct ScaledProduct {
    double log_norm = 0.0;
    Mat2 unit = Mat2::identity();
    long long n = 0;

    Mat2 reconstruct() const { return std::exp(log_norm) * unit; }
};

// A_n(x) for any n in Z: forward products for n >= 1, identity for n = 0,
// and for n <= -1 forward products of inverse matrices at shifted phases,
// i.e. A_{-n}(x) = [A_n(x - n alpha)]^{-1}.
ScaledProduct iterate(const CocycleMap& map, double alpha, double x, long long n);

// Verifies on random SU(1,1) samples that Q* M Q is real with det 1, where
// Q is the standard unitary conjugating SU(1,1) to SL(2,R).
bool conjugation_check(int samples = 100, double tol = 1e-10,
                       unsigned long long seed = 2026);

// Worst-case deviation |Q* M Q - real SL(2,R)| for one Szego matrix with the
// given Verblunsky value f and spectral point E = exp(2 pi i t). Exposed for
// tests.
double szego_conjugation_residual(double f_re, double f_im, double t);

}  // namespace qplab
