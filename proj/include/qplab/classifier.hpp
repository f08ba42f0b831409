#pragma once
// Classification of sampled critical functions into the types
//   I   single transversal zero, slope floor near it
//   II  tangency profile: one derivative zero, curvature floor
//   III arctan-composed resonant profile f = atan(l^2 tan f1) - pi/2 + f2
// plus the type-III bifurcation analysis in the offset d.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qplab/errors.hpp"

namespace qplab {

struct TypeParams {
    double r = 0.1;        // interval radius scale
    double l0 = 100.0;     // large-parameter floor for type III
    double beta = 0.1;     // derivative-growth exponent in the l(x) condition
    double c_small = 1e-3; // stand-in for the small universal constant
    double C_big = 1e3;    // stand-in for the large universal constant

    // l0 * r must be >> 1; below 10 the type-III profile degenerates.
    bool scale_ok() const { return l0 * r >= 10.0; }
};

enum class FunctionKind { i_plus, i_minus, ii, iii, unclassified };

const char* to_string(FunctionKind k);

struct TypeClassification {
    FunctionKind kind = FunctionKind::unclassified;
    std::vector<double> zeros;            // zeros of f mod pi inside I
    std::optional<double> deriv_zero;
    // predicate name -> pass, in evaluation order
    std::vector<std::pair<std::string, bool>> diagnostics;

    bool passed(const std::string& name) const;
};

// A function sampled on an interval, values on a continuous real branch.
struct SampledFunction {
    std::vector<double> x;  // ascending
    std::vector<double> f;

    double center() const { return 0.5 * (x.front() + x.back()); }
    double fd1(int i) const;
    double fd2(int i) const;
};

// Evaluate every predicate of the type definitions; returns the first
// matching kind (I+, I-, II) or unclassified with the failing predicates
// listed. Type III is recognized from decomposition provenance, never from
// raw samples. Requires >= 256 samples.
TypeClassification classify(const SampledFunction& f, const TypeParams& params);

using RealFn = std::function<double(double)>;

// Continuous lift of w -> atan(l^2 tan w): F(w + pi) = F(w) + pi, monotone.
double arctan_magnified(double w, double l);

// Pointwise composition f = atan(l^2 tan f1) - pi/2 + f2, branch-continuous.
RealFn compose_type3(const RealFn& f1, const RealFn& f2, double l);
SampledFunction sample(const RealFn& f, double center, double radius, int n);

// A resonant decomposition. f1 and f2 are type I of opposite slope sign;
// f2's zero sits at offset d from f1's (which is at 0).
struct Type3Decomposition {
    RealFn f1, f2;
    double l = 0.0;
    double d = 0.0;
    double radius = 0.1;   // half-length of the interval B(0, r)
    TypeParams params;
};

struct BifurcationReport {
    int zero_count = 0;            // zeros of f mod pi on I
    double x1 = 0.0, x2 = 0.0;     // minimizing set (x1 <= x2)
    std::optional<double> x3, x4;  // derivative zeros near x1; x3 = local min
    double min_abs_value = 0.0;    // min over I of the RP^1 distance of f to 0
    double f_at_x3_plus_pi = 0.0;  // f(x3) + pi, positive per the lower bound
    bool tangential = false;
};

// Locate the minimizing set, the derivative zeros, count zeros mod pi.
// Throws NotType3 when the decomposition fails its invariants.
BifurcationReport bifurcation_analysis(const Type3Decomposition& dec);

// Empirical bifurcation offset d0: bisection on d between "no zeros" and
// "two zeros", shifting f2. The exact one-zero tangency is a measure-zero
// offset; the reports on the two sides of the bracket witness it (zeros
// collide from above, the minimum vanishes from below).
double empirical_d0(const Type3Decomposition& dec, double d_hi,
                    BifurcationReport* below = nullptr,
                    BifurcationReport* above = nullptr);

}  // namespace qplab
