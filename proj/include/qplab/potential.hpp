#pragma once
// Potential / angle functions on the circle with two derivatives, and
// admissibility validation: exactly two critical points, both non-degenerate.

#include <functional>
#include <string>
#include <vector>

#include "qplab/errors.hpp"

namespace qplab {

// A C^2 function on R/Z. Callers must keep eval/deriv1/deriv2 consistent;
// validate_derivatives spot-checks them by finite differences.
struct SmoothFunction {
    std::function<double(double)> eval;
    std::function<double(double)> deriv1;
    std::function<double(double)> deriv2;
};

// Built-in shapes.
SmoothFunction cos_potential(double amplitude = 1.0);             // a*cos(2 pi x)
SmoothFunction perturbed_cos(double eps);                         // cos(2 pi x) + eps*sin(4 pi x)
SmoothFunction constant_potential(double c);
// Periodic cubic spline through samples at x_j = j/n (values.size() = n).
// Approximate C^2: the spline's second derivative is piecewise linear.
SmoothFunction tabulated_potential(const std::vector<double>& values);
SmoothFunction tabulated_potential_csv(const std::string& path);

// x -> theta(x) - theta(x - alpha), derivatives by the chain rule.
SmoothFunction szego_angle(const SmoothFunction& theta, double alpha);

struct CriticalPoint {
    double x = 0.0;
    double value = 0.0;
    double second_derivative = 0.0;
};

struct AdmissibilityReport {
    std::vector<CriticalPoint> critical_points;
    bool admissible = false;
    double range_min = 0.0;
    double range_max = 0.0;
};

// Locate critical points by sign changes of deriv1 on a uniform grid refined
// by bisection; admissible iff exactly two, one min one max, both with
// |deriv2| above tol. Throws DegenerateCritical when a located point has
// |deriv2| < tol.
AdmissibilityReport validate_admissible(const SmoothFunction& f, int grid_size = 2048,
                                        double tol = 1e-6);

// Max relative error of deriv1/deriv2 against centered finite differences of
// the level below, over n pseudo-random points. Used by tests and by the CLI
// for user-supplied tables.
double derivative_consistency_error(const SmoothFunction& f, int n_points = 1000,
                                    double h = 1e-5, unsigned long long seed = 12345);

}  // namespace qplab
