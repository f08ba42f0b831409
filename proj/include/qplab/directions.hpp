#pragma once
// Most-contraction directions on RP^1 = R/(pi Z), the asymptotic stable and
// unstable direction fields s_n, u_n, and the critical function g_n = s_n - u_n
// lifted to a continuous real branch along each parameter row.

#include <optional>
#include <vector>

#include "qplab/cocycle.hpp"
#include "qplab/frequency.hpp"

namespace qplab {

// Angles representing lines in R^2; all arithmetic is modulo pi.
namespace rp1 {

// Representative in [0, pi).
double wrap(double a);

// Metric on RP^1: min(|a-b|, pi - |a-b|) after wrapping.
double dist(double a, double b);

// Representative of a congruent to `a` mod pi that is nearest to `near`.
double lift_near(double a, double near);

}  // namespace rp1

// Direction of the smaller right singular value of A, in [0, pi).
// Throws NearConformal when the singular values are within tol_iso
// (relative gap), where the direction is numerically meaningless.
// Off-diagonal entries of A^T A below machine noise are snapped to the exact
// axis, so diagonal inputs give exactly 0 or pi/2.
double most_contraction(const Mat2& A, double tol_iso = 1e-8);

// s from the forward product, u from the backward one; both use the norm-1
// unit factor of ScaledProduct so the computation is scale-free.
struct DirectionPair {
    double s = 0.0;
    double u = 0.0;
};
DirectionPair sn_un(const CocycleSpec& spec, double alpha, double x, double t,
                    long long n_plus, long long n_minus);

// One x-row of the field at fixed t. `g` is the continuous real lift of
// s - u (mod pi); wall[i] marks cells (i, i+1) where the raw branch jumps by
// >= pi/2 and no continuous lift exists at this resolution.
struct FieldRow {
    double t = 0.0;
    long long n_plus = 1, n_minus = 1;
    std::vector<double> x;        // circle positions
    std::vector<double> s, u, g;  // s,u in [0,pi); g lifted
    std::vector<char> wall;       // size x.size()-1
    bool has_wall = false;

    double dg_dx(int i) const;    // centered finite difference
};

// Sample one row on the arc (cell centers, endpoints excluded).
FieldRow sample_row(const CocycleSpec& spec, double alpha, const Arc& interval,
                    double t, int nx, long long n_plus, long long n_minus);

struct DirectionField {
    Arc interval;
    double t_lo = 0.0, t_hi = 0.0;
    int nx = 0, nt = 0;
    long long n_plus = 1, n_minus = 1;
    std::vector<FieldRow> rows;   // one per t

    double dg_dt(int ix, int it) const;
};

// Populate the full lattice. Requires nx >= 64, nt >= 8. Throws
// BranchAmbiguity if any adjacent jump reaches pi/2 (grid too coarse).
DirectionField build_field(const CocycleSpec& spec, double alpha, const Arc& interval,
                           double t_lo, double t_hi, int nx, int nt,
                           long long n_plus, long long n_minus);

// Dump as CSV (x, t, s, u, g) for plotting.
void write_field_csv(const DirectionField& field, const std::string& path);

}  // namespace qplab
