#include "qplab/directions.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace qplab {

namespace {
constexpr double pi = std::numbers::pi;
}

namespace rp1 {

double wrap(double a) {
    double y = std::fmod(a, pi);
    if (y < 0.0) y += pi;
    if (y >= pi) y -= pi;
    return y;
}

double dist(double a, double b) {
    double d = std::abs(wrap(a) - wrap(b));
    return std::min(d, pi - d);
}

double lift_near(double a, double near) {
    double k = std::round((near - a) / pi);
    return a + k * pi;
}

}  // namespace rp1

double most_contraction(const Mat2& A, double tol_iso) {
    // Work on the norm-1 factor so the answer is scale-free (and bit-stable
    // between A and its unit factor).
    double nrm = A.op_norm();
    Mat2 M = A;
    if (std::abs(nrm - 1.0) > 1e-12) M = (1.0 / nrm) * A;

    double smin = M.sv_min();  // sigma-/sigma+ after normalization
    if (1.0 - smin <= tol_iso)
        throw NearConformal("most_contraction: singular values within tolerance");

    // A^T A = [[p, q], [q, r]]; minor axis = direction of the smaller
    // eigenvalue.
    double p = M.a * M.a + M.c * M.c;
    double r = M.b * M.b + M.d * M.d;
    double q = M.a * M.b + M.c * M.d;

    if (std::abs(q) < 1e-13 * (p + r)) {
        // Numerically diagonal: snap to the exact axis.
        return p <= r ? 0.0 : 0.5 * pi;
    }
    double angle = 0.5 * std::atan2(2.0 * q, p - r) + 0.5 * pi;
    return rp1::wrap(angle);
}

DirectionPair sn_un(const CocycleSpec& spec, double alpha, double x, double t,
                    long long n_plus, long long n_minus) {
    CocycleSpec st = spec.with_t(t);
    CocycleMap map = make_map(st);
    ScaledProduct fwd = iterate(map, alpha, x, n_plus);
    ScaledProduct bwd = iterate(map, alpha, x, -n_minus);
    return {most_contraction(fwd.unit), most_contraction(bwd.unit)};
}

double FieldRow::dg_dx(int i) const {
    int n = static_cast<int>(x.size());
    int lo = std::max(0, i - 1), hi = std::min(n - 1, i + 1);
    return (g[hi] - g[lo]) / (x[hi] - x[lo]);
}

FieldRow sample_row(const CocycleSpec& spec, double alpha, const Arc& interval,
                    double t, int nx, long long n_plus, long long n_minus) {
    FieldRow row;
    row.t = t;
    row.n_plus = n_plus;
    row.n_minus = n_minus;
    row.x.resize(nx);
    row.s.resize(nx);
    row.u.resize(nx);
    row.g.resize(nx);
    row.wall.assign(nx > 0 ? nx - 1 : 0, 0);

    CocycleSpec st = spec.with_t(t);
    CocycleMap map = make_map(st);

    const double width = 2.0 * std::min(interval.radius, 0.5);
    for (int i = 0; i < nx; ++i) {
        // Cell centers; endpoints excluded so arc boundaries (often exact
        // derivative zeros) never land on a sample.
        double xi = interval.center - std::min(interval.radius, 0.5) +
                    width * (2.0 * i + 1.0) / (2.0 * nx);
        row.x[i] = xi;
        ScaledProduct fwd = iterate(map, alpha, wrap_unit(xi), n_plus);
        ScaledProduct bwd = iterate(map, alpha, wrap_unit(xi), -n_minus);
        row.s[i] = most_contraction(fwd.unit);
        row.u[i] = most_contraction(bwd.unit);
    }

    // Lift g = s - u to a continuous real branch: base representative nearest
    // to 0, then nearest-branch continuation along the row.
    for (int i = 0; i < nx; ++i) {
        double raw = rp1::wrap(row.s[i] - row.u[i]);
        if (i == 0) {
            row.g[0] = raw > 0.5 * pi ? raw - pi : raw;
        } else {
            row.g[i] = rp1::lift_near(raw, row.g[i - 1]);
            double jump = std::abs(row.g[i] - row.g[i - 1]);
            if (jump >= 0.25 * pi) {
                row.wall[i - 1] = 1;
                row.has_wall = true;
            }
        }
    }
    return row;
}

double DirectionField::dg_dt(int ix, int it) const {
    int lo = std::max(0, it - 1), hi = std::min(nt - 1, it + 1);
    // Rows may carry different branch offsets; compare mod-pi lifts near the
    // center row's value.
    double base = rows[it].g[ix];
    double glo = rp1::lift_near(rp1::wrap(rows[lo].g[ix]), base);
    double ghi = rp1::lift_near(rp1::wrap(rows[hi].g[ix]), base);
    return (ghi - glo) / (rows[hi].t - rows[lo].t);
}

DirectionField build_field(const CocycleSpec& spec, double alpha, const Arc& interval,
                           double t_lo, double t_hi, int nx, int nt,
                           long long n_plus, long long n_minus) {
    if (nx < 64 || nt < 8) throw Error("build_field: grid must be at least 64 x 8");

    DirectionField f;
    f.interval = interval;
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    f.nx = nx;
    f.nt = nt;
    f.n_plus = n_plus;
    f.n_minus = n_minus;
    f.rows.reserve(nt);
    for (int j = 0; j < nt; ++j) {
        double t = nt == 1 ? t_lo : t_lo + (t_hi - t_lo) * j / (nt - 1.0);
        FieldRow row = sample_row(spec, alpha, interval, t, nx, n_plus, n_minus);
        if (row.has_wall)
            throw BranchAmbiguity("build_field: adjacent samples jump >= pi/2");
        f.rows.push_back(std::move(row));
    }
    return f;
}

void write_field_csv(const DirectionField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("write_field_csv: cannot open " + path);
    out << "x,t,s,u,g\n";
    char buf[160];
    for (const auto& row : field.rows) {
        for (size_t i = 0; i < row.x.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", row.x[i],
                          row.t, row.s[i], row.u[i], row.g[i]);
            out << buf;
        }
    }
}

}  // namespace qplab
