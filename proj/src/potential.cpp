#include "qplab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "qplab/frequency.hpp"

namespace qplab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

SmoothFunction cos_potential(double amplitude) {
    return {
        [amplitude](double x) { return amplitude * std::cos(two_pi * x); },
        [amplitude](double x) { return -amplitude * two_pi * std::sin(two_pi * x); },
        [amplitude](double x) { return -amplitude * two_pi * two_pi * std::cos(two_pi * x); },
    };
}

SmoothFunction perturbed_cos(double eps) {
    return {
        [eps](double x) { return std::cos(two_pi * x) + eps * std::sin(2.0 * two_pi * x); },
        [eps](double x) {
            return -two_pi * std::sin(two_pi * x) + eps * 2.0 * two_pi * std::cos(2.0 * two_pi * x);
        },
        [eps](double x) {
            return -two_pi * two_pi * std::cos(two_pi * x) -
                   eps * 4.0 * two_pi * two_pi * std::sin(2.0 * two_pi * x);
        },
    };
}

SmoothFunction constant_potential(double c) {
    return {
        [c](double) { return c; },
        [](double) { return 0.0; },
        [](double) { return 0.0; },
    };
}

SmoothFunction tabulated_potential(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    if (n < 4) throw Error("tabulated_potential: need at least 4 samples");

    // Periodic cubic spline: solve the cyclic tridiagonal system for the
    // second derivatives m_j at the knots (Sherman-Morrison on the cyclic
    // corner terms).
    const double h = 1.0 / n;
    std::vector<double> rhs(n);
    for (int j = 0; j < n; ++j) {
        double ym = values[(j + n - 1) % n];
        double y0 = values[j];
        double yp = values[(j + 1) % n];
        rhs[j] = 6.0 * (yp - 2.0 * y0 + ym) / (h * h);
    }
    // System: m_{j-1} + 4 m_j + m_{j+1} = rhs_j (cyclic).
    auto solve_tridiag = [n](std::vector<double> b, std::vector<double> d) {
        // Thomas algorithm, sub/super diagonals are all 1, main diagonal d.
        std::vector<double> c(n, 1.0);
        for (int i = 1; i < n; ++i) {
            double w = 1.0 / d[i - 1];
            d[i] -= w * c[i - 1];
            b[i] -= w * b[i - 1];
        }
        std::vector<double> x(n);
        x[n - 1] = b[n - 1] / d[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = (b[i] - c[i] * x[i + 1]) / d[i];
        return x;
    };
    std::vector<double> diag(n, 4.0);
    const double corner = 1.0, gamma = -4.0;
    std::vector<double> d1 = diag;
    d1[0] -= gamma;
    d1[n - 1] -= corner * corner / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = corner;
    auto y1 = solve_tridiag(rhs, d1);
    auto y2 = solve_tridiag(u, d1);
    double factor = (y1[0] + corner * y1[n - 1] / gamma) /
                    (1.0 + y2[0] + corner * y2[n - 1] / gamma);
    std::vector<double> m(n);
    for (int j = 0; j < n; ++j) m[j] = y1[j] - factor * y2[j];

    struct Spline {
        std::vector<double> vals, mom;
        int n;
        double h;

        void locate(double x, int& j, double& t) const {
            double y = wrap_unit(x);
            j = std::min(static_cast<int>(y / h), n - 1);
            t = y - j * h;
        }
        double eval(double x) const {
            int j;
            double t;
            locate(x, j, t);
            double y0 = vals[j], y1 = vals[(j + 1) % n];
            double m0 = mom[j], m1 = mom[(j + 1) % n];
            double ca = (m1 - m0) / (6.0 * h), cb = m0 / 2.0;
            double cc = (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0;
            return y0 + t * (cc + t * (cb + t * ca));
        }
        double deriv1(double x) const {
            int j;
            double t;
            locate(x, j, t);
            double y0 = vals[j], y1 = vals[(j + 1) % n];
            double m0 = mom[j], m1 = mom[(j + 1) % n];
            double ca = (m1 - m0) / (6.0 * h), cb = m0 / 2.0;
            double cc = (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0;
            return cc + t * (2.0 * cb + t * 3.0 * ca);
        }
        double deriv2(double x) const {
            int j;
            double t;
            locate(x, j, t);
            return mom[j] + t * (mom[(j + 1) % n] - mom[j]) / h;
        }
    };
    auto sp = std::make_shared<Spline>(Spline{values, std::move(m), n, h});
    return {
        [sp](double x) { return sp->eval(x); },
        [sp](double x) { return sp->deriv1(x); },
        [sp](double x) { return sp->deriv2(x); },
    };
}

SmoothFunction tabulated_potential_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("tabulated_potential_csv: cannot open " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        // Accept "value" or "x,value" rows; x column is assumed uniform.
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double a, b;
        if (ss >> a) {
            if (ss >> b)
                values.push_back(b);
            else
                values.push_back(a);
        }
    }
    return tabulated_potential(values);
}

SmoothFunction szego_angle(const SmoothFunction& theta, double alpha) {
    return {
        [theta, alpha](double x) { return theta.eval(x) - theta.eval(x - alpha); },
        [theta, alpha](double x) { return theta.deriv1(x) - theta.deriv1(x - alpha); },
        [theta, alpha](double x) { return theta.deriv2(x) - theta.deriv2(x - alpha); },
    };
}

AdmissibilityReport validate_admissible(const SmoothFunction& f, int grid_size, double tol) {
    if (grid_size < 1000) throw Error("validate_admissible: grid_size must be >= 1000");

    AdmissibilityReport rep;
    const int n = grid_size;
    std::vector<double> xs(n + 1), d1(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = static_cast<double>(i) / n;
        d1[i] = f.deriv1(xs[i]);
    }
    rep.range_min = f.eval(0.0);
    rep.range_max = rep.range_min;
    for (int i = 0; i < n; ++i) {
        double v = f.eval(xs[i]);
        rep.range_min = std::min(rep.range_min, v);
        rep.range_max = std::max(rep.range_max, v);
    }

    for (int i = 0; i < n; ++i) {
        double a = d1[i], b = d1[i + 1];
        double lo = xs[i], hi = xs[i + 1];
        double root;
        if (a == 0.0) {
            // Exact grid zero counts only if it is an isolated crossing;
            // plateaus (constant potential) yield no critical points.
            double before = f.deriv1(xs[i] - 1.0 / n);
            if (before * b >= 0.0) continue;
            root = lo;
        } else if (a * b < 0.0) {
            for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = f.deriv1(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (a * fm < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    a = fm;
                }
            }
            root = 0.5 * (lo + hi);
        } else {
            continue;
        }
        double dd = f.deriv2(root);
        if (std::abs(dd) < tol)
            throw DegenerateCritical("validate_admissible: |v''| below tolerance at x=" +
                                     std::to_string(root));
        double val = f.eval(root);
        rep.critical_points.push_back({root, val, dd});
        rep.range_min = std::min(rep.range_min, val);
        rep.range_max = std::max(rep.range_max, val);
    }

    int mins = 0, maxs = 0;
    for (const auto& cp : rep.critical_points) (cp.second_derivative > 0.0 ? mins : maxs)++;
    rep.admissible = rep.critical_points.size() == 2 && mins == 1 && maxs == 1;
    return rep;
}

double derivative_consistency_error(const SmoothFunction& f, int n_points, double h,
                                    unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < n_points; ++i) {
        double x = unif(rng);
        double fd1 = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
        double fd2 = (f.deriv1(x + h) - f.deriv1(x - h)) / (2.0 * h);
        double s1 = std::max({std::abs(f.deriv1(x)), std::abs(fd1), 1.0});
        double s2 = std::max({std::abs(f.deriv2(x)), std::abs(fd2), 1.0});
        worst = std::max(worst, std::abs(f.deriv1(x) - fd1) / s1);
        worst = std::max(worst, std::abs(f.deriv2(x) - fd2) / s2);
    }
    return worst;
}

}  // namespace qplab
