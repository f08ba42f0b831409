#include "qplab/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qplab {

namespace {
constexpr double pi = std::numbers::pi;

double rp1_abs(double v) {
    double m = std::fmod(std::abs(v), pi);
    return std::min(m, pi - m);
}
}  // namespace

const char* to_string(FunctionKind k) {
    switch (k) {
        case FunctionKind::i_plus: return "I+";
        case FunctionKind::i_minus: return "I-";
        case FunctionKind::ii: return "II";
        case FunctionKind::iii: return "III";
        default: return "unclassified";
    }
}

bool TypeClassification::passed(const std::string& name) const {
    for (const auto& [k, v] : diagnostics)
        if (k == name) return v;
    return false;
}

double SampledFunction::fd1(int i) const {
    int n = static_cast<int>(x.size());
    int lo = std::max(0, i - 1), hi = std::min(n - 1, i + 1);
    return (f[hi] - f[lo]) / (x[hi] - x[lo]);
}

double SampledFunction::fd2(int i) const {
    int n = static_cast<int>(x.size());
    if (i <= 0 || i >= n - 1) return fd2(std::clamp(i, 1, n - 2));
    double hl = x[i] - x[i - 1], hr = x[i + 1] - x[i];
    return 2.0 * (hl * f[i + 1] - (hl + hr) * f[i] + hr * f[i - 1]) /
           (hl * hr * (hl + hr));
}

namespace {

// Zeros of f mod pi located by sign changes of sin(f) with linear refinement.
std::vector<double> zeros_mod_pi(const SampledFunction& sf) {
    std::vector<double> zs;
    double prev = std::sin(sf.f[0]);
    for (size_t i = 1; i < sf.x.size(); ++i) {
        double cur = std::sin(sf.f[i]);
        if (prev == 0.0) zs.push_back(sf.x[i - 1]);
        if (prev * cur < 0.0) {
            double w = prev / (prev - cur);
            zs.push_back(sf.x[i - 1] + w * (sf.x[i] - sf.x[i - 1]));
        }
        prev = cur;
    }
    return zs;
}

std::vector<double> deriv_zeros(const SampledFunction& sf) {
    std::vector<double> zs;
    int n = static_cast<int>(sf.x.size());
    double prev = sf.fd1(0);
    for (int i = 1; i < n; ++i) {
        double cur = sf.fd1(i);
        if (prev * cur < 0.0) {
            double w = prev / (prev - cur);
            zs.push_back(sf.x[i - 1] + w * (sf.x[i] - sf.x[i - 1]));
        }
        prev = cur;
    }
    return zs;
}

}  // namespace

TypeClassification classify(const SampledFunction& sf, const TypeParams& params) {
    if (sf.x.size() < 256) throw Error("classify: need at least 256 samples");

    TypeClassification out;
    auto diag = [&out](const std::string& name, bool ok) {
        out.diagnostics.emplace_back(name, ok);
        return ok;
    };

    const int n = static_cast<int>(sf.x.size());
    const double r = params.r;
    const double center = sf.center();
    const double tol_tangent = 1e-8;

    double max_f = 0.0, max_d1 = 0.0, max_d2 = 0.0, min_abs = 1e300;
    int argmin = 0;
    for (int i = 0; i < n; ++i) {
        max_f = std::max(max_f, std::abs(sf.f[i]));
        max_d1 = std::max(max_d1, std::abs(sf.fd1(i)));
        max_d2 = std::max(max_d2, std::abs(sf.fd2(i)));
        double a = rp1_abs(sf.f[i]);
        if (a < min_abs) {
            min_abs = a;
            argmin = i;
        }
    }
    bool c2_ok = std::max({max_f, max_d1, max_d2}) < params.C_big;

    std::vector<double> zs = zeros_mod_pi(sf);
    std::vector<double> dzs = deriv_zeros(sf);

    // Tangential zero: no sign change nearby but |f| dips below tolerance at
    // a derivative zero.
    bool tangential = false;
    if (min_abs < tol_tangent) {
        bool covered = false;
        for (double z : zs) covered |= std::abs(z - sf.x[argmin]) < (sf.x[1] - sf.x[0]) * 2;
        if (!covered) {
            zs.push_back(sf.x[argmin]);
            std::sort(zs.begin(), zs.end());
            tangential = true;
        }
    }
    out.zeros = zs;
    if (!dzs.empty()) out.deriv_zero = dzs.front();

    // ---- type I ----
    {
        bool one_zero = diag("i.single_zero", zs.size() == 1);
        bool in_third = diag("i.zero_in_inner_third",
                             one_zero && std::abs(zs[0] - center) <= r / 3.0);
        bool few_dz = diag("i.deriv_zero_count", dzs.size() <= 1);

        bool slope_ok = one_zero;
        bool value_ok = true;
        double slope_at_zero = 0.0;
        if (one_zero) {
            for (int i = 0; i < n; ++i) {
                if (std::abs(sf.x[i] - zs[0]) <= r / 2.0 &&
                    std::abs(sf.fd1(i)) <= r * r) {
                    slope_ok = false;
                    break;
                }
            }
            int iz = static_cast<int>(std::lower_bound(sf.x.begin(), sf.x.end(), zs[0]) -
                                      sf.x.begin());
            iz = std::clamp(iz, 0, n - 1);
            slope_at_zero = sf.fd1(iz);
            // On the opposite-slope subinterval J the value floor c r^3 holds.
            for (int i = 0; i < n; ++i) {
                if (sf.fd1(i) * slope_at_zero <= 0.0 &&
                    rp1_abs(sf.f[i]) <= params.c_small * r * r * r) {
                    value_ok = false;
                    break;
                }
            }
        }
        diag("i.slope_floor", slope_ok);
        diag("i.value_floor", value_ok);
        diag("i.c2_bound", c2_ok);

        if (one_zero && in_third && few_dz && slope_ok && value_ok && c2_ok) {
            out.kind = slope_at_zero > 0.0 ? FunctionKind::i_plus : FunctionKind::i_minus;
            return out;
        }
    }

    // ---- type II ----
    {
        bool zeros_ok = diag("ii.zero_count", zs.size() <= 2);
        bool zeros_in_half = true;
        for (double z : zs) zeros_in_half &= std::abs(z - center) <= r / 2.0;
        diag("ii.zeros_in_inner_half", zeros_in_half);

        bool one_dz = diag("ii.single_deriv_zero",
                           dzs.size() == 1 && std::abs(dzs[0] - center) <= r / 2.0);

        // One zero iff it is the derivative zero (tangency).
        bool iff_ok = true;
        if (zs.size() == 1) iff_ok = tangential && one_dz;
        diag("ii.tangency_iff", iff_ok);

        bool curv_ok = true;
        for (int i = 0; i < n; ++i) {
            if (std::abs(sf.fd1(i)) < r * r && std::abs(sf.fd2(i)) <= params.c_small) {
                curv_ok = false;
                break;
            }
        }
        diag("ii.curvature_floor", curv_ok);
        diag("ii.c2_bound", c2_ok);

        if (zeros_ok && zeros_in_half && one_dz && iff_ok && curv_ok && c2_ok) {
            out.kind = FunctionKind::ii;
            return out;
        }
    }

    out.kind = FunctionKind::unclassified;
    return out;
}

double arctan_magnified(double w, double l) {
    double k = std::round(w / pi);
    double wr = w - k * pi;
    return k * pi + std::atan(l * l * std::tan(wr));
}

RealFn compose_type3(const RealFn& f1, const RealFn& f2, double l) {
    return [f1, f2, l](double x) {
        return arctan_magnified(f1(x), l) - 0.5 * pi + f2(x);
    };
}

SampledFunction sample(const RealFn& f, double center, double radius, int n) {
    SampledFunction sf;
    sf.x.resize(n);
    sf.f.resize(n);
    for (int i = 0; i < n; ++i) {
        sf.x[i] = center - radius + 2.0 * radius * (2.0 * i + 1.0) / (2.0 * n);
        sf.f[i] = f(sf.x[i]);
    }
    return sf;
}

namespace {

// Scan grid for the composed profile: uniform plus log-spaced refinement
// around the two interesting points (the arctan wall at 0 and the partner
// zero at d), where structure lives at scale 1/l^2.
std::vector<double> bifurcation_grid(double r, double d) {
    std::vector<double> xs;
    const int uniform = 4096;
    for (int i = 0; i <= uniform; ++i) xs.push_back(-r + 2.0 * r * i / uniform);
    for (double anchor : {0.0, d}) {
        for (int k = 0; k <= 140; ++k) {
            double off = r * std::pow(10.0, -k / 10.0);
            if (anchor + off < r) xs.push_back(anchor + off);
            if (anchor - off > -r) xs.push_back(anchor - off);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

double bisect_zero(const RealFn& h, double lo, double hi, double flo) {
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = std::sin(h(mid));
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0)
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

BifurcationReport bifurcation_analysis(const Type3Decomposition& dec) {
    if (!(dec.l >= dec.params.l0))
        throw NotType3("bifurcation_analysis: l below the large-parameter floor");
    if (!dec.params.scale_ok())
        throw NotType3("bifurcation_analysis: l0 * r must be >= 10");
    const double r = dec.radius;

    // Decomposition invariants: f1, f2 of type I with opposite slope signs,
    // each on its own centered interval (f2's zero sits at the offset d).
    TypeParams p = dec.params;
    p.r = r;
    auto c1 = classify(sample(dec.f1, 0.0, r, 512), p);
    auto c2 = classify(sample(dec.f2, dec.d, r, 512), p);
    bool opposite = (c1.kind == FunctionKind::i_plus && c2.kind == FunctionKind::i_minus) ||
                    (c1.kind == FunctionKind::i_minus && c2.kind == FunctionKind::i_plus);
    if (!opposite)
        throw NotType3("bifurcation_analysis: f1, f2 must be type I of opposite slope");

    RealFn h = compose_type3(dec.f1, dec.f2, dec.l);
    std::vector<double> xs = bifurcation_grid(r, dec.d);

    BifurcationReport rep;
    std::vector<double> hv(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) hv[i] = h(xs[i]);

    // Zeros mod pi by sign changes of sin(h), refined by bisection.
    std::vector<double> zs;
    for (size_t i = 1; i < xs.size(); ++i) {
        double a = std::sin(hv[i - 1]), b = std::sin(hv[i]);
        if (a == 0.0) zs.push_back(xs[i - 1]);
        if (a * b < 0.0) zs.push_back(bisect_zero(h, xs[i - 1], xs[i], a));
    }
    rep.zero_count = static_cast<int>(zs.size());

    // Minimizing set of RP^1 |h|.
    size_t best = 0;
    double best_v = 1e300;
    for (size_t i = 0; i < xs.size(); ++i) {
        double v = rp1_abs(hv[i]);
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    rep.min_abs_value = best_v;
    if (rep.zero_count >= 2) {
        rep.x1 = zs.front();
        rep.x2 = zs.back();
        rep.min_abs_value = 0.0;
    } else if (rep.zero_count == 1) {
        rep.x1 = rep.x2 = zs.front();
        rep.min_abs_value = 0.0;
        rep.tangential = true;
    } else {
        // Golden-section refinement of the minimizer.
        double lo = xs[best > 0 ? best - 1 : best];
        double hi = xs[std::min(best + 1, xs.size() - 1)];
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = lo, b = hi;
        double x1g = b - gr * (b - a), x2g = a + gr * (b - a);
        double f1g = rp1_abs(h(x1g)), f2g = rp1_abs(h(x2g));
        for (int it = 0; it < 120; ++it) {
            if (f1g < f2g) {
                b = x2g;
                x2g = x1g;
                f2g = f1g;
                x1g = b - gr * (b - a);
                f1g = rp1_abs(h(x1g));
            } else {
                a = x1g;
                x1g = x2g;
                f1g = f2g;
                x2g = a + gr * (b - a);
                f2g = rp1_abs(h(x2g));
            }
        }
        rep.x1 = rep.x2 = 0.5 * (a + b);
        rep.min_abs_value = std::min(best_v, rp1_abs(h(rep.x1)));
        rep.tangential = rep.min_abs_value < 1e-8;
    }

    // Derivative zeros near x1 from sign changes of a centered difference.
    const double fd_h = std::max(1e-9, 1e-6 / dec.l);
    auto hp = [&h, fd_h](double x) { return (h(x + fd_h) - h(x - fd_h)) / (2.0 * fd_h); };
    std::vector<std::pair<double, double>> dz;  // (x, h''(x) sign proxy)
    for (size_t i = 1; i < xs.size(); ++i) {
        double a = hp(xs[i - 1]), b = hp(xs[i]);
        if (a * b < 0.0) {
            double lo = xs[i - 1], hi = xs[i], fa = a;
            for (int it = 0; it < 120 && hi - lo > 1e-14; ++it) {
                double mid = 0.5 * (lo + hi), fm = hp(mid);
                if (fa * fm < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    fa = fm;
                }
            }
            double x0 = 0.5 * (lo + hi);
            dz.emplace_back(x0, b - a);  // rising derivative => local min
        }
    }
    std::sort(dz.begin(), dz.end(), [&rep](const auto& u, const auto& v) {
        return std::abs(u.first - rep.x1) < std::abs(v.first - rep.x1);
    });
    for (const auto& [x0, rise] : dz) {
        if (rise > 0.0 && !rep.x3) rep.x3 = x0;
        if (rise < 0.0 && !rep.x4) rep.x4 = x0;
        if (rep.x3 && rep.x4) break;
    }
    if (rep.x3) rep.f_at_x3_plus_pi = h(*rep.x3) + pi;
    return rep;
}

double empirical_d0(const Type3Decomposition& dec, double d_hi,
                    BifurcationReport* below, BifurcationReport* above) {
    auto count_at = [&dec](double d_new) {
        Type3Decomposition shifted = dec;
        double offset = d_new - dec.d;
        RealFn f2 = dec.f2;
        shifted.f2 = [f2, offset](double x) { return f2(x - offset); };
        shifted.d = d_new;
        return bifurcation_analysis(shifted);
    };

    double lo = 0.0, hi = d_hi;
    if (count_at(lo).zero_count != 0)
        throw NotType3("empirical_d0: expected no zeros at d = 0");
    if (count_at(hi).zero_count < 2)
        throw NotType3("empirical_d0: expected two zeros at d_hi");
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (count_at(mid).zero_count >= 2)
            hi = mid;
        else
            lo = mid;
    }
    if (below) *below = count_at(lo);
    if (above) *above = count_at(hi);
    return 0.5 * (lo + hi);
}

}  // namespace qplab
