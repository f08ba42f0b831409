// Acceptance suite: one pass/fail line per criterion. Returns nonzero when
// any criterion fails. Runtime budgets are part of each criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "qplab/classifier.hpp"
#include "qplab/induction.hpp"
#include "qplab/report.hpp"
#include "qplab/spectrum.hpp"

using namespace qplab;

namespace {

constexpr double pi = std::numbers::pi;
const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int idx, const char* name, bool pass, double elapsed, double budget,
            const std::string& detail) {
    bool ok = pass && elapsed < budget;
    if (!ok) ++g_failures;
    std::printf("[%s] criterion %2d: %-28s (%.1fs / budget %.0fs)%s%s\n",
                ok ? "PASS" : "FAIL", idx, name, elapsed, budget,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

CocycleSpec polar_cos(double lambda, double t = 0.0) {
    CocycleSpec s;
    s.family = Family::polar;
    s.shape = cos_potential();
    s.lambda = lambda;
    s.t = t;
    return s;
}

CocycleSpec schrodinger_cos(double lambda, double E = 0.0) {
    CocycleSpec s;
    s.family = Family::schrodinger;
    s.shape = cos_potential();
    s.lambda = lambda;
    s.t = E;
    return s;
}

// 1. Exact g1 reproduction on a 512 x 16 grid.
void criterion_1() {
    Timer timer;
    auto spec = polar_cos(2.0);
    double worst = 0.0;
    bool u_exact = true;
    for (int jt = 0; jt < 16; ++jt) {
        double t = -0.9 + 1.8 * jt / 15.0;
        FieldRow row = sample_row(spec, golden, Arc{0.0, 0.5}, t, 512, 1, 1);
        for (size_t i = 0; i < row.x.size(); ++i) {
            u_exact &= row.u[i] == 0.0;
            double expect = std::atan(t - std::cos(2.0 * pi * row.x[i]));
            worst = std::max(worst, std::abs(row.g[i] - expect));
        }
    }
    report(1, "exact g1 reproduction", worst < 1e-9 && u_exact, timer.seconds(), 1.0,
           "max|g1 - atan(t-v)| = " + fmt_double(worst) +
               (u_exact ? ", u1 == 0 exactly" : ", u1 != 0"));
}

// 2. Spectral containment and outside certification.
void criterion_2() {
    Timer timer;
    bool contained = true;
    bool outside_ok = true;
    auto v = cos_potential();
    auto ns = default_n_list(8);
    for (double lambda : {2.0, 5.0, 10.0}) {
        double lo = -2.0 - lambda, hi = 2.0 + lambda;
        for (int p = 0; p < 8; ++p) {
            auto eigs = truncate_eigenvalues(v, lambda, golden, p / 8.0, 200);
            contained &= eigs.front() >= lo - 1e-9 && eigs.back() <= hi + 1e-9;
        }
        auto spec = schrodinger_cos(lambda);
        for (int i = 0; i < 16; ++i) {
            double off = 0.01 + 2.0 * i / 15.0;
            auto hi_cert = ueg_test(spec.with_t(hi + off), golden, 128, ns, 1e-3, 1.05);
            auto lo_cert = ueg_test(spec.with_t(lo - off), golden, 128, ns, 1e-3, 1.05);
            outside_ok &= hi_cert.status == CertStatus::certified;
            outside_ok &= lo_cert.status == CertStatus::certified;
        }
    }
    report(2, "spectral containment", contained && outside_ok, timer.seconds(), 30.0,
           contained ? (outside_ok ? "all eigenvalues inside, outside E certified"
                                   : "an outside E failed to certify")
                     : "an eigenvalue escaped the interval");
}

// 3. Johnson consistency: certified gaps avoid the truncation spectrum.
void criterion_3() {
    Timer timer;
    auto spec = schrodinger_cos(5.0);
    std::vector<double> grid(2000);
    for (int i = 0; i < 2000; ++i) grid[i] = -7.0 + 14.0 * i / 1999.0;

    ScanBudgets budgets;
    budgets.ueg_phases = 512;
    budgets.ueg_max_j = 10;
    budgets.ueg_c = 1e-3;
    budgets.ueg_rho = std::exp(0.2);
    budgets.oracle_N = 200;
    budgets.oracle_phases = 8;
    budgets.downgrade_tol = 5e-2;
    auto scan = gap_scan(spec, golden, grid, budgets);

    int gaps_inside = 0;
    for (const auto& [lo, hi] : scan.gaps)
        if (lo > -7.0 + 1e-9 && hi < 7.0 - 1e-9) ++gaps_inside;

    bool interior_clear = true;
    double worst = 1e300;
    for (size_t i = 1; i + 1 < scan.rows.size(); ++i) {
        bool interior = scan.rows[i].status == CertStatus::certified &&
                        scan.rows[i - 1].status == CertStatus::certified &&
                        scan.rows[i + 1].status == CertStatus::certified;
        if (!interior) continue;
        worst = std::min(worst, scan.rows[i].oracle_robust_dist);
        if (scan.rows[i].oracle_robust_dist < 5e-2) interior_clear = false;
    }
    report(3, "Johnson consistency", interior_clear && gaps_inside >= 3, timer.seconds(),
           600.0,
           std::to_string(gaps_inside) + " interior gaps, min interior oracle dist = " +
               fmt_double(worst));
}

// 4. Block-chaining soundness on randomized sequences.
void criterion_4() {
    Timer timer;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int passed_hypothesis = 0;
    bool sound = true, rate_ok = true;
    while (passed_hypothesis < 500) {
        bool large = passed_hypothesis % 2 == 0;
        double beta = large ? 100.0 + 200.0 * unif(rng) : 1.5 + 8.0 * unif(rng);
        double gamma_target = large ? 1.0 + 7.0 * unif(rng)
                                    : 2.0 / (beta - 1.0 / beta) * (1.05 + 2.0 * unif(rng));
        std::vector<Mat2> blocks;
        double u_prev = pi * unif(rng);
        for (int k = 0; k < 20; ++k) {
            double gap = std::atan(gamma_target * (1.0 + 0.5 * unif(rng)));
            double s = u_prev + (unif(rng) < 0.5 ? gap : -gap);
            double u = pi * unif(rng);
            double b = beta * (1.0 + 0.3 * unif(rng));
            blocks.push_back(Mat2::rotation(u) * Mat2::diagonal(b, 1.0 / b) *
                             Mat2::rotation(0.5 * pi - s));
            u_prev = u;
        }
        ChainWitness w;
        try {
            w = block_growth(std::span<const Mat2>(blocks));
        } catch (const HypothesisFailed&) {
            continue;
        }
        ++passed_hypothesis;
        // Oracle: every prefix norm beats rho^n (block_growth validates the
        // same inequality internally; re-do it here directly).
        Mat2 prod = Mat2::identity();
        double log_prod = 0.0;
        for (size_t n = 0; n < blocks.size(); ++n) {
            prod = blocks[n] * prod;
            double s = prod.op_norm();
            log_prod += std::log(s);
            prod = (1.0 / s) * prod;
            sound &= log_prod > static_cast<double>(n + 1) * w.log_rho;
        }
        if (beta >= 100.0 && w.gamma >= 1.0)
            rate_ok &= w.rho_bound() >= 0.1 * w.beta() * w.gamma;
    }
    report(4, "block chaining soundness", sound && rate_ok, timer.seconds(), 10.0,
           sound ? (rate_ok ? "500 sequences sound, rho >= 0.1 beta gamma"
                            : "rate bound rho >= 0.1 beta gamma failed")
                 : "a prefix norm fell below rho^n");
}

// 5. Type-III bifurcation across l scales.
void criterion_5() {
    Timer timer;
    bool ok = true;
    std::string detail;
    for (double l : {1e2, 1e3, 1e4}) {
        const double r = 0.1;
        TypeParams params;
        params.r = r;
        RealFn f1 = [](double x) { return x; };
        RealFn f2c = [](double x) { return -x; };
        Type3Decomposition dec{f1, f2c, l, 0.0, r, params};

        // Tangency witnessed from both sides of the bisection bracket: the
        // minimum vanishes from below, the two zeros collide from above.
        BifurcationReport below, above;
        double d0 = empirical_d0(dec, 0.06, &below, &above);
        ok &= below.zero_count == 0 && below.min_abs_value < 1e-6;
        ok &= above.zero_count >= 1 && std::abs(above.x2 - above.x1) < 1e-4;

        int prev = 0;
        bool monotone = true;
        for (int i = 0; i <= 40; ++i) {
            double d = 0.06 * i / 40.0;
            Type3Decomposition s = dec;
            s.f2 = [d](double x) { return -(x - d); };
            s.d = d;
            auto rep = bifurcation_analysis(s);
            monotone &= rep.zero_count >= prev;
            prev = rep.zero_count;
            if (rep.zero_count == 2) {
                double bound = 10.0 * std::pow(l, -0.75);
                ok &= std::abs(rep.x1) < bound;
                ok &= std::abs(rep.x2 - d) < bound;
            }
        }
        ok &= monotone;
        detail += "l=" + fmt_double(l) + " d0*l=" + fmt_double(d0 * l) + " ";
    }
    report(5, "type-III bifurcation", ok, timer.seconds(), 5.0, detail);
}

// 6. Induction estimates at level <= 2.
void criterion_6() {
    Timer timer;
    InductionConfig cfg;
    cfg.nt = 8;
    cfg.adaptive_t = false;
    auto st = induction_init(polar_cos(30.0), golden, cfg, 0.18, 0.32);
    induction_step(st);

    bool closeness_ok = true, no_halt = true;
    for (const auto& ts : st.per_t) {
        if (ts.halted) {
            no_halt = false;
            continue;
        }
        for (const auto& iv : ts.intervals)
            closeness_ok &= iv.closeness <= 1.0 / 30.0;  // lambda^{-r_0}, r_0 = 1
    }
    auto rep = verify_estimates(st);
    bool growth = rep.find("norm_growth") && rep.find("norm_growth")->pass;
    bool sign = rep.find("critical_slope_sign") && rep.find("critical_slope_sign")->pass;
    bool dgdt = rep.find("dg_dt_positive") && rep.find("dg_dt_positive")->pass;
    report(6, "induction estimates", no_halt && closeness_ok && growth && sign && dgdt,
           timer.seconds(), 300.0,
           std::string(closeness_ok ? "C0 closeness ok" : "C0 closeness failed") +
               (growth ? ", growth ok" : ", growth failed") +
               (sign ? ", sign ok" : ", sign failed") +
               (dgdt ? ", dg/dt ok" : ", dg/dt failed"));
}

// 7. Rotation-family Lyapunov bound.
void criterion_7() {
    Timer timer;
    CocycleSpec spec;
    spec.family = Family::rotation;
    spec.shape = cos_potential(0.005);
    spec.lambda = 100.0;
    double min_ratio = 1e300;
    bool ok = true;
    for (int j = 0; j < 32; ++j) {
        double theta = -0.15 + 0.3 * (j + 0.5) / 32.0;
        auto est = lyapunov(spec.with_t(theta), golden, 10000, 16);
        double ratio = est.value / std::log(100.0);
        min_ratio = std::min(min_ratio, ratio);
        ok &= est.value > 0.99 * std::log(100.0);
    }
    report(7, "Lyapunov lower bound", ok, timer.seconds(), 60.0,
           "min L/log(lambda) = " + fmt_double(min_ratio));
}

// 8. Density evidence for the rotation family.
void criterion_8() {
    Timer timer;
    CocycleSpec spec;
    spec.family = Family::rotation;
    spec.shape = cos_potential(3e-4);
    spec.lambda = 50.0;

    std::vector<double> grid(4096);
    for (int i = 0; i < 4096; ++i) grid[i] = pi * i / 4096.0;
    ScanBudgets budgets;
    budgets.ueg_phases = 512;
    budgets.ueg_max_j = 10;
    budgets.ueg_c = 1e-3;
    budgets.ueg_rho = std::exp(0.2);
    budgets.with_oracle = false;
    auto scan = gap_scan(spec, golden, grid, budgets);

    int certified = 0, refuted = 0, worst_gap = 0;
    for (const auto& r : scan.rows)
        if (r.status == CertStatus::certified) ++certified;
    const int n = static_cast<int>(scan.rows.size());
    for (int i = 0; i < n; ++i) {
        if (scan.rows[i].status == CertStatus::certified) continue;
        ++refuted;
        int dist = n;
        for (int d = 1; d < n && d < dist; ++d) {
            if ((i - d >= 0 && scan.rows[i - d].status == CertStatus::certified) ||
                (i + d < n && scan.rows[i + d].status == CertStatus::certified))
                dist = d;
        }
        worst_gap = std::max(worst_gap, dist);
    }
    bool ok = certified > 0 && worst_gap <= 2;
    report(8, "density evidence", ok, timer.seconds(), 600.0,
           std::to_string(certified) + " certified, " + std::to_string(refuted) +
               " refuted, worst distance-to-certified = " + std::to_string(worst_gap) +
               " cells (the |trace|<2 window of the constant model spans ~" +
               std::to_string(static_cast<int>(2.0 * std::asin(2.0 / 50.0) / (pi / 4096.0))) +
               " cells at this lambda and grid)");
}

// 9. Szego reduction.
void criterion_9() {
    Timer timer;
    bool conj = conjugation_check(100, 1e-10);

    CocycleSpec sz;
    sz.family = Family::szego;
    sz.shape = cos_potential(0.5);
    sz.lambda = 0.6;
    sz.alpha = golden;
    sz.t = 0.3;
    sz.szego_k = 0;
    auto sz_map = make_map(sz);

    CocycleSpec rot;
    rot.family = Family::rotation;
    double l = std::sqrt(1.6 / 0.4);
    rot.lambda = l;
    rot.t = pi * sz.t;
    auto psi = szego_angle(sz.shape, golden);
    rot.shape = {
        [psi](double x) { return pi * psi.eval(x); },
        [psi](double x) { return pi * psi.deriv1(x); },
        [psi](double x) { return pi * psi.deriv2(x); },
    };
    auto rot_map = make_map(rot);

    double worst = 0.0;
    for (int i = 0; i < 1024; ++i) {
        double x = i / 1024.0;
        worst = std::max(worst, (sz_map(x) - rot_map(x)).max_abs());
    }
    report(9, "szego reduction", conj && worst < 1e-10, timer.seconds(), 5.0,
           std::string(conj ? "conjugation ok" : "conjugation failed") +
               ", max pointwise deviation = " + fmt_double(worst));
}

// 10. Determinism of scan outputs.
void criterion_10() {
    Timer timer;
    auto spec = schrodinger_cos(5.0);
    std::vector<double> grid(64);
    for (int i = 0; i < 64; ++i) grid[i] = -7.0 + 14.0 * i / 63.0;
    ScanBudgets budgets;
    budgets.ueg_phases = 64;
    budgets.ueg_max_j = 8;
    budgets.oracle_N = 40;
    budgets.oracle_phases = 4;
    budgets.with_lyapunov = true;
    budgets.lyapunov_steps = 1000;

    std::string h = hash_hex("determinism-check");
    auto run = [&](const std::string& tag) {
        auto scan = gap_scan(spec, golden, grid, budgets);
        std::string csv = "/tmp/qplab_det_" + tag + ".csv";
        std::string js = "/tmp/qplab_det_" + tag + ".json";
        write_scan_csv(scan, csv, h);
        write_gaps_json(scan, js, h);
        std::string all;
        for (const auto* p : {&csv, &js}) {
            std::FILE* f = std::fopen(p->c_str(), "rb");
            char buf[4096];
            size_t n;
            while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) all.append(buf, n);
            std::fclose(f);
        }
        return all;
    };
    std::string a = run("a"), b = run("b");
    report(10, "determinism", !a.empty() && a == b, timer.seconds(), 120.0,
           a == b ? "byte-identical CSV/JSON" : "outputs differ");
}

}  // namespace

int main() {
    std::printf("qplab acceptance suite (%s)\n", kToolVersion);
    criterion_1();
    criterion_2();
    criterion_4();
    criterion_5();
    criterion_9();
    criterion_10();
    criterion_6();
    criterion_7();
    criterion_3();
    criterion_8();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
