#include "qplab/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "qplab/induction.hpp"

namespace qplab {

namespace {
constexpr double pi = std::numbers::pi;

// Count of eigenvalues strictly below mu via the Sturm sequence of the
// shifted LDL^T recurrence; off-diagonal squares are passed in.
int sturm_count(std::span<const double> diag, std::span<const double> off2, double mu) {
    int count = 0;
    double d = 1.0;
    const double tiny = 1e-300;
    for (size_t i = 0; i < diag.size(); ++i) {
        double off = i == 0 ? 0.0 : off2[i - 1];
        d = diag[i] - mu - off / d;
        if (d == 0.0) d = tiny;
        if (d < 0.0) ++count;
    }
    return count;
}
}  // namespace

std::vector<double> tridiag_eigenvalues(std::span<const double> diag,
                                        std::span<const double> offdiag, double abs_tol) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) return {};
    if (offdiag.size() + 1 != diag.size())
        throw Error("tridiag_eigenvalues: offdiag must have n-1 entries");

    std::vector<double> off2(offdiag.size());
    for (size_t i = 0; i < offdiag.size(); ++i) off2[i] = offdiag[i] * offdiag[i];

    // Gershgorin bounds.
    double lo = diag[0], hi = diag[0];
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                   (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    lo -= abs_tol;
    hi += abs_tol;

    std::vector<double> eig(n);
    for (int k = 0; k < n; ++k) {
        // k-th smallest eigenvalue: bisection on the count.
        double a = lo, b = hi;
        while (b - a > abs_tol) {
            double mid = 0.5 * (a + b);
            if (sturm_count(diag, off2, mid) > k)
                b = mid;
            else
                a = mid;
        }
        eig[k] = 0.5 * (a + b);
    }
    return eig;
}

std::vector<double> truncate_eigenvalues(const SmoothFunction& v, double lambda,
                                         double alpha, double x, int N, double abs_tol) {
    if (N < 1) throw Error("truncate_eigenvalues: N must be >= 1");
    const int n = 2 * N + 1;
    std::vector<double> diag(n), off(n - 1, 1.0);
    for (int j = 0; j < n; ++j)
        diag[j] = lambda * v.eval(wrap_unit(x + static_cast<double>(j - N) * alpha));
    return tridiag_eigenvalues(diag, off, abs_tol);
}

LyapunovEstimate lyapunov(const CocycleSpec& spec, double alpha, long long n_steps,
                          int x_samples, long long burn_in) {
    if (n_steps <= burn_in)
        throw Error("lyapunov: n_steps must exceed the burn-in");

    CocycleMap map = make_map(spec);
    LyapunovEstimate est;
    est.n_steps = n_steps;
    est.x_samples = x_samples;

    std::vector<double> vals(x_samples);
    for (int i = 0; i < x_samples; ++i) {
        double x = static_cast<double>(i) / x_samples;
        ScaledProduct p;
        double log_at_burn = 0.0;
        for (long long n = 1; n <= n_steps; ++n) {
            Mat2 m = map(wrap_unit(x + (n - 1) * alpha)) * p.unit;
            double s = m.op_norm();
            p.unit = (1.0 / s) * m;
            p.log_norm += std::log(s);
            if (n == burn_in) log_at_burn = p.log_norm;
        }
        vals[i] = (p.log_norm - log_at_burn) / static_cast<double>(n_steps - burn_in);
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= x_samples;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    est.value = mean;
    est.std_error = x_samples > 1 ? std::sqrt(var / (x_samples - 1.0) / x_samples) : 0.0;
    return est;
}

GapScanResult gap_scan(const CocycleSpec& base, double alpha,
                       std::span<const double> parameter_grid, const ScanBudgets& budgets) {
    GapScanResult out;
    out.budgets = budgets;
    out.rows.resize(parameter_grid.size());

    // Oracle eigenvalues once per phase.
    std::vector<std::vector<double>> oracle;
    if (budgets.with_oracle && base.family == Family::schrodinger) {
        for (int p = 0; p < budgets.oracle_phases; ++p) {
            double x = static_cast<double>(p) / budgets.oracle_phases;
            oracle.push_back(
                truncate_eigenvalues(base.shape, base.lambda, alpha, x, budgets.oracle_N));
        }
    }
    auto nearest = [](const std::vector<double>& sorted, double e) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
        double best = 1e300;
        if (it != sorted.end()) best = std::min(best, std::abs(*it - e));
        if (it != sorted.begin()) best = std::min(best, std::abs(*(it - 1) - e));
        return best;
    };

    auto n_list = default_n_list(budgets.ueg_max_j);
    std::atomic<size_t> cursor{0};
    int jobs = budgets.jobs > 0
                   ? budgets.jobs
                   : std::max(1u, std::thread::hardware_concurrency());
    auto worker = [&]() {
        for (;;) {
            size_t idx = cursor.fetch_add(1);
            if (idx >= parameter_grid.size()) return;
            double param = parameter_grid[idx];
            GapScanRow row;
            row.param = param;
            CocycleSpec spec = base.with_t(param);
            UHCertificate cert = ueg_test(spec, alpha, budgets.ueg_phases, n_list,
                                          budgets.ueg_c, budgets.ueg_rho);
            row.status = cert.status;
            if (budgets.with_separation) {
                int phases = budgets.sep_phases > 0 ? budgets.sep_phases
                                                    : budgets.ueg_phases;
                SeparationProbe probe =
                    direction_separation(spec, alpha, budgets.sep_n, phases);
                row.direction_gap = probe.min_gap;
                if (row.status == CertStatus::certified && !probe.separated)
                    row.status = CertStatus::refuted_at_budget;
            }
            if (!oracle.empty()) {
                double mind = 1e300, robust = 0.0;
                for (const auto& eigs : oracle) {
                    double d = nearest(eigs, param);
                    mind = std::min(mind, d);
                    robust = std::max(robust, d);
                }
                row.oracle_min_dist = mind;
                row.oracle_robust_dist = robust;
                if (row.status == CertStatus::certified &&
                    robust < budgets.downgrade_tol) {
                    row.status = CertStatus::inconclusive;
                    row.downgraded = true;
                }
            }
            if (budgets.with_lyapunov)
                row.lyap = lyapunov(spec, alpha, budgets.lyapunov_steps,
                                    budgets.lyapunov_phases)
                               .value;
            out.rows[idx] = row;
        }
    };
    if (jobs <= 1 || parameter_grid.size() < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Collate maximal certified runs into half-open gaps.
    size_t i = 0;
    while (i < out.rows.size()) {
        if (out.rows[i].status == CertStatus::certified) {
            size_t j = i;
            while (j + 1 < out.rows.size() &&
                   out.rows[j + 1].status == CertStatus::certified)
                ++j;
            double hi = j + 1 < out.rows.size() ? out.rows[j + 1].param : out.rows[j].param;
            out.gaps.emplace_back(out.rows[i].param, hi);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

std::vector<RhoTrackRow> rho_track(const InductionState& state) {
    std::vector<RhoTrackRow> rows;
    const double log_lambda = std::log(state.spec.lambda);

    for (size_t idx = 0; idx < state.per_t.size(); ++idx) {
        const auto& ts = state.per_t[idx];
        if (ts.halted) continue;
        RhoTrackRow row;
        row.t = ts.t;

        double c1 = ts.intervals[0].center;
        double c2 = ts.intervals[1].center;
        double sep = wrap_unit(c1 - c2);
        if (sep >= 0.5) sep -= 1.0;

        bool orbit_identified = ts.merged;
        if (!orbit_identified && ts.resonance_k) {
            double off = std::abs(wrap_unit(c1 + *ts.resonance_k * state.alpha - c2));
            off = std::min(off, 1.0 - off);
            // Identified when the chosen minimizers sit on the same k-orbit
            // at the resolution of their location intervals.
            double tol = 2.0 * std::max(ts.intervals[0].cls_radius,
                                        state.interval_radius(state.level));
            orbit_identified = off <= tol;
        }
        row.resonant_branch = orbit_identified;
        row.rho = orbit_identified ? eval_g(state, ts, 0, c1) : sep;

        long long r_prev =
            ts.intervals[0].r_plus > 0
                ? std::min(ts.intervals[0].r_plus, ts.intervals[0].r_minus)
                : 1;
        double g_at_c1 = std::abs(eval_g(state, ts, 0, c1));
        row.large_gap_trigger =
            std::log(std::max(g_at_c1, 1e-300)) >
            -0.1 * static_cast<double>(r_prev) * log_lambda;
        row.near_zero = std::abs(row.rho) < 1e-6;
        rows.push_back(row);
    }

    // Finite-difference slope over the (possibly refined) t-grid.
    for (size_t k = 0; k < rows.size(); ++k) {
        size_t lo = k > 0 ? k - 1 : k;
        size_t hi = k + 1 < rows.size() ? k + 1 : k;
        if (hi == lo) continue;
        rows[k].slope = (rows[hi].rho - rows[lo].rho) / (rows[hi].t - rows[lo].t);
    }
    return rows;
}

}  // namespace qplab
