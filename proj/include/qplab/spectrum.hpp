#pragma once
// Independent spectral ground truth: Sturm-count eigenvalues of finite
// operator truncations, Lyapunov exponents, parameter scans collating
// certified gaps, and the rho_i(t) critical-distance tracker.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qplab/certifier.hpp"
#include "qplab/cocycle.hpp"

namespace qplab {

// All 2N+1 eigenvalues (ascending) of the symmetric tridiagonal truncation
//   (H u)_n = u_{n+1} + u_{n-1} + lambda v(x + n alpha) u_n,  |n| <= N,
// with zero boundary conditions, by Sturm-count bisection to abs_tol.
std::vector<double> truncate_eigenvalues(const SmoothFunction& v, double lambda,
                                         double alpha, double x, int N,
                                         double abs_tol = 1e-10);

// Generic symmetric tridiagonal solver (unit off-diagonals are a special
// case); exposed for tests.
std::vector<double> tridiag_eigenvalues(std::span<const double> diag,
                                        std::span<const double> offdiag,
                                        double abs_tol = 1e-10);

struct LyapunovEstimate {
    double value = 0.0;      // mean of log||A_n(x)|| / n over phases
    double std_error = 0.0;  // standard error across phases
    long long n_steps = 0;
    int x_samples = 0;
};

// Phase-averaged growth rate with the first burn_in steps discarded.
LyapunovEstimate lyapunov(const CocycleSpec& spec, double alpha, long long n_steps,
                          int x_samples, long long burn_in = 100);

struct ScanBudgets {
    int ueg_phases = 512;
    int ueg_max_j = 10;        // n_list = {+-2^j : j <= ueg_max_j}
    double ueg_c = 1e-3;
    double ueg_rho = 1.2214;   // e^0.2
    bool with_separation = true;  // conjoin the s_n/u_n separation refuter
    long long sep_n = 64;
    int sep_phases = 0;           // 0 = reuse ueg_phases
    int oracle_N = 200;
    int oracle_phases = 8;
    bool with_oracle = true;
    bool with_lyapunov = false;
    long long lyapunov_steps = 2000;
    int lyapunov_phases = 8;
    double downgrade_tol = 5e-2;  // certified point this close to the robust
                                  // oracle at all phases -> inconclusive
    int jobs = 0;                 // 0 = hardware concurrency
};

struct GapScanRow {
    double param = 0.0;
    CertStatus status = CertStatus::inconclusive;
    double lyap = 0.0;
    double direction_gap = 0.0;       // min over phases of dist(s_n, u_n)
    double oracle_min_dist = 0.0;     // min over the union of phase spectra
    double oracle_robust_dist = 0.0;  // max over phases of per-phase min dist
    bool downgraded = false;
};

struct GapScanResult {
    std::vector<GapScanRow> rows;
    // Maximal certified runs as half-open parameter intervals [lo, hi).
    std::vector<std::pair<double, double>> gaps;
    ScanBudgets budgets;
};

// Run ueg_test over the parameter grid, attach oracle distances, and collate
// certified runs into gaps. Points closer than downgrade_tol to the robust
// oracle distance are downgraded to inconclusive.
GapScanResult gap_scan(const CocycleSpec& base, double alpha,
                       std::span<const double> parameter_grid, const ScanBudgets& budgets);

struct InductionState;  // induction.hpp

struct RhoTrackRow {
    double t = 0.0;
    double rho = 0.0;          // critical distance, branch per the definition
    double slope = 0.0;        // finite-difference d rho / dt
    bool resonant_branch = false;
    bool near_zero = false;
    bool large_gap_trigger = false;  // |g_i(c_{i,1}(t),t)| > lambda^{-r/10}
};

// Evaluate the critical-distance function rho_i over the induction t-grid.
std::vector<RhoTrackRow> rho_track(const InductionState& state);

}  // namespace qplab
