#pragma once
// The multi-scale induction at desk scale. Level i holds, per parameter t:
// critical points c_{i,j}(t) with their critical intervals of radius
// 1/(2^i q_{N+i-1}^{2 tau}), the return times used to build g_i, the
// classification of g_i, and the resonance translate k when the intervals
// overlap along the rotation orbit.

#include <optional>
#include <string>
#include <vector>

#include "qplab/classifier.hpp"
#include "qplab/directions.hpp"
#include "qplab/frequency.hpp"

namespace qplab {

struct InductionConfig {
    int N = -1;               // convergent index fixing q_N; -1 = smallest with q_N >= 5
    double tau = 2.5;
    double epsilon = 0.5;     // slack in the lambda^{(1-eps) r} growth check
    int max_level = 2;
    int nx = 64;              // x-samples per critical interval
    int nt = 8;               // parameter grid size
    long long return_cap = 10'000'000;
    bool adaptive_t = true;   // insert midpoints where a resonance is suspected
    double c_small = 1e-3;
    double C_big = 1e3;
};

struct IntervalState {
    double center = 0.0;           // c_{i,j}(t)
    double cls_radius = 0.0;       // radius of the interval g_i was classified on
    TypeClassification cls;
    FieldRow row;                  // g_i samples on the classification interval
    long long r_plus = 0, r_minus = 0;  // return times that built g_i (0 at level 1)
    double closeness = 0.0;        // sup |g_i - g_{i-1}| on this interval
};

struct TParamState {
    double t = 0.0;
    bool merged = false;                  // single connected interval (type II regime)
    std::vector<IntervalState> intervals; // 1 if merged else 2
    std::optional<int> resonance_k;
    double resonance_overlap = 0.0;       // |c_1 + k alpha - c_2| on the circle
    bool choice_ambiguous = false;        // x2 pick was a near-tie
    bool halted = false;
    std::string halt_reason;
};

struct InductionState {
    CocycleSpec spec;
    double alpha = 0.0;
    InductionConfig cfg;
    ContinuedFraction cf;
    int N = 0;       // resolved convergent index
    int level = 0;   // i: g_i classified, c_{i,j} located
    std::vector<TParamState> per_t;

    // Critical-interval radius 1/(2^i q_{N+i-1}^{2 tau}) at level i.
    double interval_radius(int i) const;
    long long q_at(int offset) const;  // q_{N + offset}, with q_{N-1} := 1
};

// Level-1 state: g_1 on the full circle, critical points per t, classification
// on the arcs split at the extrema of the shape (merged near a tangency).
// Requires an admissible shape and irrational alpha.
InductionState induction_init(const CocycleSpec& spec, double alpha,
                              const InductionConfig& cfg, double t_lo, double t_hi);

// One induction step: critical intervals, return times, resonance scan,
// g_{i+1} via the direction fields, classification, new critical points.
// Per-t failures halt that t and record the reason; they do not throw.
void induction_step(InductionState& state);

struct EstimateCheck {
    std::string name;
    bool pass = true;
    double worst = 0.0;      // worst margin over the sample grid
    std::string detail;
};

struct EstimateReport {
    std::vector<EstimateCheck> checks;
    bool all_pass = true;

    const EstimateCheck* find(const std::string& name) const;
};

// Theorem-style estimate checks on the current level: return-time norm
// growth, derivative-ratio bounds of the norms, the sign condition
// prod_j dg/dx(c_{i,j}) <= 0, and dg/dt > 0. Failures are findings, not
// errors.
EstimateReport verify_estimates(const InductionState& state);

// g_i evaluated at one point with the stored return times (level >= 1).
double eval_g(const InductionState& state, const TParamState& ts, int interval_idx,
              double x);

}  // namespace qplab
