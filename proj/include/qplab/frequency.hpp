#pragma once
// Continued-fraction analysis of the frequency alpha, empirical Diophantine
// constants, and return/hitting times of the circle rotation x -> x + alpha.

#include <cstdint>
#include <vector>

#include "qplab/errors.hpp"

namespace qplab {

// Wrap to [0, 1).
double wrap_unit(double x);

// Distance from x to the nearest integer.
double dist_to_integers(double x);

// Half-open arc on R/Z: {x : signed circle offset from center in [-radius, radius)}.
// Half-open membership breaks ties deterministically. radius >= 1/2 means the
// full circle.
struct Arc {
    double center = 0.0;
    double radius = 0.0;

    bool contains(double x) const;
    double length() const { return 2.0 * radius; }
};

struct Convergent {
    long long p = 0;
    long long q = 1;
};

struct ContinuedFraction {
    double alpha = 0.0;                          // in (0,1)
    std::vector<long long> partial_quotients;    // a_1..a_D
    std::vector<Convergent> convergents;         // (p_0,q_0)=(0,1) then one per a_k
};

// Euclidean expansion of alpha in (0,1) to the given depth.
// Throws RationalFrequency when a remainder underflows the noise floor
// (default 1e-14): alpha is effectively rational.
ContinuedFraction expand(double alpha, int depth, double rational_tol = 1e-14);

struct DiophantineEstimate {
    double tau = 0.0;
    double gamma_lower = 0.0;  // empirical inf of q^tau * dist(q alpha, Z)
    long long q_at_min = 1;    // denominator attaining the infimum
};

// Exhaustive scan of q^tau * dist(q alpha, Z) over 1 <= q <= q_max. tau > 2.
DiophantineEstimate diophantine_estimate(const ContinuedFraction& cf, double tau,
                                         long long q_max);

enum class Direction { forward, backward };

// Smallest n >= min_time with center + n*alpha*(+/-1) back inside the arc.
// Throws SearchBudgetExceeded past the iteration cap.
long long first_return_time(double alpha, const Arc& interval, long long min_time,
                            Direction dir, long long cap = 10'000'000);

// M1 such that every phase enters any arc of the given length within M1
// rotation steps. Computed from the maximal gap of the orbit {m*alpha}_{m<=M}:
// once all gaps are < length, every arc of that length holds an orbit point.
long long hitting_time_bound(double alpha, const ContinuedFraction& cf,
                             double interval_length, long long cap = 50'000'000);

}  // namespace qplab
