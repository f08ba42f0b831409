#include "qplab/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qplab {

double wrap_unit(double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) y -= 1.0;  // floor rounding at negative epsilons
    return y;
}

double dist_to_integers(double x) {
    return std::abs(x - std::round(x));
}

bool Arc::contains(double x) const {
    if (radius >= 0.5) return true;
    double off = wrap_unit(x - center);  // [0,1)
    if (off >= 0.5) off -= 1.0;          // signed offset in [-1/2, 1/2)
    return off >= -radius && off < radius;
}

ContinuedFraction expand(double alpha, int depth, double rational_tol) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("expand: alpha must be in (0,1)");
    if (depth < 1) throw Error("expand: depth must be >= 1");

    ContinuedFraction cf;
    cf.alpha = alpha;
    cf.convergents.push_back({0, 1});  // p_0/q_0 = 0/1

    long long p_prev = 1, q_prev = 0;  // (p_{-1}, q_{-1})
    long long p_cur = 0, q_cur = 1;    // (p_0, q_0)
    double frac = alpha;

    for (int k = 1; k <= depth; ++k) {
        if (frac < rational_tol)
            throw RationalFrequency("expand: remainder underflow, alpha is rational");
        double inv = 1.0 / frac;
        auto a = static_cast<long long>(std::floor(inv));
        frac = inv - static_cast<double>(a);

        if (q_cur > (1LL << 50) / std::max(1LL, a))
            throw Error("expand: convergent denominators exceed the integer range");
        long long p_next = a * p_cur + p_prev;
        long long q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;

        cf.partial_quotients.push_back(a);
        cf.convergents.push_back({p_cur, q_cur});
    }
    return cf;
}

DiophantineEstimate diophantine_estimate(const ContinuedFraction& cf, double tau,
                                         long long q_max) {
    if (!(tau > 2.0)) throw Error("diophantine_estimate: tau must be > 2");
    if (q_max < 1) throw Error("diophantine_estimate: q_max must be >= 1");

    DiophantineEstimate est;
    est.tau = tau;
    est.gamma_lower = std::numeric_limits<double>::infinity();
    double orbit = 0.0;
    for (long long q = 1; q <= q_max; ++q) {
        orbit = wrap_unit(orbit + cf.alpha);
        double d = std::min(orbit, 1.0 - orbit);  // dist(q*alpha, Z)
        double val = std::pow(static_cast<double>(q), tau) * d;
        if (val < est.gamma_lower) {
            est.gamma_lower = val;
            est.q_at_min = q;
        }
    }
    return est;
}

long long first_return_time(double alpha, const Arc& interval, long long min_time,
                            Direction dir, long long cap) {
    if (!(interval.radius > 0.0)) throw Error("first_return_time: empty interval");
    if (min_time < 1) throw Error("first_return_time: min_time must be >= 1");

    const double step = (dir == Direction::forward) ? alpha : -alpha;
    double x = wrap_unit(interval.center + static_cast<double>(min_time - 1) * step);
    for (long long n = min_time; n <= cap; ++n) {
        x = wrap_unit(x + step);
        if (interval.contains(x)) return n;
    }
    throw SearchBudgetExceeded("first_return_time: no return within cap");
}

namespace {

// Largest gap between consecutive points of {m*alpha mod 1 : 0 <= m <= M}.
double max_orbit_gap(double alpha, long long m_count) {
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(m_count) + 1);
    double x = 0.0;
    pts.push_back(0.0);
    for (long long m = 1; m <= m_count; ++m) {
        x = wrap_unit(x + alpha);
        pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    double gap = 1.0 - pts.back() + pts.front();  // wrap-around gap
    for (size_t i = 1; i < pts.size(); ++i) gap = std::max(gap, pts[i] - pts[i - 1]);
    return gap;
}

}  // namespace

long long hitting_time_bound(double alpha, const ContinuedFraction& cf,
                             double interval_length, long long cap) {
    if (!(interval_length > 0.0 && interval_length < 1.0))
        throw Error("hitting_time_bound: length must be in (0,1)");

    // The gap sequence is non-increasing in M. Seed the upper bound at the
    // first convergent denominator of scale 1/length (orbit gaps at M = q_k
    // are of order 1/q_k), grow by doubling until the gap condition holds,
    // then binary-search the least such M.
    long long hi = 1;
    for (const auto& c : cf.convergents) {
        if (static_cast<double>(c.q) * interval_length >= 1.0) {
            hi = c.q;
            break;
        }
        hi = c.q;
    }
    while (max_orbit_gap(alpha, hi) >= interval_length) {
        if (hi > cap) throw SearchBudgetExceeded("hitting_time_bound: cap exceeded");
        hi *= 2;
    }
    long long lo = 0;
    while (lo + 1 < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (max_orbit_gap(alpha, mid) < interval_length)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace qplab
