#pragma once
// Uniform-hyperbolicity certification: direct uniform-exponential-growth
// testing and the chained certificate built from block products.
//
// Block chaining: for SL(2,R) blocks with min norm beta and junction angles
// whose tangents stay above gamma > 2/(beta - 1/beta), the tan-distance of
// the propagated direction from each block's unstable direction obeys
//     delta' = (1 + gamma delta) / (beta^2 (gamma - delta)),
// which has an attracting fixed point delta* exactly when the hypothesis
// holds (the discriminant gamma^2 (beta^2-1)^2 - 4 beta^2 is nonnegative).
// Every step then multiplies the carried vector by at least
//     rho = sqrt((beta^2 T^2 + beta^-2) / (1 + T^2)),  T = (gamma - delta*)/(1 + gamma delta*),
// which degenerates to rho = 1 precisely on the hypothesis boundary.

#include <span>
#include <string>
#include <vector>

#include "qplab/cocycle.hpp"
#include "qplab/frequency.hpp"

namespace qplab {

struct ChainWitness {
    double log_beta = 0.0;   // log of the min block norm
    double gamma = 0.0;      // min |tan(s(B_k) - u(B_{k-1}))| over junctions
    double log_rho = 0.0;    // log of the certified per-block rate
    std::vector<long long> boundaries;  // block lengths or orbit cut times
    bool prefix_ok = false;  // direct-product validation of the rate
    double prefix_margin = 0.0;  // min over n of log||P_n|| - n log rho

    double beta() const;
    double rho_bound() const;
};

// Certified geometric growth for a finite block sequence. Blocks are given as
// (log norm, unit factor) pairs so return-time blocks with astronomical norms
// stay representable. Throws HypothesisFailed when gamma <= 2/(beta-1/beta)
// (rotation blocks land here: no contraction direction).
ChainWitness block_growth(std::span<const ScaledProduct> blocks);
ChainWitness block_growth(std::span<const Mat2> blocks);

enum class CertStatus { certified, refuted_at_budget, inconclusive };

const char* to_string(CertStatus s);

struct UHCertificate {
    std::string family;
    double parameter = 0.0;     // E, t, or theta
    std::string method;         // "ueg" or "chain"
    long long n_used = 0;       // max |n| tested, or M for chain
    double c_wit = 0.0;
    double rho_wit = 1.0;
    int grid_size = 0;
    CertStatus status = CertStatus::inconclusive;
    double worst_margin = 0.0;  // min over tested (x,n) of log||A_n|| - (log c + |n| log rho)
    double worst_x = 0.0;
    std::string note;
};

// Exponential-growth test: log||A_n(x)|| > log c + |n| log rho for every
// grid phase and every n in n_list (both signs covered by the caller's list).
// certified: all pass. refuted_at_budget: some phase fails at the deepest n.
// inconclusive: only transient failures at shallow n.
UHCertificate ueg_test(const CocycleSpec& spec, double alpha, int x_grid_size,
                       std::span<const long long> n_list, double c, double rho);

// Default budget n-list {+-2^j : j <= max_j}.
std::vector<long long> default_n_list(int max_j = 12);

// Separation of the asymptotic stable/unstable directions: (alpha, A) is
// uniformly hyperbolic iff dist(s_n, u_n) stays bounded away from zero, so a
// transversal zero of g_n = s_n - u_n refutes at budget. Zeros are detected
// as sign changes of sin(g_n) along the continuously lifted row; this is the
// refuter that works at large coupling, where norm dips live in phase
// windows far below any grid resolution. Near-conformal products (elliptic
// regime) also refute: the direction itself is undefined.
struct SeparationProbe {
    double min_gap = 0.0;  // min over phases of dist(s_n, u_n)
    double argmin_x = 0.0;
    int zero_crossings = 0;      // crossings surviving local refinement
    bool near_conformal = false; // direction undefined at some phase
    bool unresolved_wall = false;  // lift still ambiguous at max refinement
    bool separated = false;
    long long n_used = 0;
};

SeparationProbe direction_separation(const CocycleSpec& spec, double alpha,
                                     long long n, int phases,
                                     double min_gap_floor = 1e-9);

struct ChainOptions {
    int phase_grid = 64;          // test phases spread over the circle
    long long min_block = 1;      // minimum spacing between orbit cuts
    double block_power = 3.0 / 5.0;  // exponent combining block norms
    double target_rate = 0.25;    // certify log||A_M|| >= target_rate * M * log lambda
    double sep_factor = 10.0;     // gap must exceed sep_factor / min block norm
};

// Chained certificate at one parameter: decompose each test orbit into
// returns to the interval I, apply block_growth per block sequence, and
// combine with the hitting-time prefix and the suffix loss. Requires the
// separation hypothesis gap >> 1/min-block-norm; throws SeparationTooSmall
// when it fails.
UHCertificate chain_certify(const CocycleSpec& spec, double alpha, const Arc& interval,
                            double gap, long long M, const ChainOptions& opt = {});

}  // namespace qplab
