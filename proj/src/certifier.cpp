#include "qplab/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qplab/directions.hpp"

namespace qplab {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double gamma_cap = 1e12;  // |tan| cap for near-orthogonal junctions
}  // namespace

double ChainWitness::beta() const {
    return log_beta > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(log_beta);
}

double ChainWitness::rho_bound() const {
    return log_rho > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(log_rho);
}

ChainWitness block_growth(std::span<const ScaledProduct> blocks) {
    if (blocks.size() < 2) throw Error("block_growth: need at least two blocks");

    ChainWitness w;
    w.log_beta = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks) {
        w.log_beta = std::min(w.log_beta, b.log_norm);
        w.boundaries.push_back(b.n);
    }
    if (!(w.log_beta > std::log1p(1e-9)))
        throw HypothesisFailed("block_growth: some block norm is not above 1");

    // Junction angles via the most-contraction directions of the unit factors.
    w.gamma = gamma_cap;
    for (size_t k = 1; k < blocks.size(); ++k) {
        double s_next, u_prev;
        try {
            s_next = most_contraction(blocks[k].unit);
            u_prev = most_contraction(blocks[k - 1].unit.adjugate());
        } catch (const NearConformal&) {
            throw HypothesisFailed("block_growth: near-conformal block");
        }
        double ang = rp1::dist(s_next, u_prev);
        double t = std::abs(std::tan(ang));
        if (ang > 0.5 * pi - 1e-9) t = gamma_cap;
        w.gamma = std::min(w.gamma, std::min(t, gamma_cap));
    }

    // Hypothesis: gamma > 2 / (beta - 1/beta). In log-safe form compare
    // gamma * (beta - 1/beta) > 2 using expm1 for moderate beta.
    double beta_minus_inv =
        w.log_beta > 350.0 ? std::numeric_limits<double>::infinity()
                           : std::exp(w.log_beta) - std::exp(-w.log_beta);
    if (!(w.gamma * beta_minus_inv > 2.0))
        throw HypothesisFailed("block_growth: gamma <= 2/(beta - 1/beta)");

    // Attracting fixed point of delta -> (1 + gamma delta)/(beta^2 (gamma - delta)).
    // Solve beta^2 d^2 - gamma (beta^2 - 1) d + 1 = 0 for the smaller root,
    // written to stay finite for huge beta.
    double delta_star;
    if (w.log_beta > 30.0) {
        // beta^2 enormous: delta* ~ 1/(gamma (beta^2 - 1)) -> 0.
        delta_star = 0.0;
    } else {
        double b2 = std::exp(2.0 * w.log_beta);
        double A = b2, B = w.gamma * (b2 - 1.0), C = 1.0;
        double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) disc = 0.0;  // boundary case, rounding
        delta_star = 2.0 * C / (B + std::sqrt(disc));  // smaller root, stable form
    }

    double T = (w.gamma - delta_star) / (1.0 + w.gamma * delta_star);
    // rho^2 = (beta^2 T^2 + beta^-2) / (1 + T^2), in logs for huge beta.
    double log_T2 = 2.0 * std::log(T);
    double log_num;
    if (2.0 * w.log_beta + log_T2 > 60.0) {
        log_num = 2.0 * w.log_beta + log_T2;  // beta^-2 negligible
    } else {
        log_num = std::log(std::exp(2.0 * w.log_beta + log_T2) + std::exp(-2.0 * w.log_beta));
    }
    w.log_rho = 0.5 * (log_num - std::log1p(T * T));
    // The delta* correction can sit below double resolution (exactly
    // orthogonal junctions); shave a few ulps so the certified rate never
    // rounds above the true bound.
    w.log_rho -= 1e-13 * std::max(1.0, std::abs(w.log_rho));

    // Soundness check against the direct products.
    w.prefix_ok = true;
    w.prefix_margin = std::numeric_limits<double>::infinity();
    double log_prod = 0.0;
    Mat2 unit = Mat2::identity();
    for (size_t k = 0; k < blocks.size(); ++k) {
        Mat2 m = blocks[k].unit * unit;
        double s = m.op_norm();
        unit = (1.0 / s) * m;
        log_prod += std::log(s) + blocks[k].log_norm;
        double margin = log_prod - static_cast<double>(k + 1) * w.log_rho;
        w.prefix_margin = std::min(w.prefix_margin, margin);
        if (margin < 0.0) w.prefix_ok = false;
    }
    return w;
}

ChainWitness block_growth(std::span<const Mat2> blocks) {
    std::vector<ScaledProduct> sp(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) {
        double nrm = blocks[i].op_norm();
        sp[i].log_norm = std::log(nrm);
        sp[i].unit = (1.0 / nrm) * blocks[i];
        sp[i].n = static_cast<long long>(i);
    }
    return block_growth(std::span<const ScaledProduct>(sp));
}

const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::certified: return "certified";
        case CertStatus::refuted_at_budget: return "refuted-at-budget";
        default: return "inconclusive";
    }
}

std::vector<long long> default_n_list(int max_j) {
    std::vector<long long> ns;
    for (int j = 1; j <= max_j; ++j) {
        ns.push_back(1LL << j);
        ns.push_back(-(1LL << j));
    }
    return ns;
}

namespace {
const char* family_name(Family f) {
    switch (f) {
        case Family::schrodinger: return "schrodinger";
        case Family::polar: return "polar";
        case Family::rotation: return "rotation";
        default: return "szego";
    }
}
}  // namespace

UHCertificate ueg_test(const CocycleSpec& spec, double alpha, int x_grid_size,
                       std::span<const long long> n_list, double c, double rho) {
    if (!(rho > 1.0)) throw Error("ueg_test: rho must be > 1");
    bool has_pos = false, has_neg = false;
    for (long long n : n_list) (n > 0 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw Error("ueg_test: n_list must cover both signs");

    UHCertificate cert;
    cert.family = family_name(spec.family);
    cert.parameter = spec.t;
    cert.method = "ueg";
    cert.c_wit = c;
    cert.rho_wit = rho;
    cert.grid_size = x_grid_size;
    cert.worst_margin = std::numeric_limits<double>::infinity();

    long long max_pos = 0, max_neg = 0;
    std::vector<long long> pos, neg;
    for (long long n : n_list) {
        if (n > 0) {
            pos.push_back(n);
            max_pos = std::max(max_pos, n);
        } else if (n < 0) {
            neg.push_back(-n);
            max_neg = std::max(max_neg, -n);
        }
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    cert.n_used = std::max(max_pos, max_neg);

    CocycleMap map = make_map(spec);
    const double log_c = std::log(c), log_rho = std::log(rho);

    bool any_fail = false, deep_fail = false;
    for (int i = 0; i < x_grid_size; ++i) {
        double x = static_cast<double>(i) / x_grid_size;
        // Walk each direction once, sampling log||A_n|| at the listed n.
        for (int dir = 0; dir < 2; ++dir) {
            const auto& checkpoints = dir == 0 ? pos : neg;
            if (checkpoints.empty()) continue;
            long long n_max = checkpoints.back();
            size_t next = 0;
            ScaledProduct p;
            for (long long n = 1; n <= n_max; ++n) {
                double y = dir == 0 ? wrap_unit(x + (n - 1) * alpha)
                                    : wrap_unit(x - n * alpha);
                Mat2 m = dir == 0 ? map(y) * p.unit : map(y).adjugate() * p.unit;
                double s = m.op_norm();
                p.unit = (1.0 / s) * m;
                p.log_norm += std::log(s);
                if (next < checkpoints.size() && n == checkpoints[next]) {
                    ++next;
                    double margin = p.log_norm - (log_c + n * log_rho);
                    if (margin < cert.worst_margin) {
                        cert.worst_margin = margin;
                        cert.worst_x = x;
                    }
                    if (margin <= 0.0) {
                        any_fail = true;
                        if (n == n_max) deep_fail = true;
                    }
                }
            }
        }
    }
    cert.status = !any_fail ? CertStatus::certified
                            : (deep_fail ? CertStatus::refuted_at_budget
                                         : CertStatus::inconclusive);
    return cert;
}

namespace {

// Count sign changes of sin(g_n) inside [lo, hi], re-sampling candidate
// cells at finer resolution: steep resonance walls alias to spurious
// crossings on coarse grids, while genuine transversal zeros survive every
// refinement. Cells still lift-ambiguous at the deepest level are flagged.
int confirmed_crossings(const CocycleSpec& spec, double alpha, long long n, double lo,
                        double hi, int depth, bool& unresolved) {
    FieldRow row;
    try {
        row = sample_row(spec, alpha, Arc{0.5 * (lo + hi), 0.5 * (hi - lo)}, spec.t, 64,
                         n, n);
    } catch (const NearConformal&) {
        unresolved = true;
        return 0;
    }
    int count = 0;
    double prev = std::sin(row.g[0]);
    for (size_t i = 1; i < row.g.size(); ++i) {
        double cur = std::sin(row.g[i]);
        if (prev == 0.0 || prev * cur < 0.0) {
            if (depth == 0)
                ++count;
            else
                count += confirmed_crossings(spec, alpha, n, row.x[i - 1], row.x[i],
                                             depth - 1, unresolved);
        }
        prev = cur;
    }
    if (depth == 0 && row.has_wall) unresolved = true;
    return count;
}

}  // namespace

SeparationProbe direction_separation(const CocycleSpec& spec, double alpha,
                                     long long n, int phases, double min_gap_floor) {
    SeparationProbe probe;
    probe.n_used = n;

    FieldRow row;
    try {
        row = sample_row(spec, alpha, Arc{0.0, 0.5}, spec.t, phases, n, n);
    } catch (const NearConformal&) {
        probe.near_conformal = true;
        probe.separated = false;
        return probe;
    }

    probe.min_gap = pi;
    for (size_t i = 0; i < row.x.size(); ++i) {
        double d = rp1::dist(row.g[i], 0.0);
        if (d < probe.min_gap) {
            probe.min_gap = d;
            probe.argmin_x = row.x[i];
        }
    }
    bool unresolved = false;
    double prev = std::sin(row.g[0]);
    for (size_t i = 1; i < row.g.size(); ++i) {
        double cur = std::sin(row.g[i]);
        if (prev == 0.0 || prev * cur < 0.0)
            probe.zero_crossings += confirmed_crossings(spec, alpha, n, row.x[i - 1],
                                                        row.x[i], 3, unresolved);
        prev = cur;
    }
    probe.unresolved_wall = unresolved;
    probe.separated =
        probe.zero_crossings == 0 && !unresolved && probe.min_gap > min_gap_floor;
    return probe;
}

UHCertificate chain_certify(const CocycleSpec& spec, double alpha, const Arc& interval,
                            double gap, long long M, const ChainOptions& opt) {
    if (!(gap > 0.0)) throw SeparationTooSmall("chain_certify: gap must be positive");

    UHCertificate cert;
    cert.family = family_name(spec.family);
    cert.parameter = spec.t;
    cert.method = "chain";
    cert.n_used = M;
    cert.grid_size = opt.phase_grid;
    cert.worst_margin = std::numeric_limits<double>::infinity();

    auto cf = expand(alpha, 40);
    long long M1 = hitting_time_bound(alpha, cf, interval.length());
    if (M <= std::max(M1 * M1, opt.min_block * opt.min_block))
        cert.note = "M below max(M1^2, M2); certificate weaker than the stated rate";

    CocycleMap map = make_map(spec);
    const double log_lambda = std::log(spec.lambda);
    const double target = opt.target_rate * static_cast<double>(M) * log_lambda;
    cert.c_wit = std::exp(-static_cast<double>(M1) * log_lambda);
    cert.rho_wit = std::exp(opt.target_rate * log_lambda);

    bool all_pass = true;
    for (int ip = 0; ip < opt.phase_grid; ++ip) {
        double x = static_cast<double>(ip) / opt.phase_grid;

        // Prefix: first hit of the interval within M1 steps.
        long long j = -1;
        for (long long m = 0; m <= M1; ++m) {
            if (interval.contains(x + m * alpha)) {
                j = m;
                break;
            }
        }
        if (j < 0) {
            cert.status = CertStatus::inconclusive;
            cert.note = "hitting bound violated at a test phase";
            return cert;
        }
        double log_prefix_loss = iterate(map, alpha, x, j).log_norm;

        // Cut the remaining orbit at returns to I separated by min_block.
        double y = wrap_unit(x + j * alpha);
        long long span = M - j;
        std::vector<long long> cuts;  // strictly increasing times in (0, span]
        long long last = 0;
        for (long long m = opt.min_block; m <= span; ++m) {
            if (m - last >= opt.min_block && interval.contains(y + m * alpha)) {
                cuts.push_back(m);
                last = m;
            }
        }
        if (cuts.size() < 2) {
            cert.status = CertStatus::inconclusive;
            cert.note = "orbit produced fewer than two return blocks";
            return cert;
        }

        std::vector<ScaledProduct> blocks;
        long long prev = 0;
        for (long long cut : cuts) {
            ScaledProduct b = iterate(map, alpha, wrap_unit(y + prev * alpha), cut - prev);
            blocks.push_back(b);
            prev = cut;
        }

        // Separation hypothesis: gap >> 1/min-block-norm.
        double min_log_block = std::numeric_limits<double>::infinity();
        double sum_log_blocks = 0.0;
        for (const auto& b : blocks) {
            min_log_block = std::min(min_log_block, b.log_norm);
            sum_log_blocks += b.log_norm;
        }
        if (!(std::log(gap) > std::log(opt.sep_factor) - min_log_block))
            throw SeparationTooSmall("chain_certify: gap below sep_factor / min block norm");

        ChainWitness w = block_growth(std::span<const ScaledProduct>(blocks));

        // Suffix loss past the last cut.
        double log_suffix_loss =
            iterate(map, alpha, wrap_unit(y + prev * alpha), span - prev).log_norm;

        // Combined lower bound on log||A_M(x)||, mirroring the proof's ledger:
        // prefix inverse, block-product power, suffix inverse. Both middle
        // bounds are cross-checked against the directly multiplied blocks.
        double main_term = std::max(opt.block_power * sum_log_blocks,
                                    static_cast<double>(blocks.size()) * w.log_rho);
        {
            double log_direct = 0.0;
            Mat2 unit = Mat2::identity();
            for (const auto& b : blocks) {
                Mat2 m = b.unit * unit;
                double s = m.op_norm();
                unit = (1.0 / s) * m;
                log_direct += std::log(s) + b.log_norm;
            }
            if (main_term > log_direct + 1e-6) {
                cert.status = CertStatus::inconclusive;
                cert.note = "block ledger exceeded the direct product norm";
                return cert;
            }
        }
        double lower = -log_prefix_loss + main_term - log_suffix_loss;
        double margin = lower - target;
        if (margin < cert.worst_margin) {
            cert.worst_margin = margin;
            cert.worst_x = x;
        }
        if (margin <= 0.0) all_pass = false;
    }

    cert.status = all_pass ? CertStatus::certified : CertStatus::inconclusive;
    return cert;
}

}  // namespace qplab
