#include "landscape/genuineness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "landscape/rng.hpp"

namespace landscape {

namespace {

// Per-neuron violation counts at a representative point: viol(j, 0) under
// s_j = +1, viol(j, 1) under s_j = -1. A strict (active) sample violates when
// s v <= tau, an inactive one when s v > tau, tau = 1e-9 max(1, |R_j| |x_i|).
struct ViolationTable {
    Eigen::MatrixXi viol;  // K x 2
    int N = 0;

    long total(const IVec& s) const {
        long sum = 0;
        for (int j = 0; j < viol.rows(); ++j) sum += viol(j, s(j) > 0 ? 0 : 1);
        return sum;
    }
    IVec best_signs() const {  // per-neuron min, ties -> +1
        IVec s(viol.rows());
        for (int j = 0; j < viol.rows(); ++j) s(j) = viol(j, 1) < viol(j, 0) ? -1 : 1;
        return s;
    }
    double gap_fraction() const {  // max over neurons of the better sign's share
        double worst = 0.0;
        for (int j = 0; j < viol.rows(); ++j)
            worst = std::max(worst, double(std::min(viol(j, 0), viol(j, 1))) / double(N));
        return worst;
    }
};

ViolationTable violation_table(const EffectiveWeights& Rstar, const ActivationPattern& pattern,
                               const Dataset& data) {
    const int N = pattern.N(), K = pattern.K();
    if (data.N() != N || Rstar.K() != K || Rstar.D() != data.D())
        throw dimension_error("violation_table: shape mismatch");
    const Mat V = data.X * Rstar.R.transpose();  // V(i, j) = R_j . x_i
    const Vec xnorm = data.X.rowwise().norm();
    const Vec rnorm = Rstar.R.rowwise().norm();
    ViolationTable tab;
    tab.N = N;
    tab.viol = Eigen::MatrixXi::Zero(K, 2);
    for (int j = 0; j < K; ++j)
        for (int i = 0; i < N; ++i) {
            const double tau = 1e-9 * std::max(1.0, rnorm(j) * xnorm(i));
            const double v = V(i, j);
            if (pattern.I(i, j)) {
                if (v <= tau) ++tab.viol(j, 0);
                if (-v <= tau) ++tab.viol(j, 1);
            } else {
                if (v > tau) ++tab.viol(j, 0);
                if (-v > tau) ++tab.viol(j, 1);
            }
        }
    return tab;
}

std::vector<IVec> orientation_candidates(const OrientationPolicy& policy,
                                         const ViolationTable& tab, int K) {
    std::vector<IVec> out;
    std::set<std::vector<int>> seen;
    auto push = [&](const IVec& s) {
        std::vector<int> key(s.data(), s.data() + s.size());
        if (seen.insert(key).second) out.push_back(s);
    };
    for (OrientationMode mode : policy.modes) {
        switch (mode) {
            case OrientationMode::AllPositive: push(IVec::Constant(K, 1)); break;
            case OrientationMode::AllNegative: push(IVec::Constant(K, -1)); break;
            case OrientationMode::FromMinNorm: push(tab.best_signs()); break;
            case OrientationMode::Explicit:
                if (policy.explicit_signs.size() != K)
                    throw config_error("explicit orientation length != K");
                for (int j = 0; j < K; ++j)
                    if (policy.explicit_signs(j) != 1 && policy.explicit_signs(j) != -1)
                        throw config_error("explicit orientation entries must be +1/-1");
                push(policy.explicit_signs);
                break;
            case OrientationMode::Exhaustive: {
                if (K > policy.max_K) throw config_error("exhaustive orientation: K too large");
                for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << K); ++bits) {
                    IVec s(K);
                    for (int j = 0; j < K; ++j) s(j) = (bits >> j) & 1 ? -1 : 1;
                    push(s);
                }
                break;
            }
        }
    }
    if (out.empty()) push(IVec::Constant(K, 1));
    return out;
}

bool all_dead(const ActivationPattern& pattern) {
    return (pattern.I.array() == 0).all();
}

// Sign test at a concrete point under one orientation; counts violations.
long count_violations(const EffectiveWeights& R, const ActivationPattern& pattern,
                      const Dataset& data, const IVec& s) {
    const Mat V = data.X * R.R.transpose();
    const Vec xnorm = data.X.rowwise().norm();
    const Vec rnorm = R.R.rowwise().norm();
    long bad = 0;
    for (int j = 0; j < pattern.K(); ++j)
        for (int i = 0; i < pattern.N(); ++i) {
            const double tau = 1e-9 * std::max(1.0, rnorm(j) * xnorm(i));
            const double v = s(j) * V(i, j);
            if (pattern.I(i, j) ? v <= tau : v > tau) ++bad;
        }
    return bad;
}

}  // namespace

OrientationPolicy OrientationPolicy::defaults() {
    OrientationPolicy p;
    p.modes = {OrientationMode::AllPositive, OrientationMode::AllNegative,
               OrientationMode::FromMinNorm};
    return p;
}

GenuinenessVerdict check_isolated(const EffectiveWeights& Rstar, const ActivationPattern& pattern,
                                  const Dataset& data, const OrientationPolicy& policy) {
    const int K = pattern.K();
    const ViolationTable tab = violation_table(Rstar, pattern, data);
    const auto candidates = orientation_candidates(policy, tab, K);

    GenuinenessVerdict v;
    v.kind = SolutionKind::Unique;
    v.pg_estimate = tab.gap_fraction();
    long best = -1;
    for (const IVec& s : candidates) {
        const long bad = tab.total(s);
        if (best < 0 || bad < best) {
            best = bad;
            v.per_neuron_orientation = s;
        }
        if (bad == 0) break;
    }
    v.violated_count = best;
    v.status = best == 0 ? GenuinenessStatus::Genuine : GenuinenessStatus::NotGenuine;
    return v;
}

InequalitySystem build_halfspace_system(const CriticalSystem& system,
                                        const CriticalSolution& solution,
                                        const ActivationPattern& pattern, const Dataset& data,
                                        const IVec& orientation, double box_M) {
    const int N = pattern.N(), K = pattern.K(), D = data.D(), KD = K * D;
    if (system.K != K || system.D != D || data.N() != N || orientation.size() != K)
        throw dimension_error("build_halfspace_system: shape mismatch");

    const int ns = int(pattern.I.sum());
    InequalitySystem sys;
    sys.n = KD;
    sys.box_M = box_M;
    sys.strict_A.resize(ns, KD);
    sys.strict_b.resize(ns);
    sys.nonstrict_A.resize(N * K - ns, KD);
    sys.nonstrict_b.resize(N * K - ns);

    int si = 0, qi = 0;
    for (int j = 0; j < K; ++j) {
        // Projector action on block-j embeddings, batched: P e_ij has x_i in
        // block j minus M_j x_i, where M_j = pinv(A) diag(I_:j) X is K*D x D.
        const Mat Mj =
            solution.Apinv * (pattern.I.col(j).cast<double>().asDiagonal() * data.X);
        const Vec R0j = solution.R0.segment(j * D, D);
        const double s = orientation(j);
        for (int i = 0; i < N; ++i) {
            Vec a = Vec::Zero(KD);
            a.segment(j * D, D) = data.X.row(i);
            a.noalias() -= Mj * data.X.row(i).transpose();
            a *= s;
            const double b = s * data.X.row(i).dot(R0j);
            if (pattern.I(i, j)) {
                sys.strict_A.row(si) = a.transpose();
                sys.strict_b(si++) = b;
            } else {
                sys.nonstrict_A.row(qi) = a.transpose();
                sys.nonstrict_b(qi++) = b;
            }
        }
    }
    return sys;
}

GenuinenessVerdict check_continuous(const CriticalSystem& system, const CriticalSolution& solution,
                                    const ActivationPattern& pattern, const Dataset& data,
                                    const OrientationPolicy& policy, double eps_t, double box_M) {
    const int K = pattern.K(), D = data.D();
    GenuinenessVerdict v;
    v.kind = solution.kind;

    if (all_dead(pattern)) {
        v.status = GenuinenessStatus::Plateau;
        v.per_neuron_orientation = IVec::Constant(K, 1);
        v.pg_estimate = 0.0;
        v.note = "all-dead plateau: constant loss over the cell";
        return v;
    }

    const EffectiveWeights Rstar = effective_from_flat(solution.R0, K, D);
    const ViolationTable tab = violation_table(Rstar, pattern, data);
    const auto candidates = orientation_candidates(policy, tab, K);
    v.pg_estimate = tab.gap_fraction();

    // Full-rank system: the family is the single point R0 and the projector
    // vanishes, so the sign test at R0 is the whole answer.
    if (solution.rank == K * D) {
        GenuinenessVerdict iso = check_isolated(Rstar, pattern, data, policy);
        iso.kind = solution.kind;
        return iso;
    }

    bool any_numerical = false;
    long best = -1;
    for (const IVec& s : candidates) {
        const long bad = tab.total(s);
        if (best < 0 || bad < best) {
            best = bad;
            v.per_neuron_orientation = s;
        }
        const InequalitySystem lp_sys =
            build_halfspace_system(system, solution, pattern, data, s, box_M);
        const LPResult lp = feasibility(lp_sys, eps_t);
        if (lp.status == LPStatus::Inconclusive) {
            any_numerical = true;
            v.note += "lp inconclusive: " + lp.reason + "; ";
            continue;
        }
        if (lp.status == LPStatus::Infeasible) continue;

        // Independent verification at the displaced family point R0 + P c.
        const Vec shift = apply_projector(system, solution, lp.witness);
        const EffectiveWeights moved = effective_from_flat(solution.R0 + shift, K, D);
        if (count_violations(moved, pattern, data, s) == 0) {
            v.status = GenuinenessStatus::Genuine;
            v.witness = lp.witness;
            v.per_neuron_orientation = s;
            v.violated_count = 0;
            return v;
        }
        any_numerical = true;
        v.note += "feasible witness failed the sign re-check; ";
    }
    v.violated_count = best;
    v.status = any_numerical ? GenuinenessStatus::Inconclusive : GenuinenessStatus::NotGenuine;
    return v;
}

GenuinenessVerdict check_cell(const CriticalSystem& system, const CriticalSolution& solution,
                              const ActivationPattern& pattern, const Dataset& data,
                              const OrientationPolicy& policy, double eps_t, double box_M) {
    if (solution.kind == SolutionKind::Unique) {
        GenuinenessVerdict v = check_isolated(
            effective_from_flat(solution.R0, system.K, system.D), pattern, data, policy);
        v.kind = SolutionKind::Unique;
        return v;
    }
    return check_continuous(system, solution, pattern, data, policy, eps_t, box_M);
}

double empirical_gap_probability(const EffectiveWeights& Rstar, const NetworkWeights&,
                                 const ActivationPattern& pattern, const Dataset& data) {
    return violation_table(Rstar, pattern, data).gap_fraction();
}

std::optional<Vec> all_active_witness(const CriticalSystem& system,
                                      const CriticalSolution& solution,
                                      const ActivationPattern& pattern, const Dataset& data,
                                      const NetworkWeights& weights) {
    const int N = pattern.N(), K = pattern.K(), D = data.D();
    if (K < 2) return std::nullopt;
    if (!(pattern.I.array() == 1).all()) return std::nullopt;

    // Any direction strictly inside the active cone works; the first sampled
    // weight is one by construction of the all-ones pattern.
    const Vec u = weights.W.row(0).transpose();
    const Vec ux = data.X * u;
    if ((ux.array() <= 0).any()) return std::nullopt;

    Vec S = Vec::Zero(D);
    for (int j = 0; j < K; ++j) S += solution.R0.segment(j * D, D);
    const Vec Sx = data.X * S;

    // Split the family's fixed sum S into K strictly-signed parts along u:
    // one large positive, one balancing negative, the rest tiny positive.
    double lambda = 1.0;
    for (int i = 0; i < N; ++i) lambda = std::max(lambda, 1.0 - Sx(i) / ux(i));
    const double eps = 1e-3 * lambda;

    Mat R(K, D);
    R.row(0) = (S + lambda * u).transpose();
    R.row(1) = (-(lambda + double(K - 2) * eps) * u).transpose();
    for (int j = 2; j < K; ++j) R.row(j) = (eps * u).transpose();
    IVec s(K);
    s(0) = 1;
    s(1) = -1;
    for (int j = 2; j < K; ++j) s(j) = 1;

    EffectiveWeights cand{R};
    if (count_violations(cand, pattern, data, s) != 0) return std::nullopt;
    const Vec flat = cand.flat();
    const double drift = (system.A * (flat - solution.R0)).norm();
    if (drift > 1e-8 * (1.0 + (system.A * solution.R0).norm())) return std::nullopt;
    return flat;
}

std::vector<ScanRow> genuineness_scan(const Dataset& data, int K,
                                      const std::vector<double>& biases, int trials,
                                      std::uint64_t seed, const OrientationPolicy& policy,
                                      double eps_t, double box_M) {
    if (K < 1) throw config_error("genuineness_scan: K must be >= 1");
    if (trials < 1) throw config_error("genuineness_scan: trials must be >= 1");
    data.validate();
    const int d = data.d, D = data.D();

    std::vector<ScanRow> rows;
    rows.reserve(biases.size());
    for (std::size_t bi = 0; bi < biases.size(); ++bi) {
        const double bias = biases[bi];
        int genuine = 0, continuous = 0, inconclusive = 0;
        double pg_sum = 0.0, act_sum = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            auto eng = make_engine(seed, std::uint64_t(bi) * std::uint64_t(trials) +
                                             std::uint64_t(trial));
            std::normal_distribution<double> gauss(0.0, 1.0);
            NetworkWeights nw;
            nw.W.resize(K, D);
            for (int j = 0; j < K; ++j) {
                for (int c = 0; c < d; ++c) nw.W(j, c) = gauss(eng);
                nw.W(j, d) = bias;
            }
            nw.z = Vec::Ones(K);  // pattern depends only on W

            const ActivationPattern pattern = activation_pattern(nw, data);
            act_sum += activated_fraction(pattern);
            const CriticalSystem sys = assemble_system(pattern, data);
            const CriticalSolution sol = solve_critical(sys);
            const GenuinenessVerdict verdict =
                check_cell(sys, sol, pattern, data, policy, eps_t, box_M);

            if (sol.kind == SolutionKind::Continuous) ++continuous;
            if (verdict.status == GenuinenessStatus::Genuine ||
                verdict.status == GenuinenessStatus::Plateau)
                ++genuine;
            if (verdict.status == GenuinenessStatus::Inconclusive) ++inconclusive;
            pg_sum += verdict.pg_estimate;
        }
        ScanRow row;
        row.bias = bias;
        row.genuine_pct = 100.0 * genuine / trials;
        row.continuous_pct = 100.0 * continuous / trials;
        row.mean_pg = pg_sum / trials;
        row.activated_pct = 100.0 * act_sum / trials;
        row.inconclusive_pct = 100.0 * inconclusive / trials;
        row.seed = seed;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace landscape
