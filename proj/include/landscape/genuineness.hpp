#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "landscape/common.hpp"
#include "landscape/critical.hpp"
#include "landscape/dataset.hpp"
#include "landscape/lpfeas.hpp"
#include "landscape/network.hpp"

namespace landscape {

// Per-neuron sign choices tried when testing whether a critical point is a
// genuine local minimum. FromMinNorm picks, per neuron, the sign with fewer
// violated samples at the minimum-norm point (ties -> +1). Exhaustive
// enumerates sign vectors (capped by max_K); Explicit uses explicit_signs.
enum class OrientationMode { AllPositive, AllNegative, FromMinNorm, Exhaustive, Explicit };

struct OrientationPolicy {
    std::vector<OrientationMode> modes;
    int max_K = 12;            // Exhaustive guard
    IVec explicit_signs;       // Explicit mode only, entries in {-1, +1}

    static OrientationPolicy defaults();  // {AllPositive, AllNegative, FromMinNorm}
};

enum class GenuinenessStatus { Genuine, NotGenuine, Plateau, Inconclusive };

struct GenuinenessVerdict {
    GenuinenessStatus status = GenuinenessStatus::Inconclusive;
    std::optional<Vec> witness;     // family displacement c (continuous Genuine)
    IVec per_neuron_orientation;    // best sign vector found
    double pg_estimate = 0.0;       // empirical gap fraction at the tested point
    SolutionKind kind = SolutionKind::Unique;
    long violated_count = 0;        // violations under the best orientation
    std::string note;
};

// Sign test for an isolated critical point: genuine iff some orientation s
// has s_j R_j . x_i > tau on every active sample and <= tau on every inactive
// one, with tau = 1e-9 max(1, |R_j| |x_i|).
GenuinenessVerdict check_isolated(const EffectiveWeights& Rstar, const ActivationPattern& pattern,
                                  const Dataset& data,
                                  const OrientationPolicy& policy = OrientationPolicy::defaults());

// Half-space system over the family displacement c (dimension K*D): row
// (i, j) has a = s_j (P e_ij)^T restricted to sample i's embedding in block j
// and b = s_j (x_i . R0_j); strict when I_ij = 1, non-strict reversed when 0.
InequalitySystem build_halfspace_system(const CriticalSystem& system,
                                        const CriticalSolution& solution,
                                        const ActivationPattern& pattern, const Dataset& data,
                                        const IVec& orientation, double box_M = 1e6);

// Genuineness of a continuous critical family: Plateau for the all-dead
// pattern, otherwise margin-LP feasibility per candidate orientation.
// A zero projector (full-rank system) reduces exactly to check_isolated.
GenuinenessVerdict check_continuous(const CriticalSystem& system, const CriticalSolution& solution,
                                    const ActivationPattern& pattern, const Dataset& data,
                                    const OrientationPolicy& policy = OrientationPolicy::defaults(),
                                    double eps_t = 1e-9, double box_M = 1e6);

// Routes by solution kind: Unique -> check_isolated at the minimum-norm
// point, Continuous -> check_continuous.
GenuinenessVerdict check_cell(const CriticalSystem& system, const CriticalSolution& solution,
                              const ActivationPattern& pattern, const Dataset& data,
                              const OrientationPolicy& policy = OrientationPolicy::defaults(),
                              double eps_t = 1e-9, double box_M = 1e6);

// Fraction of samples inside the worst neuron's sign-violation gap at Rstar:
// max over neurons of (min over signs of violation count) / N.
double empirical_gap_probability(const EffectiveWeights& Rstar, const NetworkWeights& weights,
                                 const ActivationPattern& pattern, const Dataset& data);

// Constructive genuine point inside the all-active family (pattern all-ones,
// K >= 2): redistributes the summed minimum-norm solution along the first
// weight direction with mixed orientations (+, -, +, ..., +), keeping every
// neuron strictly on its side and the fit unchanged. Returns the flattened
// effective weights, or nullopt when the construction fails verification.
std::optional<Vec> all_active_witness(const CriticalSystem& system,
                                      const CriticalSolution& solution,
                                      const ActivationPattern& pattern, const Dataset& data,
                                      const NetworkWeights& weights);

struct ScanRow {
    double bias = 0.0;
    double genuine_pct = 0.0;       // Genuine or Plateau verdicts
    double continuous_pct = 0.0;    // solution kind Continuous
    double mean_pg = 0.0;
    double activated_pct = 0.0;
    double inconclusive_pct = 0.0;
    std::uint64_t seed = 0;
};

// One row per bias: directions resampled per trial from the standard normal
// on the d raw coordinates with the bias coordinate pinned; the dataset is
// shared across all biases and trials. Deterministic per (seed, trial index).
std::vector<ScanRow> genuineness_scan(const Dataset& data, int K,
                                      const std::vector<double>& biases, int trials,
                                      std::uint64_t seed,
                                      const OrientationPolicy& policy = OrientationPolicy::defaults(),
                                      double eps_t = 1e-9, double box_M = 1e6);

}  // namespace landscape
