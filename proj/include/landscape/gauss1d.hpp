#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "landscape/common.hpp"

namespace landscape {

// Two unit-variance Gaussian classes on the line, equal priors, labels +1/-1.
struct ClassModel1D {
    double x_plus = 1.0;
    double x_minus = -1.0;
};

double normal_cdf(double x);  // Phi
double normal_pdf(double x);  // phi

// K weights on the line: position h_k (strictly ascending) and normal n_k in
// {+1, -1}; the output weight is implied equal to the normal, so the neuron
// contributes n_k * max(0, n_k * (x - h_k)).
struct Weights1D {
    Vec h;
    IVec normals;

    int K() const { return static_cast<int>(h.size()); }
};

// K+1 intervals (lo_j, hi_j], leftmost open at -inf, rightmost closed at
// +inf; I(j, k) = 1 iff interval j lies on weight k's active side.
struct RegionTable {
    Vec lo, hi;    // K+1 each
    PatternMat I;  // (K+1) x K

    int regions() const { return static_cast<int>(lo.size()); }
    int K() const { return static_cast<int>(I.cols()); }
};

RegionTable region_partition(const Weights1D& weights);

// Truncated moments of one region under one class model. m1 is the stable
// unnormalized first moment P * xbar (finite even when P underflows); xbar is
// meaningful only when the matching empty flag is false.
struct RegionMoments {
    double P_plus = 0, P_minus = 0;
    double xbar_plus = 0, xbar_minus = 0;
    double m1_plus = 0, m1_minus = 0;
    bool empty_plus = false, empty_minus = false;
};

RegionMoments region_moments(double a, double b, const ClassModel1D& model = {});

struct MomentTable {
    std::vector<RegionMoments> rows;
};

MomentTable moment_table(const RegionTable& regions, const ClassModel1D& model = {});

struct System1D {
    Mat F;
    Vec f;
};

// Expected-loss stationarity system over positions h (unit output weights):
// F(l,k) = sum_j I_jl I_jk (P_j+ + P_j-),
// f(l)   = sum_j I_jl [count_j (m1_j+ + m1_j-) - (P_j+ - P_j-)].
System1D assemble_1d_system(const RegionTable& regions, const MomentTable& moments);

struct Positions1D {
    Vec h_star;
    std::vector<bool> unconstrained;  // dead weight: zero activated mass
};

// Minimum-norm solution of F h = f; weights with vanishing diagonal mass are
// flagged unconstrained (their position is the minimum-norm completion).
Positions1D solve_optimal_positions(const Mat& F, const Vec& f);

// Optimal positions for the two-weight layout (left weight at x_w2 with
// normal -1, right weight at x_w1 with normal +1, x_w2 < x_w1), each solved
// over its own exclusive region. Returns (h1*, h2*). A region whose class
// mass underflows pins the position to the weight itself (empty gap).
std::pair<double, double> two_weight_closed_form(double x_w1, double x_w2,
                                                 const ClassModel1D& model = {});

// Probability mass of the interval between a weight and its optimum:
// 0.5 |Phi(x*-x_+) - Phi(x_w-x_+)| + 0.5 |Phi(x*-x_-) - Phi(x_w-x_-)|.
double gap_probability(double x_w, double x_w_star, const ClassModel1D& model = {});

// P_t = (1 - max gap)^N: chance that N i.i.d. samples all miss the worst gap.
double existence_probability(const std::vector<double>& gap_probs, int N);

// Union upper bound min(1, sum of gaps) — diagnostic companion to the max.
double gap_union_bound(const std::vector<double>& gap_probs);

// One point of a probability-landscape scan.
struct Scan1DPoint {
    double coord = 0;        // moved-weight position, shift delta, or first grid axis
    double coord2 = 0;       // second axis (product scan only)
    Vec h_star;
    double pg_moved = 0;     // the moved weight's own gap
    double pt_moved = 1;     // (1 - pg_moved)^N
    double pg_max = 0;       // max over constrained gaps
    double pg_union = 0;
    double pt = 1;           // (1 - pg_max)^N
};

// One weight sweeps a position grid, the rest stay put (weights re-sorted at
// every grid point, the moved identity tracked through the sort).
std::vector<Scan1DPoint> sweep_scan(const Weights1D& base, int moved_index, const Vec& grid,
                                    int N, const ClassModel1D& model = {});

// All weights translate jointly by each delta.
std::vector<Scan1DPoint> shift_scan(const Weights1D& base, const Vec& deltas, int N,
                                    const ClassModel1D& model = {});

// Two-weight grid: P_t at (x_w1, x_w2) is the product of the two per-weight
// marginals, which the closed form decouples exactly.
std::vector<Scan1DPoint> product2_scan(const Vec& grid_w1, const Vec& grid_w2, int N,
                                       const ClassModel1D& model = {});

// --- empirical (finite-sample) pipeline -----------------------------------

struct Dataset1D {
    Vec x;
    Vec y;  // +1 / -1

    int N() const { return static_cast<int>(x.size()); }
};

// N/2 positive-class samples then N/2 negative-class, means per the model.
Dataset1D generate_1d_dataset(int N, std::mt19937_64& eng, const ClassModel1D& model = {});

// Index j of the interval (h_{j-1}, h_j] containing x.
int region_index(const Weights1D& weights, double x);

// Sample-sum analogue of assemble_1d_system over one dataset.
System1D assemble_1d_empirical(const Weights1D& weights, const Dataset1D& data);

// Empirical squared loss at the configuration (output weights = normals).
double empirical_loss_1d(const Weights1D& weights, const Dataset1D& data);

// True iff the dataset's optimal positions leave every constrained weight's
// gap (h_k, h_k*) free of samples (strict interior); dead weights are skipped.
bool empirical_genuine(const Weights1D& weights, const Dataset1D& data);

// Fraction of M independent datasets of size N that are empirically genuine.
// Dataset m uses the RNG stream (seed, m).
double mc_existence_frequency(const Weights1D& weights, int N, int M, std::uint64_t seed,
                              const ClassModel1D& model = {});

}  // namespace landscape
