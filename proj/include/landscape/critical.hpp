#pragma once

#include "landscape/common.hpp"
#include "landscape/dataset.hpp"
#include "landscape/network.hpp"

namespace landscape {

// Least-squares system of one cell: row i is the sample x_i masked into the
// K column blocks by the activation pattern, so A @ flat(R) is the cell's
// linear prediction vector.
struct CriticalSystem {
    Mat A;  // N x (K*D)
    Vec y;  // N
    int K = 0;
    int D = 0;
};

enum class SolutionKind { Unique, Continuous };

// Stationary set of the cell's quadratic: { R0 + P c : c in R^{KD} } with
// P = I - pinv(A) A. P is kept factored through Apinv (KD x N) because the
// dense KD x KD matrix is prohibitively large for image-scale inputs; use
// apply_projector for the action and projector() to materialize when small.
struct CriticalSolution {
    Vec R0;      // pinv(A) y, the minimum-norm critical point
    Mat Apinv;   // KD x N
    int rank = 0;
    SolutionKind kind = SolutionKind::Unique;
};

struct PseudoInverse {
    Mat pinv;
    int rank = 0;
};

// SVD-based Moore-Penrose inverse. Singular values below
// max(rows, cols) * eps * sigma_max are treated as zero.
PseudoInverse pseudoinverse(const Mat& m);

CriticalSystem assemble_system(const ActivationPattern& pattern, const Dataset& data);
CriticalSolution solve_critical(const CriticalSystem& system);
double loss_at_critical(const CriticalSystem& system, const CriticalSolution& solution);

// (I - pinv(A) A) v without materializing the projector.
Vec apply_projector(const CriticalSystem& system, const CriticalSolution& solution, const Vec& v);

// Dense KD x KD projector; intended for small systems and tests.
Mat materialize_projector(const CriticalSystem& system, const CriticalSolution& solution);

}  // namespace landscape
