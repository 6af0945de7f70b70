#pragma once

#include <vector>

#include "landscape/common.hpp"
#include "landscape/dataset.hpp"
#include "landscape/network.hpp"

namespace landscape {

enum class DescentStatus { Escaped, Trapped, Inconclusive, NumericalFailure };

struct GDParams {
    double stepsize = 1e-6;
    double grad_tol = 1e-3;
    long max_iters = 100000;
    long checkpoint_every = 1000;
};

struct DescentCheckpoint {
    long iteration = 0;
    double loss = 0;
    double grad_norm = 0;
};

struct DescentOutcome {
    DescentStatus status = DescentStatus::Inconclusive;
    long step = -1;  // first boundary-crossing step (Escaped only)
    long iterations = 0;
    double final_loss = 0;
    double final_grad_norm = 0;
    std::vector<DescentCheckpoint> checkpoints;
};

// Plain gradient descent on both layers from `start`, reporting whether the
// iterate leaves the activation cell the start defines: Escaped on the first
// step whose new weights put any sample on the other side of any neuron's
// hyperplane, Trapped when the full gradient norm drops below grad_tol while
// still inside, Inconclusive at the iteration cap, NumericalFailure on any
// non-finite loss or gradient. The start must lie strictly inside its cell.
DescentOutcome gd_verify(const NetworkWeights& start, const Dataset& data,
                         const GDParams& params = {});

}  // namespace landscape
