#include "landscape/descent.hpp"

#include <cmath>

#include "landscape/geometry.hpp"

namespace landscape {

DescentOutcome gd_verify(const NetworkWeights& start, const Dataset& data,
                         const GDParams& params) {
    if (start.D() != data.D()) throw dimension_error("gd_verify: shape mismatch");
    if (params.stepsize <= 0 || params.grad_tol <= 0 || params.max_iters < 1)
        throw config_error("gd_verify: positive stepsize, grad_tol, max_iters required");
    if (((data.X * start.W.transpose()).array() == 0.0).any())
        throw numerical_error("gd_verify: start lies on a cell boundary");

    DescentOutcome out;
    NetworkWeights cur = start;
    for (long it = 0;; ++it) {
        const double loss = relu_loss(cur, data);
        const LossGradients g = loss_gradients(cur, data);
        const double gnorm = g.norm();
        out.iterations = it;
        out.final_loss = loss;
        out.final_grad_norm = gnorm;
        if (!std::isfinite(loss) || !std::isfinite(gnorm)) {
            out.status = DescentStatus::NumericalFailure;
            return out;
        }
        if (it % params.checkpoint_every == 0) out.checkpoints.push_back({it, loss, gnorm});
        if (gnorm < params.grad_tol) {
            out.status = DescentStatus::Trapped;
            return out;
        }
        if (it >= params.max_iters) {
            out.status = DescentStatus::Inconclusive;
            return out;
        }
        // Simultaneous update of both layers from the current gradients.
        NetworkWeights next;
        next.W = cur.W - params.stepsize * g.dW;
        next.z = cur.z - params.stepsize * g.dz;
        if (crossed_boundary(start, next, data)) {
            out.status = DescentStatus::Escaped;
            out.step = it + 1;
            out.iterations = it + 1;
            out.final_loss = relu_loss(next, data);
            out.final_grad_norm = loss_gradients(next, data).norm();
            return out;
        }
        cur = std::move(next);
    }
}

}  // namespace landscape
