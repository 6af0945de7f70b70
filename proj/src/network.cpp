#include "landscape/network.hpp"

#include <cmath>

namespace landscape {

Vec EffectiveWeights::flat() const {
    Vec out(R.rows() * R.cols());
    for (int j = 0; j < R.rows(); ++j) out.segment(j * R.cols(), R.cols()) = R.row(j);
    return out;
}

EffectiveWeights effective_from_flat(const Vec& r, int K, int D) {
    if (r.size() != K * D) throw dimension_error("effective_from_flat: size mismatch");
    EffectiveWeights out;
    out.R.resize(K, D);
    for (int j = 0; j < K; ++j) out.R.row(j) = r.segment(j * D, D);
    return out;
}

namespace {
void require_dims(int wd, const Dataset& data) {
    if (wd != data.D()) throw dimension_error("network: weight/sample dimension mismatch");
}
}  // namespace

ActivationPattern activation_pattern(const NetworkWeights& weights, const Dataset& data) {
    require_dims(weights.D(), data);
    const Mat dots = data.X * weights.W.transpose();  // N x K
    ActivationPattern p;
    p.I = (dots.array() > 0.0).cast<int>();
    return p;
}

EffectiveWeights effective_weights(const NetworkWeights& weights) {
    EffectiveWeights e;
    e.R = weights.z.asDiagonal() * weights.W;
    return e;
}

double relu_loss(const NetworkWeights& weights, const Dataset& data) {
    require_dims(weights.D(), data);
    const Mat dots = data.X * weights.W.transpose();
    const Vec pred = dots.cwiseMax(0.0) * weights.z;
    return (pred - data.y).squaredNorm() / data.N();
}

double patterned_loss(const EffectiveWeights& R, const ActivationPattern& pattern,
                      const Dataset& data) {
    require_dims(R.D(), data);
    if (pattern.N() != data.N() || pattern.K() != R.K())
        throw dimension_error("patterned_loss: pattern dimensions mismatch");
    const Mat dots = data.X * R.R.transpose();  // N x K
    const Vec pred = (dots.array() * pattern.I.cast<double>().array()).rowwise().sum();
    return (pred - data.y).squaredNorm() / data.N();
}

double LossGradients::norm() const {
    return std::sqrt(dW.squaredNorm() + dz.squaredNorm());
}

LossGradients loss_gradients(const NetworkWeights& weights, const Dataset& data) {
    require_dims(weights.D(), data);
    const int n = data.N();
    const Mat dots = data.X * weights.W.transpose();              // N x K
    const Mat mask = (dots.array() > 0.0).cast<double>().matrix();  // I_ij
    const Mat r = weights.z.asDiagonal() * weights.W;             // R_j rows
    const Mat rdots = data.X * r.transpose();                     // R_j . x_i
    const Vec resid = (rdots.array() * mask.array()).rowwise().sum().matrix() - data.y;
    // dL/dR_j = (2/N) sum_i resid_i I_ij x_i  ->  rows of dR
    const Mat weighted = mask.array().colwise() * resid.array();  // N x K
    const Mat dR = (2.0 / n) * weighted.transpose() * data.X;     // K x D
    LossGradients g;
    g.dz = (dR.array() * weights.W.array()).rowwise().sum();
    g.dW = weights.z.asDiagonal() * dR;
    return g;
}

double activated_fraction(const ActivationPattern& pattern) {
    if (pattern.I.size() == 0) return 0.0;
    return pattern.I.cast<double>().sum() / double(pattern.I.size());
}

}  // namespace landscape
