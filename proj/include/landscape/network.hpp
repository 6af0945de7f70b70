#pragma once

#include "landscape/common.hpp"
#include "landscape/dataset.hpp"

namespace landscape {

// One hidden ReLU layer: K hidden weights (rows of W, bias-augmented) and K
// output weights z. Prediction on x is sum_j z_j * max(0, w_j . x).
struct NetworkWeights {
    Mat W;  // K x D
    Vec z;  // K

    int K() const { return static_cast<int>(W.rows()); }
    int D() const { return static_cast<int>(W.cols()); }
};

// I(i,j) = 1 iff w_j . x_i > 0 (strict; an exact zero gives 0). Constant on a
// cell of weight space; every downstream object is parametrized by it.
struct ActivationPattern {
    PatternMat I;  // N x K, entries 0/1

    int N() const { return static_cast<int>(I.rows()); }
    int K() const { return static_cast<int>(I.cols()); }
};

// R_j = z_j * w_j. Inside one cell the network output is linear in R.
struct EffectiveWeights {
    Mat R;  // K x D

    int K() const { return static_cast<int>(R.rows()); }
    int D() const { return static_cast<int>(R.cols()); }
    Vec flat() const;  // row-major concatenation (R_1, R_2, ..., R_K)
};

EffectiveWeights effective_from_flat(const Vec& r, int K, int D);

ActivationPattern activation_pattern(const NetworkWeights& weights, const Dataset& data);
EffectiveWeights effective_weights(const NetworkWeights& weights);
double relu_loss(const NetworkWeights& weights, const Dataset& data);
double patterned_loss(const EffectiveWeights& R, const ActivationPattern& pattern,
                      const Dataset& data);

struct LossGradients {
    Mat dW;  // K x D
    Vec dz;  // K
    double norm() const;  // Euclidean norm of the full stacked gradient
};

// Analytic gradient of relu_loss at the current weights; the activation
// pattern is recomputed from the weights (subgradient choice I=0 on ties).
LossGradients loss_gradients(const NetworkWeights& weights, const Dataset& data);

double activated_fraction(const ActivationPattern& pattern);

}  // namespace landscape
