#include <doctest.h>

#include <cmath>

#include "landscape/descent.hpp"
#include "landscape/network.hpp"

using namespace landscape;

namespace {

Dataset line_dataset(std::initializer_list<double> xs, std::initializer_list<double> ys) {
    Dataset ds;
    ds.d = 1;
    ds.X.resize(int(xs.size()), 2);
    ds.y.resize(int(ys.size()));
    int i = 0;
    for (double v : xs) {
        ds.X(i, 0) = v;
        ds.X(i, 1) = 1.0;
        ++i;
    }
    i = 0;
    for (double v : ys) ds.y(i++) = v;
    ds.validate();
    return ds;
}

NetworkWeights single_neuron(double w0, double w1, double z) {
    NetworkWeights nw;
    nw.W.resize(1, 2);
    nw.W << w0, w1;
    nw.z.resize(1);
    nw.z << z;
    return nw;
}

}  // namespace

TEST_CASE("dead network is trapped on the plateau immediately") {
    const Dataset ds = generate_gaussian_dataset(2, 20, 111);
    NetworkWeights nw;
    nw.W.resize(3, 3);
    nw.W.setZero();
    nw.W.col(2).setConstant(-20.0);
    nw.z = Vec::Ones(3);
    const DescentOutcome r = gd_verify(nw, ds);
    CHECK(r.status == DescentStatus::Trapped);
    CHECK(r.iterations == 0);
    CHECK(std::abs(r.final_loss - 1.0) < 1e-12);
    CHECK(r.final_grad_norm == 0.0);
}

TEST_CASE("exact interpolant of its active set is a trapped critical point") {
    // w=(1,-1), z=1 fits the only active sample (x=2 -> prediction 1) exactly;
    // dead samples contribute loss but no gradient
    const Dataset ds = line_dataset({2.0, -1.0, -3.0}, {1.0, -1.0, -1.0});
    const NetworkWeights nw = single_neuron(1.0, -1.0, 1.0);
    const DescentOutcome r = gd_verify(nw, ds);
    CHECK(r.status == DescentStatus::Trapped);
    CHECK(r.iterations == 0);
    CHECK(r.final_grad_norm == 0.0);
    CHECK(r.final_loss == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("underfit start escapes its cell across the nearest hyperplane") {
    // residual pulls the hyperplane towards the inactive sample at x=1
    const Dataset ds = line_dataset({2.0, 1.0}, {1.0, -1.0});
    const NetworkWeights nw = single_neuron(1.0, -1.5, 0.1);
    GDParams params;
    params.stepsize = 1e-3;
    params.max_iters = 200000;
    params.checkpoint_every = 100;
    const DescentOutcome r = gd_verify(nw, ds, params);
    CHECK(r.status == DescentStatus::Escaped);
    CHECK(r.step >= 1);
    CHECK(r.step == r.iterations);
    // loss decreases monotonically at this stepsize while inside the cell
    for (std::size_t i = 1; i < r.checkpoints.size(); ++i)
        CHECK(r.checkpoints[i].loss <= r.checkpoints[i - 1].loss + 1e-12);
}

TEST_CASE("iteration cap reports inconclusive with checkpoints") {
    const Dataset ds = line_dataset({2.0, 1.0}, {1.0, -1.0});
    const NetworkWeights nw = single_neuron(1.0, -1.5, 0.1);
    GDParams params;
    params.stepsize = 1e-9;  // too small to reach anything
    params.max_iters = 500;
    params.checkpoint_every = 100;
    const DescentOutcome r = gd_verify(nw, ds, params);
    CHECK(r.status == DescentStatus::Inconclusive);
    CHECK(r.iterations == 500);
    CHECK(r.checkpoints.size() == 6);
    CHECK(r.checkpoints.front().iteration == 0);
    CHECK(r.checkpoints.back().iteration == 500);
}

TEST_CASE("non-finite loss is a numerical failure") {
    const Dataset ds = line_dataset({2.0, 1.0}, {1.0, -1.0});
    const NetworkWeights nw = single_neuron(1e200, 1.0, 1e200);
    const DescentOutcome r = gd_verify(nw, ds);
    CHECK(r.status == DescentStatus::NumericalFailure);
}

TEST_CASE("a start on a cell boundary is rejected") {
    const Dataset ds = line_dataset({2.0, 1.0}, {1.0, -1.0});
    const NetworkWeights nw = single_neuron(1.0, -1.0, 1.0);  // w.x = 0 at x=1
    CHECK_THROWS_AS(gd_verify(nw, ds), numerical_error);
}
