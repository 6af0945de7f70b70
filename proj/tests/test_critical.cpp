#include <doctest.h>

#include <random>

#include "landscape/critical.hpp"
#include "landscape/rng.hpp"

using namespace landscape;

namespace {

Mat random_matrix(int rows, int cols, std::mt19937_64& eng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = gauss(eng);
    return m;
}

NetworkWeights random_network(int K, int D, std::mt19937_64& eng) {
    NetworkWeights nw;
    nw.W = random_matrix(K, D, eng);
    nw.z = Vec::Ones(K);
    return nw;
}

}  // namespace

TEST_CASE("pseudoinverse of a diagonal matrix inverts the nonzero entries") {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 2.0;
    const PseudoInverse p = pseudoinverse(m);
    CHECK(p.rank == 1);
    CHECK(p.pinv(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(p.pinv(1, 1)) < 1e-14);
}

TEST_CASE("pseudoinverse satisfies the Penrose identities on rank-deficient input") {
    auto eng = make_engine(31, 0);
    for (int rep = 0; rep < 5; ++rep) {
        const Mat A = random_matrix(7, 3, eng) * random_matrix(3, 5, eng);  // rank 3
        const PseudoInverse p = pseudoinverse(A);
        CHECK(p.rank == 3);
        const double scale = A.norm();
        CHECK((A * p.pinv * A - A).norm() < 1e-10 * scale);
        CHECK((p.pinv * A * p.pinv - p.pinv).norm() < 1e-10 * p.pinv.norm());
        CHECK(((A * p.pinv) - (A * p.pinv).transpose()).norm() < 1e-10);
        CHECK(((p.pinv * A) - (p.pinv * A).transpose()).norm() < 1e-10);
    }
}

TEST_CASE("assembled system masks samples by the activation pattern") {
    Dataset ds = generate_gaussian_dataset(1, 1, 3);
    ds.X << 2.0, 1.0, -3.0, 1.0;
    ds.y << 1.0, -1.0;
    NetworkWeights nw;
    nw.W.resize(1, 2);
    nw.W << 1.0, 0.0;  // active only on the positive sample
    nw.z = Vec::Ones(1);
    const ActivationPattern p = activation_pattern(nw, ds);
    const CriticalSystem sys = assemble_system(p, ds);
    CHECK(sys.A.rows() == 2);
    CHECK(sys.A.cols() == 2);
    CHECK(sys.A(0, 0) == 2.0);
    CHECK(sys.A(0, 1) == 1.0);
    CHECK(sys.A(1, 0) == 0.0);
    CHECK(sys.A(1, 1) == 0.0);
}

TEST_CASE("minimum-norm solution solves the normal equations") {
    const Dataset ds = generate_gaussian_dataset(3, 40, 13);
    auto eng = make_engine(13, 1);
    for (int rep = 0; rep < 5; ++rep) {
        const NetworkWeights nw = random_network(2, 4, eng);
        const ActivationPattern p = activation_pattern(nw, ds);
        const CriticalSystem sys = assemble_system(p, ds);
        const CriticalSolution sol = solve_critical(sys);

        // stationarity regardless of rank
        const Vec residual_grad = sys.A.transpose() * (sys.A * sol.R0 - sys.y);
        CHECK(residual_grad.norm() < 1e-8 * (1.0 + sys.y.norm()) * sys.A.norm());

        if (sol.kind == SolutionKind::Unique) {
            const Vec direct = (sys.A.transpose() * sys.A).ldlt().solve(sys.A.transpose() * sys.y);
            CHECK((sol.R0 - direct).norm() < 1e-8 * (1.0 + direct.norm()));
        }
    }
}

TEST_CASE("projector is symmetric idempotent and annihilated by A") {
    const Dataset ds = generate_gaussian_dataset(2, 4, 19);  // N=8 < KD=9: continuous
    auto eng = make_engine(19, 1);
    const NetworkWeights nw = random_network(3, 3, eng);
    const ActivationPattern p = activation_pattern(nw, ds);
    const CriticalSystem sys = assemble_system(p, ds);
    const CriticalSolution sol = solve_critical(sys);
    CHECK(sol.kind == SolutionKind::Continuous);

    const Mat P = materialize_projector(sys, sol);
    CHECK((P * P - P).norm() < 1e-10);
    CHECK((P - P.transpose()).norm() < 1e-10);
    CHECK((sys.A * P).norm() < 1e-10 * (1.0 + sys.A.norm()));
    CHECK(P.trace() == doctest::Approx(double(sys.K * sys.D - sol.rank)).epsilon(1e-9));

    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        Vec v(sys.K * sys.D);
        for (int i = 0; i < v.size(); ++i) v(i) = gauss(eng);
        CHECK((apply_projector(sys, sol, v) - P * v).norm() < 1e-10 * (1.0 + v.norm()));
    }
}

TEST_CASE("loss is constant along projector directions and matches the patterned loss") {
    const Dataset ds = generate_gaussian_dataset(2, 4, 23);
    auto eng = make_engine(23, 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const NetworkWeights nw = random_network(3, 3, eng);
    const ActivationPattern p = activation_pattern(nw, ds);
    const CriticalSystem sys = assemble_system(p, ds);
    const CriticalSolution sol = solve_critical(sys);

    const double base = loss_at_critical(sys, sol);
    CHECK(base == doctest::Approx(patterned_loss(effective_from_flat(sol.R0, sys.K, sys.D), p,
                                                 ds)).epsilon(1e-8));
    for (int rep = 0; rep < 10; ++rep) {
        Vec c(sys.K * sys.D);
        for (int i = 0; i < c.size(); ++i) c(i) = gauss(eng);
        const Vec shifted = sol.R0 + apply_projector(sys, sol, c);
        const double moved = patterned_loss(effective_from_flat(shifted, sys.K, sys.D), p, ds);
        CHECK(moved == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("solution kind tracks rank against the unknown count") {
    const Dataset big = generate_gaussian_dataset(2, 50, 29);  // N=100 >> KD=6
    auto eng = make_engine(29, 1);
    const NetworkWeights nw = random_network(2, 3, eng);
    const CriticalSystem sys = assemble_system(activation_pattern(nw, big), big);
    const CriticalSolution sol = solve_critical(sys);
    CHECK(sol.rank == 6);
    CHECK(sol.kind == SolutionKind::Unique);
    CHECK(materialize_projector(sys, sol).norm() < 1e-10);
}
