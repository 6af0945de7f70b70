#include <doctest.h>

#include <cmath>
#include <random>

#include "landscape/gauss1d.hpp"
#include "landscape/rng.hpp"

using namespace landscape;

namespace {

Weights1D make_weights(std::initializer_list<double> h, std::initializer_list<int> n) {
    Weights1D w;
    w.h.resize(int(h.size()));
    w.normals.resize(int(n.size()));
    int i = 0;
    for (double v : h) w.h(i++) = v;
    i = 0;
    for (int v : n) w.normals(i++) = v;
    return w;
}

}  // namespace

TEST_CASE("normal cdf and pdf hit reference values") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-12));
    CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-12));
    CHECK(normal_cdf(-40.0) >= 0.0);
    CHECK(normal_cdf(40.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("region partition activates the documented side of each weight") {
    const Weights1D w = make_weights({-0.05, 0.0, 0.05, 0.1}, {-1, -1, 1, 1});
    const RegionTable t = region_partition(w);
    REQUIRE(t.regions() == 5);
    CHECK(std::isinf(t.lo(0)));
    CHECK(t.hi(0) == -0.05);
    CHECK(t.lo(4) == 0.1);
    CHECK(std::isinf(t.hi(4)));
    // negative-normal weight k active on regions j <= k; positive on j > k
    const int expect[5][4] = {{1, 1, 0, 0},
                              {0, 1, 0, 0},
                              {0, 0, 0, 0},
                              {0, 0, 1, 0},
                              {0, 0, 1, 1}};
    for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 4; ++k) CHECK(t.I(j, k) == expect[j][k]);
}

TEST_CASE("weights must be strictly ascending with unit normals") {
    CHECK_THROWS_AS(region_partition(make_weights({0.0, 0.0}, {1, 1})), config_error);
    CHECK_THROWS_AS(region_partition(make_weights({1.0, 0.0}, {1, 1})), config_error);
    CHECK_THROWS_AS(region_partition(make_weights({0.0, 1.0}, {1, 2})), config_error);
}

TEST_CASE("region moments match Monte-Carlo truncated moments") {
    const double a = -0.4, b = 0.9;
    const RegionMoments m = region_moments(a, b);
    auto eng = make_engine(5, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 1000000;
    long cnt_p = 0, cnt_m = 0;
    double sum_p = 0, sum_m = 0;
    for (int i = 0; i < n; ++i) {
        const double xp = 1.0 + gauss(eng);
        if (xp > a && xp <= b) {
            ++cnt_p;
            sum_p += xp;
        }
        const double xm = -1.0 + gauss(eng);
        if (xm > a && xm <= b) {
            ++cnt_m;
            sum_m += xm;
        }
    }
    CHECK(std::abs(m.P_plus - double(cnt_p) / n) < 3e-3);
    CHECK(std::abs(m.P_minus - double(cnt_m) / n) < 3e-3);
    CHECK(std::abs(m.m1_plus - sum_p / n) < 3e-3);
    CHECK(std::abs(m.m1_minus - sum_m / n) < 3e-3);
    CHECK(std::abs(m.xbar_plus - sum_p / double(cnt_p)) < 3e-3);
}

TEST_CASE("moments of a far-tail region underflow to the empty flag") {
    const RegionMoments m = region_moments(45.0, 46.0);
    CHECK(m.empty_plus);
    CHECK(m.empty_minus);
}

TEST_CASE("assembled 1d system is symmetric positive semidefinite") {
    const Weights1D w = make_weights({-0.5, 0.1, 0.4}, {-1, 1, 1});
    const RegionTable t = region_partition(w);
    const System1D sys = assemble_1d_system(t, moment_table(t));
    CHECK((sys.F - sys.F.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    const Eigen::SelfAdjointEigenSolver<Mat> es(sys.F);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("empirical system converges to the analytic one") {
    const Weights1D w = make_weights({-0.3, 0.6}, {-1, 1});
    const RegionTable t = region_partition(w);
    const System1D analytic = assemble_1d_system(t, moment_table(t));
    auto eng = make_engine(31, 0);
    const Dataset1D ds = generate_1d_dataset(200000, eng);
    const System1D emp = assemble_1d_empirical(w, ds);
    // analytic masses are per class pair (each class density has unit mass),
    // the dataset holds N/2 samples per class
    const double pairs = double(ds.N()) / 2.0;
    CHECK((emp.F / pairs - analytic.F).cwiseAbs().maxCoeff() < 0.02);
    CHECK((emp.f / pairs - analytic.f).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("single-weight optimum and existence probability match pinned values") {
    const Weights1D w = make_weights({0.0}, {1});
    const RegionTable t = region_partition(w);
    const System1D sys = assemble_1d_system(t, moment_table(t));
    const Positions1D pos = solve_optimal_positions(sys.F, sys.f);
    REQUIRE(pos.h_star.size() == 1);
    CHECK_FALSE(pos.unconstrained[0]);
    CHECK(pos.h_star(0) == doctest::Approx(0.48394144903828695).epsilon(1e-9));
    const double g = gap_probability(0.0, pos.h_star(0));
    CHECK(g == doctest::Approx(0.11699726540161814).epsilon(1e-9));
    CHECK(std::abs(existence_probability({g}, 100) - 3.9464341079773212e-06) < 1e-11);
    CHECK(std::abs(existence_probability({g}, 100) - std::pow(1.0 - g, 100)) < 1e-17);
    CHECK(gap_union_bound({0.7, 0.6}) == 1.0);
    CHECK(gap_union_bound({0.1, 0.2}) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("two-weight closed form equals the minimum-norm linear solve") {
    auto eng = make_engine(41, 0);
    std::uniform_real_distribution<double> u2(-3.0, 3.0), gap(0.01, 4.0);
    for (int rep = 0; rep < 25; ++rep) {
        const double x_w2 = u2(eng);
        const double x_w1 = x_w2 + gap(eng);
        const auto [h1, h2] = two_weight_closed_form(x_w1, x_w2);
        const Weights1D w = make_weights({x_w2, x_w1}, {-1, 1});
        const RegionTable t = region_partition(w);
        const System1D sys = assemble_1d_system(t, moment_table(t));
        const Positions1D pos = solve_optimal_positions(sys.F, sys.f);
        REQUIRE(pos.h_star.size() == 2);
        CHECK(std::abs(pos.h_star(1) - h1) < 1e-10);
        CHECK(std::abs(pos.h_star(0) - h2) < 1e-10);
    }
}

TEST_CASE("mirror symmetry flips the optimum sign") {
    const auto [h1, h2] = two_weight_closed_form(0.48394144903828695, -0.48394144903828695);
    CHECK(h1 == doctest::Approx(-h2).epsilon(1e-12));
}

TEST_CASE("sweep scan tracks the moved weight through re-sorting") {
    const Weights1D base = make_weights({0.0, 1.0}, {-1, 1});
    Vec grid(3);
    grid << -1.0, 0.5, 2.0;  // moved weight 1 crosses weight 0's position
    const auto pts = sweep_scan(base, 1, grid, 100);
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) {
        CHECK(p.h_star.size() == 2);
        CHECK(p.pg_moved >= 0.0);
        CHECK(p.pg_moved <= p.pg_max + 1e-15);
        CHECK(p.pt >= 0.0);
        CHECK(p.pt <= 1.0);
        CHECK(p.pt_moved >= p.pt - 1e-15);  // joint is never likelier than a marginal
    }
    CHECK(pts[0].coord == -1.0);
    CHECK(pts[2].coord == 2.0);
}

TEST_CASE("shift scan is invariant under joint translation of a mirror pair") {
    // mirrored two-weight layout translated far from the class means still
    // reports coherent probabilities
    const Weights1D base = make_weights({-0.5, 0.5}, {-1, 1});
    Vec deltas(2);
    deltas << 0.0, 0.25;
    const auto pts = shift_scan(base, deltas, 50);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].coord == 0.0);
    CHECK(pts[1].coord == 0.25);
    CHECK(pts[0].pg_max > 0.0);
    CHECK(pts[0].pt < 1.0);
}

TEST_CASE("product scan decouples into the two marginals") {
    Vec g1(1), g2(1);
    g1 << 5.0;
    g2 << -5.0;
    const auto pts = product2_scan(g1, g2, 100);
    REQUIRE(pts.size() == 1);
    const auto& p = pts.front();
    CHECK(p.coord == 5.0);
    CHECK(p.coord2 == -5.0);
    CHECK(p.h_star(0) == doctest::Approx(-4.2256673534141065).epsilon(1e-9));
    CHECK(p.h_star(1) == doctest::Approx(4.2256673534141065).epsilon(1e-9));
    // symmetric layout: joint probability is the square of either marginal
    CHECK(p.pt == doctest::Approx(p.pt_moved * p.pt_moved).epsilon(1e-9));
    CHECK(p.pt_moved == doctest::Approx(0.97059595087674422).epsilon(1e-9));
}

TEST_CASE("region index respects closed-right boundaries") {
    const Weights1D w = make_weights({-1.0, 0.5}, {-1, 1});
    CHECK(region_index(w, -2.0) == 0);
    CHECK(region_index(w, -1.0) == 0);  // boundary belongs to the left region
    CHECK(region_index(w, -0.999) == 1);
    CHECK(region_index(w, 0.5) == 1);
    CHECK(region_index(w, 0.6) == 2);
}

TEST_CASE("empirical genuineness and the sampled frequency are deterministic") {
    const Weights1D w = make_weights({0.0, 0.5}, {-1, 1});
    const double f1 = mc_existence_frequency(w, 50, 300, 13);
    const double f2 = mc_existence_frequency(w, 50, 300, 13);
    CHECK(f1 == f2);
    CHECK(f1 >= 0.0);
    CHECK(f1 <= 1.0);

    auto eng = make_engine(13, 7);
    const Dataset1D ds = generate_1d_dataset(60, eng);
    const bool g1 = empirical_genuine(w, ds);
    const bool g2 = empirical_genuine(w, ds);
    CHECK(g1 == g2);
}

TEST_CASE("dead weight far from all mass is pinned and unconstrained") {
    // the positive-normal weight at +40 has no class mass on its active side
    const Weights1D w = make_weights({0.0, 40.0}, {-1, 1});
    const RegionTable t = region_partition(w);
    const System1D sys = assemble_1d_system(t, moment_table(t));
    const Positions1D pos = solve_optimal_positions(sys.F, sys.f);
    CHECK(pos.unconstrained[1]);
    const auto pts = shift_scan(w, Vec::Zero(1), 100);
    REQUIRE(pts.size() == 1);
    CHECK(pts.front().pt > 0.0);  // dead weight contributes an empty gap, not a zero
}
