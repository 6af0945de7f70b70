#include <doctest.h>

#include <cstdio>
#include <random>

#include "landscape/lpfeas.hpp"
#include "landscape/rng.hpp"

using namespace landscape;

namespace {

InequalitySystem make_system(int n, double box_M = 1e6) {
    InequalitySystem sys;
    sys.n = n;
    sys.box_M = box_M;
    sys.strict_A.resize(0, n);
    sys.strict_b.resize(0);
    sys.nonstrict_A.resize(0, n);
    sys.nonstrict_b.resize(0);
    return sys;
}

void add_strict(InequalitySystem& sys, std::initializer_list<double> a, double b) {
    const int r = sys.strict_count();
    sys.strict_A.conservativeResize(r + 1, sys.n);
    sys.strict_b.conservativeResize(r + 1);
    int c = 0;
    for (double v : a) sys.strict_A(r, c++) = v;
    sys.strict_b(r) = b;
}

void add_nonstrict(InequalitySystem& sys, std::initializer_list<double> a, double b) {
    const int r = sys.nonstrict_count();
    sys.nonstrict_A.conservativeResize(r + 1, sys.n);
    sys.nonstrict_b.conservativeResize(r + 1);
    int c = 0;
    for (double v : a) sys.nonstrict_A(r, c++) = v;
    sys.nonstrict_b(r) = b;
}

InequalitySystem random_system(std::mt19937_64& eng, int n, int ns, int nq, double box_M) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    InequalitySystem sys = make_system(n, box_M);
    for (int r = 0; r < ns; ++r) {
        sys.strict_A.conservativeResize(r + 1, n);
        sys.strict_b.conservativeResize(r + 1);
        for (int c = 0; c < n; ++c) sys.strict_A(r, c) = gauss(eng);
        sys.strict_b(r) = 0.5 * gauss(eng);
    }
    for (int r = 0; r < nq; ++r) {
        sys.nonstrict_A.conservativeResize(r + 1, n);
        sys.nonstrict_b.conservativeResize(r + 1);
        for (int c = 0; c < n; ++c) sys.nonstrict_A(r, c) = gauss(eng);
        sys.nonstrict_b(r) = 0.5 * gauss(eng);
    }
    return sys;
}

void check_witness(const InequalitySystem& sys, const LPResult& res) {
    REQUIRE(res.status == LPStatus::Feasible);
    REQUIRE(res.witness.size() == sys.n);
    for (int i = 0; i < sys.n; ++i) CHECK(std::abs(res.witness(i)) <= sys.box_M * (1 + 1e-9));
    for (int r = 0; r < sys.strict_count(); ++r)
        CHECK(sys.strict_A.row(r).dot(res.witness) + sys.strict_b(r) > 0.0);
    for (int r = 0; r < sys.nonstrict_count(); ++r)
        CHECK(sys.nonstrict_A.row(r).dot(res.witness) + sys.nonstrict_b(r) <= 1e-7);
}

}  // namespace

TEST_CASE("single strict inequality saturates the unit margin cap") {
    InequalitySystem sys = make_system(1);
    add_strict(sys, {1.0}, 0.0);  // c > 0
    const LPResult res = feasibility(sys);
    CHECK(res.status == LPStatus::Feasible);
    CHECK(res.t == doctest::Approx(1.0).epsilon(1e-6));
    check_witness(sys, res);
}

TEST_CASE("squeezed margin reaches the exact optimum") {
    InequalitySystem sys = make_system(1);
    add_strict(sys, {1.0}, 0.0);       // c >= t
    add_nonstrict(sys, {1.0}, -0.5);   // c <= 0.5
    const LPResult res = feasibility(sys);
    CHECK(res.status == LPStatus::Feasible);
    CHECK(res.t == doctest::Approx(0.5).epsilon(1e-8));
    check_witness(sys, res);
}

TEST_CASE("contradictory pair is infeasible at zero margin") {
    InequalitySystem sys = make_system(1);
    add_strict(sys, {1.0}, 0.0);     // c >= t
    add_nonstrict(sys, {1.0}, 0.0);  // c <= 0
    const LPResult res = feasibility(sys);
    CHECK(res.status == LPStatus::Infeasible);
    CHECK(res.reason == "margin below threshold");
}

TEST_CASE("empty relaxed system is reported as such") {
    InequalitySystem sys = make_system(1);
    add_nonstrict(sys, {1.0}, 1.0);   // c <= -1
    add_nonstrict(sys, {-1.0}, 1.0);  // c >= 1
    const LPResult res = feasibility(sys);
    CHECK(res.status == LPStatus::Infeasible);
    CHECK(res.reason == "relaxed system infeasible");
}

TEST_CASE("margins below the threshold are rejected") {
    InequalitySystem sys = make_system(1);
    add_strict(sys, {1.0}, 0.0);
    add_nonstrict(sys, {1.0}, -1e-12);  // c <= 1e-12
    CHECK(feasibility(sys, 1e-9).status == LPStatus::Infeasible);
    CHECK(feasibility(sys, 1e-14).status == LPStatus::Feasible);
}

TEST_CASE("degenerate all-zero strict row cannot be satisfied") {
    InequalitySystem sys = make_system(2);
    add_strict(sys, {0.0, 0.0}, 0.0);  // 0 > 0
    add_strict(sys, {1.0, 0.0}, 0.0);
    CHECK(feasibility(sys).status == LPStatus::Infeasible);
}

TEST_CASE("verdicts agree with the exhaustive 2d oracle") {
    auto eng = make_engine(77, 0);
    std::uniform_int_distribution<int> rows(1, 4);
    int feasible = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const InequalitySystem sys = random_system(eng, 2, rows(eng), rows(eng), 10.0);
        const LPResult res = feasibility(sys);
        const LPStatus oracle = vertex_oracle_2d(sys);
        REQUIRE(res.status != LPStatus::Inconclusive);
        CHECK(res.status == oracle);
        if (res.status == LPStatus::Feasible) {
            ++feasible;
            check_witness(sys, res);
        }
    }
    CHECK(feasible > 10);  // the draw must exercise both verdicts
    CHECK(feasible < 90);
}

TEST_CASE("adding rows never raises the optimal margin") {
    auto eng = make_engine(78, 0);
    for (int rep = 0; rep < 20; ++rep) {
        InequalitySystem sys = random_system(eng, 3, 3, 2, 100.0);
        const LPResult before = feasibility(sys);
        InequalitySystem more = sys;
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int r = more.strict_count();
        more.strict_A.conservativeResize(r + 1, more.n);
        more.strict_b.conservativeResize(r + 1);
        for (int c = 0; c < more.n; ++c) more.strict_A(r, c) = gauss(eng);
        more.strict_b(r) = 0.5 * gauss(eng);
        const LPResult after = feasibility(more);
        if (before.status == LPStatus::Infeasible) CHECK(after.status == LPStatus::Infeasible);
        if (before.status == LPStatus::Feasible && after.status == LPStatus::Feasible)
            CHECK(after.t <= before.t + 1e-6);
    }
}

TEST_CASE("row scaling leaves the verdict unchanged") {
    auto eng = make_engine(79, 0);
    for (int rep = 0; rep < 20; ++rep) {
        InequalitySystem sys = random_system(eng, 2, 3, 2, 10.0);
        InequalitySystem scaled = sys;
        scaled.strict_A *= 1e3;
        scaled.strict_b *= 1e3;
        CHECK(feasibility(sys).status == feasibility(scaled).status);
    }
}

TEST_CASE("solver output is deterministic") {
    auto eng = make_engine(80, 0);
    const InequalitySystem sys = random_system(eng, 3, 4, 3, 50.0);
    const LPResult a = feasibility(sys);
    const LPResult b = feasibility(sys);
    CHECK(a.status == b.status);
    CHECK(a.t == b.t);
    if (a.status == LPStatus::Feasible) CHECK((a.witness - b.witness).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("system text round trip preserves rows and verdict") {
    auto eng = make_engine(81, 0);
    const InequalitySystem sys = random_system(eng, 3, 2, 2, 25.0);
    const std::string path = "unit_tmp_lpsys.txt";
    save_system(sys, path);
    const InequalitySystem back = load_system(path);
    CHECK(back.n == sys.n);
    CHECK(back.box_M == sys.box_M);
    CHECK((back.strict_A - sys.strict_A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.strict_b - sys.strict_b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.nonstrict_A - sys.nonstrict_A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.nonstrict_b - sys.nonstrict_b).cwiseAbs().maxCoeff() == 0.0);
    CHECK(feasibility(back).status == feasibility(sys).status);
    std::remove(path.c_str());
}
