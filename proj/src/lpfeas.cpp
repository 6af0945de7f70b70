#include "landscape/lpfeas.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace landscape {

namespace {

// The margin LP in primal form is  max e_t . v  s.t.  G v <= g  over the free
// vector v = (c, t).  Row layout of (G | g):
//   strict row r:    (-a_r, +1 | b_r)        [ a.c + b >= t ]
//   non-strict row:  (+a_r,  0 | -b_r)       [ a.c + b <= 0 ]
//   box, i < n:      (+e_i,  0 | M), (-e_i, 0 | M)
//   t rows:          (0, +1 | 1), (0, -1 | 0)
// G has up to thousands of rows but only n + 1 columns, so the simplex runs
// on the dual
//   min g.u  s.t.  G^T u = e_t,  u >= 0
// whose tableau is (n+2) x (#rows) instead of the transposed monster.
// The dual is bounded-feasible iff the primal is feasible (both share the
// optimal value t*), and dual unbounded iff the primal is infeasible.
//
// No artificial phase is needed: the "+e_i box" columns plus the "t <= 1"
// column form an identity basis matrix whose basic solution (0,...,0,1)
// matches the right-hand side e_t exactly, so the tableau is born in basic
// feasible form. The identity block appended after the real columns never
// enters the basis; it passively tracks B^-1, and the cost row over it holds
// -pi where pi = c_B B^-1 is the primal optimizer (c*, t*) at termination.
struct Tableau {
    int p = 0;  // dual equality rows = n + 1
    int m = 0;  // dual variables = primal constraint rows
    Mat T;      // (p+1) x (m + p + 1); last row = reduced costs, last col = rhs
    std::vector<int> basis;
    Vec cost;   // dual objective = primal rhs g
    double tol_pivot = 0.0;
    double tol_obj = 0.0;
};

void build_tableau(const InequalitySystem& sys, Tableau& tab) {
    const int n = sys.n;
    const int ns = sys.strict_count();
    const int nq = sys.nonstrict_count();
    tab.p = n + 1;
    tab.m = ns + nq + 2 * n + 2;
    tab.T = Mat::Zero(tab.p + 1, tab.m + tab.p + 1);
    tab.cost = Vec::Zero(tab.m);

    // Columns of the dual matrix G^T, one per primal row.
    int col = 0;
    for (int r = 0; r < ns; ++r, ++col) {
        tab.T.block(0, col, n, 1) = -sys.strict_A.row(r).transpose();
        tab.T(n, col) = 1.0;
        tab.cost(col) = sys.strict_b(r);
    }
    for (int r = 0; r < nq; ++r, ++col) {
        tab.T.block(0, col, n, 1) = sys.nonstrict_A.row(r).transpose();
        tab.cost(col) = -sys.nonstrict_b(r);
    }
    tab.basis.assign(std::size_t(tab.p), -1);
    for (int i = 0; i < n; ++i) {
        tab.T(i, col) = 1.0;
        tab.basis[std::size_t(i)] = col;
        tab.cost(col++) = sys.box_M;
        tab.T(i, col) = -1.0;
        tab.cost(col++) = sys.box_M;
    }
    tab.T(n, col) = 1.0;
    tab.basis[std::size_t(n)] = col;
    tab.cost(col++) = 1.0;  // t <= 1
    tab.T(n, col) = -1.0;
    tab.cost(col++) = 0.0;  // -t <= 0

    // B^-1 tracking block and rhs e_t.
    for (int i = 0; i < tab.p; ++i) tab.T(i, tab.m + i) = 1.0;
    tab.T(tab.p - 1, tab.m + tab.p) = 1.0;

    const double scale =
        std::max({1.0, sys.strict_A.size() ? sys.strict_A.cwiseAbs().maxCoeff() : 0.0,
                  sys.nonstrict_A.size() ? sys.nonstrict_A.cwiseAbs().maxCoeff() : 0.0});
    tab.tol_pivot = 1e-10 * scale;
    tab.tol_obj = 1e-9 * scale;
}

// Reduced-cost row from scratch: red(c) = cost(c) - c_B . T(:,c). Recomputing
// periodically flushes the rounding drift that row updates accumulate (the
// box costs are large, so the cost row carries big magnitudes).
void recompute_costs(Tableau& tab) {
    Vec cb(tab.p);
    for (int i = 0; i < tab.p; ++i) cb(i) = tab.cost(tab.basis[std::size_t(i)]);
    tab.T.row(tab.p).noalias() = -cb.transpose() * tab.T.topRows(tab.p);
    tab.T.row(tab.p).head(tab.m) += tab.cost.transpose();
}

void pivot(Tableau& tab, int row, int col) {
    tab.T.row(row) /= tab.T(row, col);
    for (int i = 0; i <= tab.p; ++i) {
        if (i == row) continue;
        const double f = tab.T(i, col);
        if (f != 0.0) tab.T.row(i) -= f * tab.T.row(row);
    }
    tab.basis[std::size_t(row)] = col;
}

// Entering column among the real columns only. Dantzig (most negative
// reduced cost) by default; Bland (lowest index) once degeneracy stalls
// progress. Returns -1 at optimum.
int entering(const Tableau& tab, bool bland) {
    int best = -1;
    double best_red = -tab.tol_obj;
    for (int c = 0; c < tab.m; ++c) {
        const double red = tab.T(tab.p, c);
        if (red < best_red) {
            if (bland) return c;
            best_red = red;
            best = c;
        }
    }
    return best;
}

// Min-ratio leaving row; ties broken by lowest basis index (anti-cycling).
// Returns -1 when the column is unblocked (dual unbounded).
int leaving(const Tableau& tab, int enter) {
    const int rhs_col = tab.m + tab.p;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < tab.p; ++i) {
        const double a = tab.T(i, enter);
        if (a <= tab.tol_pivot) continue;
        const double ratio = tab.T(i, rhs_col) / a;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             tab.basis[std::size_t(i)] < tab.basis[std::size_t(leave)])) {
            leave = i;
            best_ratio = ratio;
        }
    }
    return leave;
}

}  // namespace

LPResult feasibility(const InequalitySystem& sys, double eps_t) {
    LPResult res;
    if (sys.n < 1) {
        res.reason = "system needs n >= 1";
        return res;
    }
    if ((sys.strict_count() && sys.strict_A.cols() != sys.n) ||
        (sys.nonstrict_count() && sys.nonstrict_A.cols() != sys.n))
        throw dimension_error("feasibility: row width != n");

    Tableau tab;
    build_tableau(sys, tab);
    const int rhs_col = tab.m + tab.p;

    // The crash basis is heavily degenerate (every box column basic at zero),
    // which can stall the walk on zero-length steps for astronomically many
    // pivots. A fixed positive perturbation of the right-hand side makes the
    // start (and generically every later vertex) nondegenerate; the exact rhs
    // is restored from the B^-1 block once the perturbed walk terminates.
    const double delta0 = 1e-7;
    for (int i = 0; i < tab.p; ++i)
        tab.T(i, rhs_col) += delta0 * (1.0 + double(i + 1) / double(tab.p + 1));
    recompute_costs(tab);

    const long cap = 50L * (tab.m + tab.p);
    const long stall_limit = 5L * tab.p + 100;
    long iters = 0, last_improve = 0;
    int refreshes = 0;
    bool bland = false;
    bool unbounded = false;
    double best_obj = -tab.T(tab.p, rhs_col);

    while (true) {
        int enter = entering(tab, bland);
        if (enter < 0) {
            // Optimum per the maintained cost row; verify against a fresh one.
            recompute_costs(tab);
            enter = entering(tab, bland);
            if (enter < 0) break;
            if (++refreshes > 30) {
                res.reason = "cost row unstable";
                return res;
            }
        }
        int leave = leaving(tab, enter);
        if (leave < 0) {
            // Unblocked improving column: confirm on a fresh cost row before
            // concluding the dual is genuinely unbounded.
            recompute_costs(tab);
            if (tab.T(tab.p, enter) >= -tab.tol_obj) continue;
            unbounded = true;
            break;
        }
        pivot(tab, leave, enter);
        if (++iters > cap) {
            res.reason = "iteration cap";
            return res;
        }
        if (iters % 512 == 0) recompute_costs(tab);
        const double obj = -tab.T(tab.p, rhs_col);
        if (obj < best_obj - tab.tol_obj * std::max(1.0, std::abs(best_obj))) {
            best_obj = obj;
            last_improve = iters;
        } else if (!bland && iters - last_improve > stall_limit) {
            bland = true;  // degenerate stall: switch to anti-cycling pricing
        }
    }
    if (unbounded) {
        // Dual unbounded <=> primal (relaxed) infeasible. (A descent ray of
        // the perturbed problem is a descent ray of the unperturbed one: the
        // feasible sets share their recession cone.)
        res.status = LPStatus::Infeasible;
        res.reason = "relaxed system infeasible";
        return res;
    }

    // Undo the perturbation: basic values for the exact rhs e_t are B^-1 e_t,
    // the last column of the tracking block. The optimal basis carries over
    // as long as those values stay (numerically) nonnegative.
    for (int i = 0; i < tab.p; ++i) {
        double xb = tab.T(i, tab.m + tab.p - 1);
        if (xb < 0.0) {
            if (xb < -1e-7) {
                res.reason = "perturbation restore left a negative basic";
                return res;
            }
            xb = 0.0;
        }
        tab.T(i, rhs_col) = xb;
    }
    recompute_costs(tab);

    const double t_star = -tab.T(tab.p, rhs_col);
    // Primal optimizer pi = c_B B^-1, read off the tracking block.
    Vec v(tab.p);
    for (int j = 0; j < tab.p; ++j) v(j) = -tab.T(tab.p, tab.m + j);
    if (std::abs(v(tab.p - 1) - t_star) > 1e-6 * std::max(1.0, std::abs(t_star))) {
        res.reason = "multiplier extraction inconsistent";
        return res;
    }

    if (t_star <= eps_t) {
        res.status = LPStatus::Infeasible;
        res.t = t_star;
        res.reason = "margin below threshold";
        return res;
    }

    // Independent witness recheck; a solver bug must never report Feasible.
    const Vec c_star = v.head(sys.n);
    const double cmax = c_star.size() ? c_star.cwiseAbs().maxCoeff() : 0.0;
    for (int r = 0; r < sys.strict_count(); ++r) {
        const double val = sys.strict_A.row(r).dot(c_star) + sys.strict_b(r);
        if (val < eps_t / 2) {
            res.reason = "witness recheck failed (strict row)";
            return res;
        }
    }
    for (int r = 0; r < sys.nonstrict_count(); ++r) {
        const double val = sys.nonstrict_A.row(r).dot(c_star) + sys.nonstrict_b(r);
        const double tol = 1e-9 * std::max(1.0, sys.nonstrict_A.row(r).cwiseAbs().maxCoeff() * cmax +
                                                    std::abs(sys.nonstrict_b(r)));
        if (val > tol) {
            res.reason = "witness recheck failed (non-strict row)";
            return res;
        }
    }
    res.status = LPStatus::Feasible;
    res.t = t_star;
    res.witness = c_star;
    return res;
}

LPStatus vertex_oracle_2d(const InequalitySystem& sys, double eps_t) {
    if (sys.n != 2) throw dimension_error("vertex_oracle_2d: n must be 2");
    // Assemble the same primal rows G v <= g over v = (c1, c2, t).
    std::vector<Eigen::Vector3d> rows;
    std::vector<double> rhs;
    for (int r = 0; r < sys.strict_count(); ++r) {
        rows.push_back({-sys.strict_A(r, 0), -sys.strict_A(r, 1), 1.0});
        rhs.push_back(sys.strict_b(r));
    }
    for (int r = 0; r < sys.nonstrict_count(); ++r) {
        rows.push_back({sys.nonstrict_A(r, 0), sys.nonstrict_A(r, 1), 0.0});
        rhs.push_back(-sys.nonstrict_b(r));
    }
    for (int i = 0; i < 2; ++i) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e(i) = 1.0;
        rows.push_back(e);
        rhs.push_back(sys.box_M);
        rows.push_back(-e);
        rhs.push_back(sys.box_M);
    }
    rows.push_back({0, 0, 1});
    rhs.push_back(1.0);
    rows.push_back({0, 0, -1});
    rhs.push_back(0.0);

    const int m = int(rows.size());
    double scale = 1.0;
    for (const auto& r : rows) scale = std::max(scale, r.cwiseAbs().maxCoeff());
    const double feas_tol = 1e-9 * scale * std::max(1.0, sys.box_M);
    double best_t = -std::numeric_limits<double>::infinity();

    auto consider = [&](const Eigen::Vector3d& v) {
        for (int r = 0; r < m; ++r)
            if (rows[std::size_t(r)].dot(v) > rhs[std::size_t(r)] + feas_tol) return;
        best_t = std::max(best_t, v(2));
    };

    // Every vertex of the bounded 3-polytope is the meet of three rows.
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                Eigen::Matrix3d mat;
                mat.row(0) = rows[std::size_t(a)];
                mat.row(1) = rows[std::size_t(b)];
                mat.row(2) = rows[std::size_t(c)];
                if (std::abs(mat.determinant()) < 1e-10 * scale * scale * scale) continue;
                const Eigen::Vector3d v =
                    mat.fullPivLu().solve(Eigen::Vector3d(rhs[std::size_t(a)], rhs[std::size_t(b)],
                                                          rhs[std::size_t(c)]));
                consider(v);
            }

    // Dense grid over the box as a safety net for near-degenerate geometry.
    const int steps = 200;
    for (int gi = 0; gi <= steps; ++gi)
        for (int gj = 0; gj <= steps; ++gj) {
            const double c1 = -sys.box_M + 2.0 * sys.box_M * gi / steps;
            const double c2 = -sys.box_M + 2.0 * sys.box_M * gj / steps;
            bool ok = true;
            for (int r = 0; r < sys.nonstrict_count() && ok; ++r)
                ok = sys.nonstrict_A.row(r).dot(Eigen::Vector2d(c1, c2)) + sys.nonstrict_b(r) <=
                     feas_tol;
            if (!ok) continue;
            double t = 1.0;
            for (int r = 0; r < sys.strict_count(); ++r)
                t = std::min(t, sys.strict_A.row(r).dot(Eigen::Vector2d(c1, c2)) + sys.strict_b(r));
            if (t >= 0.0) best_t = std::max(best_t, t);
        }

    if (!std::isfinite(best_t)) return LPStatus::Infeasible;
    return best_t > eps_t ? LPStatus::Feasible : LPStatus::Infeasible;
}

void save_system(const InequalitySystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write file: " + path);
    char buf[32];
    out << "n " << sys.n << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", sys.box_M);
    out << "M " << buf << "\n";
    auto dump = [&](char tag, const Mat& A, const Vec& b) {
        for (int r = 0; r < A.rows(); ++r) {
            out << tag;
            for (int c = 0; c < A.cols(); ++c) {
                std::snprintf(buf, sizeof buf, "%.17g", A(r, c));
                out << ' ' << buf;
            }
            std::snprintf(buf, sizeof buf, "%.17g", b(r));
            out << ' ' << buf << "\n";
        }
    };
    dump('S', sys.strict_A, sys.strict_b);
    dump('Q', sys.nonstrict_A, sys.nonstrict_b);
}

InequalitySystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    InequalitySystem sys;
    std::vector<std::vector<double>> srows, qrows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "n") ss >> sys.n;
        else if (tag == "M") ss >> sys.box_M;
        else if (tag == "S" || tag == "Q") {
            std::vector<double> vals;
            double v;
            while (ss >> v) vals.push_back(v);
            if (int(vals.size()) != sys.n + 1) throw data_error("system file: bad row width");
            (tag == "S" ? srows : qrows).push_back(std::move(vals));
        } else {
            throw data_error("system file: unknown tag " + tag);
        }
    }
    auto pack = [&](const std::vector<std::vector<double>>& rows, Mat& A, Vec& b) {
        A.resize(int(rows.size()), sys.n);
        b.resize(int(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (int c = 0; c < sys.n; ++c) A(int(r), c) = rows[r][std::size_t(c)];
            b(int(r)) = rows[r].back();
        }
    };
    pack(srows, sys.strict_A, sys.strict_b);
    pack(qrows, sys.nonstrict_A, sys.nonstrict_b);
    return sys;
}

}  // namespace landscape
