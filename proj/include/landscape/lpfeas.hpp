#pragma once

#include <string>

#include "landscape/common.hpp"

namespace landscape {

// Mixed strict / non-strict linear inequality system over c in R^n:
//   strict rows:     a . c + b > 0
//   non-strict rows: a . c + b <= 0
// plus the box |c_i| <= box_M that keeps the feasibility LP bounded.
struct InequalitySystem {
    Mat strict_A;     // one row per strict inequality
    Vec strict_b;
    Mat nonstrict_A;  // one row per non-strict inequality
    Vec nonstrict_b;
    int n = 0;
    double box_M = 1e6;

    int strict_count() const { return static_cast<int>(strict_A.rows()); }
    int nonstrict_count() const { return static_cast<int>(nonstrict_A.rows()); }
};

enum class LPStatus { Feasible, Infeasible, Inconclusive };

struct LPResult {
    LPStatus status = LPStatus::Inconclusive;
    double t = 0.0;   // optimal margin
    Vec witness;      // c attaining the margin (Feasible only)
    std::string reason;
};

// Margin formulation: maximize t subject to
//   a . c + b >= t   (strict rows),   a . c + b <= 0  (non-strict rows),
//   0 <= t <= 1,     |c_i| <= box_M.
// Feasible iff the optimum exceeds eps_t; Infeasible covers both an empty
// relaxed system and a zero optimal margin; Inconclusive on any numerical
// failure (iteration cap, inconsistent multipliers, witness recheck).
LPResult feasibility(const InequalitySystem& sys, double eps_t = 1e-9);

// Exhaustive n=2 reference: enumerates every vertex of the (c1, c2, t)
// polytope (all constraint triples) plus a dense grid over the box. Test use.
LPStatus vertex_oracle_2d(const InequalitySystem& sys, double eps_t = 1e-9);

// Plain text round trip (one row per line: type tag, coefficients, constant).
void save_system(const InequalitySystem& sys, const std::string& path);
InequalitySystem load_system(const std::string& path);

}  // namespace landscape
