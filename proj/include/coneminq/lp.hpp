#pragma once

#include "coneminq/types.hpp"

namespace coneminq {

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    double objective = 0.0;
    Vec x;
};

/// Solves  max c.x  s.t.  A x <= b, x >= 0  by dense two-phase simplex
/// (Bland's rule). Problem sizes here are tiny (tens of rows/columns).
LpResult solve_lp_max(const Vec& c, const Mat& A, const Vec& b);

}  // namespace coneminq
