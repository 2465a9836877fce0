#include "coneminq/lp.hpp"

#include <limits>

namespace coneminq {
namespace {

constexpr double kPivTol = 1e-11;

// Tableau layout: rows 0..m-1 are constraints, row m is the objective being
// minimized (reduced costs). Column layout: structural vars, slacks,
// artificials, rhs last.
struct Tableau {
    Mat t;
    std::vector<int> basis;  // basic variable per row
    int m, ncols;

    void pivot(int pr, int pc) {
        t.row(pr) /= t(pr, pc);
        for (int r = 0; r <= m; ++r) {
            if (r == pr) continue;
            const double f = t(r, pc);
            if (f != 0.0) t.row(r) -= f * t.row(pr);
        }
        basis[pr] = pc;
    }

    // Bland's rule; returns false when optimal, throws on unbounded.
    bool step() {
        int pc = -1;
        for (int c = 0; c < ncols - 1; ++c) {
            if (t(m, c) < -kPivTol) { pc = c; break; }
        }
        if (pc < 0) return false;
        int pr = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            if (t(r, pc) > kPivTol) {
                const double ratio = t(r, ncols - 1) / t(r, pc);
                if (ratio < best - 1e-14 ||
                    (ratio < best + 1e-14 && (pr < 0 || basis[r] < basis[pr]))) {
                    best = ratio;
                    pr = r;
                }
            }
        }
        if (pr < 0) throw Unbounded("simplex: unbounded LP");
        pivot(pr, pc);
        return true;
    }
};

}  // namespace

LpResult solve_lp_max(const Vec& c, const Mat& A, const Vec& b) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());

    // Normalize rows so rhs >= 0; negated rows get artificials.
    Mat Aw = A;
    Vec bw = b;
    std::vector<bool> negated(m, false);
    for (int r = 0; r < m; ++r) {
        if (bw[r] < 0) {
            Aw.row(r) = -Aw.row(r);
            bw[r] = -bw[r];
            negated[r] = true;
        }
    }
    int nart = 0;
    for (int r = 0; r < m; ++r)
        if (negated[r]) ++nart;

    const int ncols = n + m + nart + 1;
    Tableau tab;
    tab.m = m;
    tab.ncols = ncols;
    tab.t = Mat::Zero(m + 1, ncols);
    tab.basis.assign(m, -1);

    int art = n + m;
    for (int r = 0; r < m; ++r) {
        tab.t.block(r, 0, 1, n) = Aw.row(r);
        // slack: +1 for normal rows, -1 for negated (original slack flipped)
        tab.t(r, n + r) = negated[r] ? -1.0 : 1.0;
        tab.t(r, ncols - 1) = bw[r];
        if (negated[r]) {
            tab.t(r, art) = 1.0;
            tab.basis[r] = art++;
        } else {
            tab.basis[r] = n + r;
        }
    }

    LpResult res;
    if (nart > 0) {
        // Phase 1: minimize sum of artificials.
        for (int col = n + m; col < n + m + nart; ++col) tab.t(m, col) = 1.0;
        for (int r = 0; r < m; ++r)
            if (tab.basis[r] >= n + m) tab.t.row(m) -= tab.t.row(r);
        try {
            while (tab.step()) {}
        } catch (const Unbounded&) {
            res.status = LpResult::Status::Infeasible;
            return res;
        }
        if (tab.t(m, ncols - 1) < -1e-8) {
            res.status = LpResult::Status::Infeasible;
            return res;
        }
        // Drive any leftover artificial out of the basis if possible.
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] >= n + m) {
                int pc = -1;
                for (int col = 0; col < n + m; ++col)
                    if (std::abs(tab.t(r, col)) > kPivTol) { pc = col; break; }
                if (pc >= 0) tab.pivot(r, pc);
            }
        }
    }

    // Phase 2: minimize -c.x.
    tab.t.row(m).setZero();
    for (int col = 0; col < n; ++col) tab.t(m, col) = -c[col];
    // zero artificial columns so they never re-enter
    for (int col = n + m; col < n + m + nart; ++col) tab.t.col(col).setZero();
    for (int r = 0; r < m; ++r) {
        const int bcol = tab.basis[r];
        const double f = tab.t(m, bcol);
        if (f != 0.0) tab.t.row(m) -= f * tab.t.row(r);
    }
    try {
        while (tab.step()) {}
    } catch (const Unbounded&) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }

    res.status = LpResult::Status::Optimal;
    res.x = Vec::Zero(n);
    for (int r = 0; r < m; ++r)
        if (tab.basis[r] < n) res.x[tab.basis[r]] = tab.t(r, ncols - 1);
    res.objective = c.dot(res.x);
    return res;
}

}  // namespace coneminq
