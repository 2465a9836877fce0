#pragma once

#include "coneminq/measures.hpp"

namespace coneminq {

/// Discrete inverse problem: find a C-determined set whose (p,q)-th dual
/// curvature measure equals `target`.
struct Problem {
    Cone cone;
    DiscreteMeasure target;  // atoms on Omega of the polar cone
    double p = 0.0;
    double q = 0.0;
    double tau_min = 1e-6;  // required spherical margin of atoms to the boundary
};

struct SolverConfig {
    int resolution = 1024;
    std::uint64_t seed = 0;
    int max_iterations = 2000;
    double grad_tol = 1e-10;   // first-order condition, relative to max mass
    double tol = 1e-6;         // achieved-measure relative residual
    double init_value = 1.0;   // f^0 (constant)
    double initial_step = 1.0;
};

struct Solution {
    std::optional<CPolytope> polytope;
    DiscreteMeasure achieved;
    std::vector<double> residuals;  // per-atom relative errors
    double tau1 = 0.0;
    int iterations = 0;
    bool converged = false;
    bool up_to_dilation = false;  // p = q: solution determined modulo scale
    std::vector<double> objective_trace;
    std::vector<std::string> warnings;

    double max_residual() const;
};

/// Objective -log ||f||_p + (1/q) log of the q-th dual volume of the Wulff
/// shape of f (entropy branch for q = 0). Homogeneous of degree zero.
/// Requires p != 0.
double objective(const std::vector<double>& f, const Problem& prob,
                 const QuadratureGrid& grid);

/// Gradient of the objective in the coordinates z_i = f_i^p (p != 0).
std::vector<double> gradient(const std::vector<double>& f, const Problem& prob,
                             const QuadratureGrid& grid);

/// Projected-gradient minimization with backtracking, followed by the
/// homogeneity rescaling that converts the normalized minimizer into the
/// solution of the measure equation.
Solution solve(const Problem& prob, const SolverConfig& cfg);

/// Alexandrov-type problem: prescribe the p-th integral Gauss measure nu on
/// Omega_C. Solved as the q = 0 problem on the polar cone; the returned
/// polytope lives in the polar cone and the solution set is its copolar
/// (radial function -1 / support of the returned polytope).
Solution solve_alexandrov(const Cone& cone, const DiscreteMeasure& nu,
                          double p, const SolverConfig& cfg);

/// Restrict a density on Omega of the polar cone to the inner region with
/// spherical margin tau and discretize it into about `count` atoms with
/// cell-integral masses. Deterministic.
DiscreteMeasure discretize_density(
    const Cone& cone, const std::function<double(const Vec&)>& density,
    double tau, int count);

}  // namespace coneminq
