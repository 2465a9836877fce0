#include "coneminq/solver.hpp"

#include <algorithm>
#include <cmath>

namespace coneminq {

double Solution::max_residual() const {
    double r = 0.0;
    for (double x : residuals) r = std::max(r, x);
    return r;
}

namespace {

CPolytope wulff_of(const Problem& prob, const std::vector<double>& f) {
    std::vector<std::pair<Vec, double>> atoms;
    atoms.reserve(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        atoms.emplace_back(prob.target.atoms[i].u, f[i]);
    return wulff_shape(prob.cone, atoms);
}

// (1/q) log V_q([f])  (q != 0)  or  E([f]) / |Omega_C|  (q = 0).
double shape_term(const Problem& prob, const std::vector<double>& f,
                  const QuadratureGrid& grid) {
    const CPolytope P = wulff_of(prob, f);
    if (prob.q != 0.0)
        return std::log(dual_volume(P, prob.q, grid)) / prob.q;
    return dual_entropy(P, grid) / prob.cone.omega_area();
}

void validate(const Problem& prob) {
    if (prob.target.atoms.empty()) throw InputError("target measure is empty");
    const Cone pc = prob.cone.polar();
    for (const MeasureAtom& a : prob.target.atoms) {
        if (a.mass <= 0.0) throw NonPositive("target masses must be positive");
        if (!pc.omega_contains(a.u))
            throw InvalidDirection("target atom outside the polar domain");
        if (pc.boundary_angle(a.u) < prob.tau_min)
            throw InputError("target atom violates the interior margin");
    }
}

}  // namespace

double objective(const std::vector<double>& f, const Problem& prob,
                 const QuadratureGrid& grid) {
    if (prob.p == 0.0) throw InvalidP("objective requires p != 0");
    KahanSum s;
    for (size_t i = 0; i < f.size(); ++i)
        s.add(prob.target.atoms[i].mass * std::pow(f[i], prob.p));
    return -std::log(s.value()) / prob.p + shape_term(prob, f, grid);
}

std::vector<double> gradient(const std::vector<double>& f, const Problem& prob,
                             const QuadratureGrid& grid) {
    if (prob.p == 0.0) throw InvalidP("gradient requires p != 0");
    const CPolytope P = wulff_of(prob, f);
    const std::vector<double> c = pq_masses(P, prob.p, prob.q, grid);
    const double V = prob.q != 0.0 ? dual_volume(P, prob.q, grid)
                                   : prob.cone.omega_area();
    KahanSum s;
    for (size_t i = 0; i < f.size(); ++i)
        s.add(prob.target.atoms[i].mass * std::pow(f[i], prob.p));
    const double S = s.value();
    std::vector<double> g(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        g[i] = (-prob.target.atoms[i].mass / S + c[i] / V) / prob.p;
    return g;
}

Solution solve(const Problem& prob, const SolverConfig& cfg) {
    validate(prob);
    const int m = static_cast<int>(prob.target.atoms.size());
    const QuadratureGrid grid = make_grid(prob.cone, cfg.resolution, cfg.seed);
    const double omega = prob.cone.omega_area();
    const bool log_chart = prob.p == 0.0;

    std::vector<double> mu(m);
    double mu_max = 0.0, mu_total = 0.0;
    for (int i = 0; i < m; ++i) {
        mu[i] = prob.target.atoms[i].mass;
        mu_max = std::max(mu_max, mu[i]);
        mu_total += mu[i];
    }

    Solution sol;
    if (prob.p == prob.q) sol.up_to_dilation = true;
    if (prob.p == prob.q)
        sol.warnings.push_back("p = q: solution determined up to dilation");
    if (log_chart)
        sol.warnings.push_back("p = 0: log-functional convention in use");
    if (prob.p > 0.0 && prob.p > prob.q)
        sol.warnings.push_back("p > max(q, 0): uniqueness not guaranteed");

    // chart: x_i = f_i^p (p != 0), x_i = log f_i (p = 0)
    auto to_f = [&](const std::vector<double>& x) {
        std::vector<double> f(m);
        for (int i = 0; i < m; ++i)
            f[i] = log_chart ? std::exp(x[i]) : std::pow(x[i], 1.0 / prob.p);
        return f;
    };
    auto phi = [&](const std::vector<double>& x) {
        const std::vector<double> f = to_f(x);
        if (log_chart) {
            KahanSum s;
            for (int i = 0; i < m; ++i) s.add(mu[i] * x[i]);
            return -s.value() / mu_total + shape_term(prob, f, grid);
        }
        return objective(f, prob, grid);
    };
    // First-order residual (the bracket whose vanishing is the
    // stationarity condition) and the chart gradient.
    auto grads = [&](const std::vector<double>& x, std::vector<double>& g,
                     std::vector<double>& stat) {
        const std::vector<double> f = to_f(x);
        const CPolytope P = wulff_of(prob, f);
        const std::vector<double> c = pq_masses(P, log_chart ? 0.0 : prob.p,
                                                prob.q, grid);
        const double V = prob.q != 0.0 ? dual_volume(P, prob.q, grid) : omega;
        g.resize(m);
        stat.resize(m);
        if (log_chart) {
            for (int i = 0; i < m; ++i) {
                g[i] = -mu[i] / mu_total + c[i] / V;
                stat[i] = g[i] * mu_total;  // comparable to the masses
            }
        } else {
            KahanSum s;
            for (int i = 0; i < m; ++i) s.add(mu[i] * std::pow(f[i], prob.p));
            const double S = s.value();
            for (int i = 0; i < m; ++i) {
                stat[i] = -mu[i] / S + c[i] / V;
                g[i] = stat[i] / prob.p;
                stat[i] *= S;  // comparable to the masses
            }
        }
    };
    auto renormalize = [&](std::vector<double>& x) {
        const std::vector<double> f = to_f(x);
        const CPolytope P = wulff_of(prob, f);
        const double lam = prob.q != 0.0
                               ? std::pow(dual_volume(P, prob.q, grid), -1.0 / prob.q)
                               : std::exp(-dual_entropy(P, grid) / omega);
        for (int i = 0; i < m; ++i) {
            if (log_chart)
                x[i] += std::log(lam);
            else
                x[i] *= std::pow(lam, prob.p);
        }
    };

    std::vector<double> x(m);
    for (int i = 0; i < m; ++i)
        x[i] = log_chart ? std::log(cfg.init_value)
                         : std::pow(cfg.init_value, prob.p);
    renormalize(x);
    double fx = phi(x);
    sol.objective_trace.push_back(fx);

    double step = cfg.initial_step;
    std::vector<double> g, stat;
    bool stationary = false;
    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        grads(x, g, stat);
        double stat_max = 0.0, gnorm2 = 0.0;
        for (int i = 0; i < m; ++i) {
            stat_max = std::max(stat_max, std::abs(stat[i]));
            gnorm2 += g[i] * g[i];
        }
        if (stat_max <= cfg.grad_tol * mu_max) {
            stationary = true;
            break;
        }
        bool accepted = false;
        while (step > 1e-16) {
            std::vector<double> xt(m);
            bool feasible = true;
            for (int i = 0; i < m; ++i) {
                xt[i] = x[i] - step * g[i];
                if (!log_chart && xt[i] <= 1e-12) { feasible = false; break; }
            }
            if (feasible) {
                const double ft = phi(xt);
                if (ft <= fx - 1e-4 * step * gnorm2) {
                    x = std::move(xt);
                    fx = ft;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) break;  // line-search stall: report best iterate
        renormalize(x);
        fx = phi(x);
        sol.objective_trace.push_back(fx);
        step = std::min(step * 1.5, 1e6);
    }
    sol.iterations = it;

    // Homogeneity rescaling of the normalized minimizer.
    const std::vector<double> f0 = to_f(x);
    const CPolytope P0 = wulff_of(prob, f0);
    const double V0 = prob.q != 0.0 ? dual_volume(P0, prob.q, grid) : omega;
    double tau;
    if (log_chart) {
        tau = mu_total / V0;
    } else {
        KahanSum s;
        for (int i = 0; i < m; ++i) s.add(mu[i] * std::pow(f0[i], prob.p));
        tau = s.value() / V0;
    }
    sol.tau1 = tau;
    double lam = 1.0;
    if (!sol.up_to_dilation) {
        lam = prob.q != 0.0 ? std::pow(tau, 1.0 / (prob.q - prob.p))
                            : std::pow(tau, -1.0 / prob.p);
    }
    std::vector<double> f(m);
    for (int i = 0; i < m; ++i) f[i] = lam * f0[i];
    const CPolytope A = wulff_of(prob, f);
    sol.polytope = A;

    const std::vector<double> c = pq_masses(A, prob.p, prob.q, grid);
    double c_total = 0.0;
    for (double v : c) c_total += v;
    // p = q leaves the measure scale-invariant; compare shapes then.
    const double match = sol.up_to_dilation && c_total > 0.0
                             ? mu_total / c_total
                             : 1.0;
    sol.achieved.domain = DiscreteMeasure::Domain::OmegaPolar;
    sol.residuals.resize(m);
    bool all_active = true;
    for (int i = 0; i < m; ++i) {
        sol.achieved.atoms.push_back({prob.target.atoms[i].u, c[i] * match, 0.0});
        sol.residuals[i] = std::abs(c[i] * match - mu[i]) / mu[i];
        if (c[i] <= 0.0) all_active = false;
    }
    // The per-atom residuals are the stationarity bracket in mass units, so
    // they certify first-order optimality directly; the gradient gate above
    // is only an early-exit criterion.
    (void)stationary;
    sol.converged = all_active && sol.max_residual() <= cfg.tol;
    if (!all_active)
        sol.warnings.push_back("inactive target atom at the final iterate");
    return sol;
}

Solution solve_alexandrov(const Cone& cone, const DiscreteMeasure& nu,
                          double p, const SolverConfig& cfg) {
    if (p == 0.0)
        throw InvalidP("p = 0 integral Gauss data is handled by the q = 0 path");
    DiscreteMeasure target;
    target.domain = DiscreteMeasure::Domain::OmegaPolar;
    target.atoms = nu.atoms;
    Problem prob{cone.polar(), std::move(target), p, 0.0};
    Solution sol = solve(prob, cfg);
    sol.warnings.push_back(
        "alexandrov: returned polytope lives in the polar cone; the solution "
        "set is its copolar (radial = -1 / support)");
    return sol;
}

DiscreteMeasure discretize_density(
    const Cone& cone, const std::function<double(const Vec&)>& density,
    double tau, int count) {
    if (tau <= 0.0) throw InputError("interior margin must be positive");
    if (count < 1) throw InputError("atom count must be positive");
    const Cone pc = cone.polar();
    DiscreteMeasure mu;
    mu.domain = DiscreteMeasure::Domain::OmegaPolar;
    if (pc.dim() == 2) {
        Vec r0, e;
        double span;
        if (pc.kind() == Cone::Kind::Circular) {
            Vec perp(2);
            perp << -pc.axis()[1], pc.axis()[0];
            span = 2.0 * pc.half_angle();
            r0 = std::cos(pc.half_angle()) * pc.axis() -
                 std::sin(pc.half_angle()) * perp;
            e = normalized(pc.axis() - r0 * r0.dot(pc.axis()));
        } else {
            r0 = pc.extreme_rays()[0];
            const Vec r1 = pc.extreme_rays()[1];
            span = angle_between(r0, r1);
            e = normalized(r1 - r0 * r0.dot(r1));
        }
        if (span - 2.0 * tau <= 0.0)
            throw ZeroMass("interior margin exhausts the domain");
        std::vector<double> gx, gw;
        gauss_legendre(16, gx, gw);
        auto dir = [&](double th) -> Vec { return std::cos(th) * r0 + std::sin(th) * e; };
        for (int i = 0; i < count; ++i) {
            const double a = tau + (span - 2.0 * tau) * i / count;
            const double b = tau + (span - 2.0 * tau) * (i + 1) / count;
            KahanSum cell;
            for (size_t k = 0; k < gx.size(); ++k) {
                const double th = 0.5 * (a + b) + 0.5 * (b - a) * gx[k];
                cell.add(0.5 * (b - a) * gw[k] * density(dir(th)));
            }
            if (cell.value() > 0.0)
                mu.atoms.push_back({dir(0.5 * (a + b)), cell.value(), 0.0});
        }
    } else if (pc.dim() == 3) {
        const QuadratureGrid grid = make_grid(pc, std::max(16, count), 0);
        for (int k = 0; k < grid.size(); ++k) {
            const Vec& v = grid.nodes[k];
            if (!pc.omega_contains(v) || pc.boundary_angle(v) < tau) continue;
            const double mass = grid.weights[k] * density(v);
            if (mass > 0.0) mu.atoms.push_back({v, mass, 0.0});
        }
    } else {
        throw UnsupportedDim("density discretization supports dim <= 3");
    }
    if (mu.atoms.empty())
        throw ZeroMass("restricted measure vanishes");
    return mu;
}

}  // namespace coneminq
