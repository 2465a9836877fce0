#include "coneminq/ma.hpp"

#include <cmath>
#include <limits>

namespace coneminq {

void SupportProfile::validate() const {
    if (phi.size() != h.size()) throw InputError("phi/h length mismatch");
    if (phi.size() < 9) throw TooFewSamples("need at least 9 samples");
    for (size_t k = 0; k + 1 < phi.size(); ++k)
        if (phi[k + 1] <= phi[k]) throw InputError("phi must be increasing");
    for (double v : h)
        if (v >= 0.0) throw NonNegativityViolation("support values must be negative");
}

namespace {

// 4th-order first and second derivative stencils on a uniform grid.
double d1_central(const std::vector<double>& y, int k, double dh) {
    return (y[k - 2] - 8.0 * y[k - 1] + 8.0 * y[k + 1] - y[k + 2]) / (12.0 * dh);
}
double d2_central(const std::vector<double>& y, int k, double dh) {
    return (-y[k - 2] + 16.0 * y[k - 1] - 30.0 * y[k] + 16.0 * y[k + 1] -
            y[k + 2]) /
           (12.0 * dh * dh);
}
// One-sided 2nd-order fallbacks for the edge samples (reported but not
// counted toward the max).
double d1_edge(const std::vector<double>& y, int k, int dir, double dh) {
    return dir * (-3.0 * y[k] + 4.0 * y[k + dir] - y[k + 2 * dir]) / (2.0 * dh);
}
double d2_edge(const std::vector<double>& y, int k, int dir, double dh) {
    return (2.0 * y[k] - 5.0 * y[k + dir] + 4.0 * y[k + 2 * dir] -
            y[k + 3 * dir]) /
           (dh * dh);
}

}  // namespace

ResidualReport residual(const SupportProfile& profile,
                        const std::function<double(double)>& density,
                        double p, double q) {
    profile.validate();
    const int n = static_cast<int>(profile.phi.size());
    const bool analytic = profile.analytic();
    double dh = 0.0;
    if (!analytic) {
        dh = profile.phi[1] - profile.phi[0];
        for (int k = 0; k + 1 < n; ++k) {
            const double step = profile.phi[k + 1] - profile.phi[k];
            if (std::abs(step - dh) > 1e-9 * std::max(1.0, std::abs(dh)))
                throw InputError("finite differences need a uniform phi grid");
        }
    }
    ResidualReport rep;
    rep.values.assign(n, std::numeric_limits<double>::quiet_NaN());
    for (int k = 0; k < n; ++k) {
        double h1, h2;
        bool interior = true;
        if (analytic) {
            h1 = profile.dh(profile.phi[k]);
            h2 = profile.d2h(profile.phi[k]);
        } else if (k >= 2 && k <= n - 3) {
            h1 = d1_central(profile.h, k, dh);
            h2 = d2_central(profile.h, k, dh);
        } else {
            const int dir = k < 2 ? 1 : -1;
            h1 = d1_edge(profile.h, k, dir, dh);
            h2 = d2_edge(profile.h, k, dir, dh);
            interior = false;
        }
        const double hv = profile.h[k];
        const double lhs = std::pow(-hv, 1.0 - p) * (h2 + hv);
        const double rhs =
            density(profile.phi[k]) *
            std::pow(hv * hv + h1 * h1, (2.0 - q) / 2.0);
        rep.values[k] = lhs - rhs;
        if (interior) {
            rep.interior.push_back(k);
            rep.max_abs = std::max(rep.max_abs, std::abs(rep.values[k]));
        }
    }
    return rep;
}

bool boundary_limit_check(const SupportProfile& profile, double tol) {
    profile.validate();
    const int n = static_cast<int>(profile.phi.size());
    const double span = profile.phi.back() - profile.phi.front();
    // A support value vanishing at an open arc end typically does so like a
    // square root, so h^2 is asymptotically linear in the arc parameter.
    // Extrapolate h^2 linearly through the two outermost samples: the profile
    // has a zero limit at that end iff the extrapolated root lies just beyond
    // the sampled range (within tol * span).
    auto vanishes = [&](int end, int next) {
        const double y0 = profile.h[end] * profile.h[end];
        const double y1 = profile.h[next] * profile.h[next];
        const double dx = std::abs(profile.phi[end] - profile.phi[next]);
        const double slope = (y1 - y0) / dx;  // decrease toward the end
        if (slope <= 0.0) return false;       // not decaying outward
        const double root_dist = y0 / slope;  // distance beyond the end sample
        return root_dist <= tol * span;
    };
    return vanishes(0, 1) && vanishes(n - 1, n - 2);
}

}  // namespace coneminq
