#pragma once

#include <functional>

#include "coneminq/types.hpp"

namespace coneminq {

/// Sampled planar support profile h(phi) < 0 on an open arc, optionally
/// with analytic derivative callbacks. phi must be strictly increasing and
/// (for the finite-difference path) uniformly spaced.
struct SupportProfile {
    std::vector<double> phi;
    std::vector<double> h;
    std::function<double(double)> dh;    // optional analytic h'
    std::function<double(double)> d2h;   // optional analytic h''

    void validate() const;
    bool analytic() const { return static_cast<bool>(dh) && static_cast<bool>(d2h); }
};

struct ResidualReport {
    double max_abs = 0.0;            // over interior samples only
    std::vector<double> values;      // per-sample (NaN at excluded ends)
    std::vector<int> interior;       // indices contributing to max_abs
};

/// Planar residual (-h)^{1-p} (h'' + h) - f (h^2 + h'^2)^{(2-q)/2}.
/// Derivatives come from the callbacks when present, otherwise 4th-order
/// central differences (ends one-sided and excluded from the max).
ResidualReport residual(const SupportProfile& profile,
                        const std::function<double(double)>& density,
                        double p, double q);

/// True iff the profile extrapolates to 0 at both ends of the arc
/// (quadratic extrapolation from the outermost samples).
bool boundary_limit_check(const SupportProfile& profile, double tol = 0.05);

}  // namespace coneminq
