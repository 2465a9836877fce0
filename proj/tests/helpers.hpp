#pragma once

#include <random>

#include "coneminq/io.hpp"
#include "coneminq/ma.hpp"

namespace testutil {

using namespace coneminq;

inline Cone orthant2() {
    return Cone::polyhedral(2, {make_vec({1.0, 0.0}), make_vec({0.0, 1.0})});
}

inline Cone octant3() {
    return Cone::polyhedral(3, {make_vec({1.0, 0.0, 0.0}),
                                make_vec({0.0, 1.0, 0.0}),
                                make_vec({0.0, 0.0, 1.0})});
}

/// Single facet u = -(1,1)/sqrt(2), h = -1 over the planar orthant:
/// the set {x, y >= 0, x + y >= sqrt(2)}.
inline CPolytope p1() {
    return CPolytope(orthant2(),
                     {{normalized(make_vec({-1.0, -1.0})), -1.0}});
}

/// Direction on the polar arc of the planar orthant, phi in (pi, 3pi/2).
inline Vec polar_dir2(double phi) {
    return make_vec({std::cos(phi), std::sin(phi)});
}

/// Random polytope over the planar orthant with every facet active.
inline CPolytope random_polytope2(std::mt19937& rng, int max_facets) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Cone cone = orthant2();
    for (int attempt = 0; attempt < 100; ++attempt) {
        const int m = 2 + static_cast<int>(unif(rng) * (max_facets - 1));
        std::vector<double> phis;
        for (int i = 0; i < m; ++i)
            phis.push_back(3.24159 + unif(rng) * (3.0 * 1.5707963267948966 - 0.2 - 3.24159));
        std::sort(phis.begin(), phis.end());
        bool separated = true;
        for (int i = 0; i + 1 < m; ++i)
            if (phis[i + 1] - phis[i] < 0.08) separated = false;
        if (!separated) continue;
        std::vector<Facet> facets;
        for (double phi : phis)
            facets.push_back({polar_dir2(phi), -(0.5 + 1.5 * unif(rng))});
        CPolytope P(cone, facets);
        std::vector<Facet> active;
        for (const FacetGeometry& fg : P.facet_geometry())
            if (fg.active()) active.push_back(P.facets()[fg.index]);
        if (static_cast<int>(active.size()) < 2) continue;
        return CPolytope(cone, active);
    }
    throw std::runtime_error("failed to build a random planar polytope");
}

/// Random polytope over the octant with every facet active.
inline CPolytope random_polytope3(std::mt19937& rng, int max_facets) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Cone cone = octant3();
    for (int attempt = 0; attempt < 100; ++attempt) {
        const int m = 2 + static_cast<int>(unif(rng) * (max_facets - 1));
        std::vector<Facet> facets;
        for (int i = 0; i < m; ++i) {
            const Vec u = -normalized(make_vec({0.25 + unif(rng),
                                                0.25 + unif(rng),
                                                0.25 + unif(rng)}));
            bool ok = true;
            for (const Facet& f : facets)
                if (angle_between(f.u, u) < 0.15) ok = false;
            if (!ok) continue;
            facets.push_back({u, -(0.5 + 1.5 * unif(rng))});
        }
        if (static_cast<int>(facets.size()) < 2) continue;
        CPolytope P(cone, facets);
        std::vector<Facet> active;
        for (const FacetGeometry& fg : P.facet_geometry())
            if (fg.active()) active.push_back(P.facets()[fg.index]);
        if (static_cast<int>(active.size()) < 2) continue;
        return CPolytope(cone, active);
    }
    throw std::runtime_error("failed to build a random spatial polytope");
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace testutil
