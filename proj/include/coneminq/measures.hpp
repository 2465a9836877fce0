#pragma once

#include <functional>

#include "coneminq/polytope.hpp"
#include "coneminq/quadrature.hpp"

namespace coneminq {

struct MeasureAtom {
    Vec u;
    double mass = 0.0;
    double error = 0.0;  // estimated quadrature error (0 = not estimated)
};

/// Finite discrete measure: atoms on the unit sphere, tagged with the domain
/// they live in (Omega of the polar cone for curvature measures, Omega of the
/// cone itself for Alexandrov-type data).
struct DiscreteMeasure {
    enum class Domain { OmegaPolar, Omega };
    Domain domain = Domain::OmegaPolar;
    std::vector<MeasureAtom> atoms;

    double total_mass() const;
};

/// q-th dual volume (1/n) sum_k w_k rho(v_k)^q, q != 0.
double dual_volume(const CPolytope& p, double q, const QuadratureGrid& grid);

/// Dual entropy sum_k w_k log rho(v_k).
double dual_entropy(const CPolytope& p, const QuadratureGrid& grid);

/// Per-facet masses of the (p,q)-th dual curvature measure by node
/// classification under the radial Gauss map. Inactive facets get 0.
/// q = 0 yields the J*_p masses (no 1/n factor).
std::vector<double> pq_masses(const CPolytope& p, double pexp, double qexp,
                              const QuadratureGrid& grid);

/// As pq_masses, packaged as a measure with zero-mass atoms dropped.
DiscreteMeasure pq_measure(const CPolytope& p, double pexp, double qexp,
                           const QuadratureGrid& grid);

/// pq_measure with a Richardson-style error estimate obtained from a
/// half-resolution companion grid.
DiscreteMeasure pq_measure_with_error(const CPolytope& p, double pexp,
                                      double qexp, int resolution,
                                      std::uint64_t seed = 0);

/// Independent boundary-integral path: c_i = (1/n)(-h_i)^{1-p} times the
/// facet integral of |x|^{q-n} (for q = 0: drop the 1/n, exponent -n).
/// Requires facet geometry, so dim <= 3.
DiscreteMeasure pq_measure_boundary(const CPolytope& p, double pexp,
                                    double qexp);

enum class Finiteness { Finite, Diverging, Inconclusive };

/// Probes whether (1/n) int rho^q dv is finite for a general radial
/// evaluator, by watching dual-volume estimates across grid refinements.
Finiteness is_cq_close(const std::function<double(const Vec&)>& rho,
                       double qexp, const Cone& cone,
                       const std::vector<int>& resolutions);

}  // namespace coneminq
