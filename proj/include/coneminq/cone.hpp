#pragma once

#include "coneminq/types.hpp"

namespace coneminq {

/// Pointed closed convex cone with nonempty interior, kept immutable after
/// construction. Polyhedral cones carry generator and facet-normal forms
/// (the facet normals are the generators of the polar cone); circular cones
/// carry an axis and half-angle, for which everything is closed-form.
class Cone {
  public:
    enum class Kind { Polyhedral, Circular };

    static Cone polyhedral(int dim, const std::vector<Vec>& generators);
    static Cone circular(const Vec& axis, double half_angle);

    int dim() const { return dim_; }
    Kind kind() const { return kind_; }

    /// Unit generators. For polyhedral cones these are the (deduplicated,
    /// normalized) input rays; extreme_rays() is the minimal subset.
    const std::vector<Vec>& generators() const { return generators_; }
    const std::vector<Vec>& polar_generators() const { return polar_generators_; }
    const std::vector<Vec>& extreme_rays() const { return extreme_rays_; }

    const Vec& axis() const { return axis_; }
    double half_angle() const { return half_angle_; }

    Cone polar() const;

    /// v in Omega_C = S^{n-1} cap int C (strict containment).
    bool omega_contains(const Vec& v) const;

    /// Spherical distance of u in Omega_C to the boundary of Omega_C.
    double boundary_angle(const Vec& u) const;

    /// xi in Omega_C with g.xi > 0 for every generator g. Deterministic:
    /// normalized generator mean if it validates, Chebyshev direction else.
    Vec reference_direction() const;

    /// Spherical Lebesgue measure of Omega_C (exact for n=2 and for
    /// circular cones; spherical-excess formula for polyhedral n=3).
    double omega_area() const;

    /// Membership in the closed cone (used by truncation / facet clipping).
    bool contains(const Vec& x, double tol = 1e-10) const;

  private:
    Cone() = default;

    int dim_ = 0;
    Kind kind_ = Kind::Polyhedral;
    std::vector<Vec> generators_;
    std::vector<Vec> polar_generators_;
    std::vector<Vec> extreme_rays_;
    Vec axis_;
    double half_angle_ = 0.0;
};

/// Builds a cone from either generator or circular form, per the cone.json
/// schema. Throws NotPointed / DegenerateCone / UnsupportedDim.
Cone build_cone(int dim, const std::vector<Vec>& generators);
Cone build_circular_cone(const Vec& axis, double half_angle);

/// Ordered vertices of the spherical polygon Omega_C (polyhedral, n=3 only),
/// sorted counterclockwise around reference_direction().
std::vector<Vec> omega_polygon(const Cone& cone);

}  // namespace coneminq
