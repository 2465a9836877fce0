#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "coneminq/cone.hpp"

namespace coneminq {

/// One supporting halfspace: { x : u.x <= h } with u in Omega_{C polar}
/// and h < 0.
struct Facet {
    Vec u;
    double h;
};

struct RadialResult {
    double rho;
    int facet;
    bool tie;  // v lies (numerically) on a boundary between facet regions
};

/// Geometry of one facet F_i (n <= 3): vertices on the supporting
/// hyperplane, its (n-1)-measure, and the radial projection of the vertices
/// (the spherical region Omega_C cap Delta_i, as a vertex list).
struct FacetGeometry {
    int index = -1;
    std::vector<Vec> vertices;
    double measure = 0.0;
    std::vector<Vec> spherical_vertices;
    bool active() const { return measure > 0.0; }
};

/// Linear constraint a.x <= b.
struct Halfspace {
    Vec a;
    double b;
};

/// C-determined set A = C cap_i { x : u_i.x <= h_i } with all u_i strictly
/// inside Omega_{C polar} and h_i < 0. Immutable.
class CPolytope {
  public:
    CPolytope(Cone cone, std::vector<Facet> facets);

    const Cone& cone() const { return cone_; }
    const std::vector<Facet>& facets() const { return facets_; }
    int facet_count() const { return static_cast<int>(facets_.size()); }

    /// Radial function at v in Omega_C: max_i h_i / (u_i.v), with the
    /// attaining facet (radial Gauss map) and a tie flag.
    RadialResult radial(const Vec& v) const;

    /// Support function at u in Omega_{C polar}, via an LP over the
    /// generator cone (polyhedral cones only). Strictly negative.
    double support(const Vec& u) const;

    /// rho_{C polar}(copolar(P), u) = -1 / support(P, u).
    double copolar_radial(const Vec& u) const;

    /// Full constraint system (cone facets + supporting halfspaces).
    std::vector<Halfspace> constraints() const;

    /// Per-facet geometry; n <= 3, cached after first computation.
    const std::vector<FacetGeometry>& facet_geometry() const;

    bool facet_active(int i) const { return facet_geometry()[i].active(); }

    CPolytope scaled(double lambda) const;

  private:
    Cone cone_;
    std::vector<Facet> facets_;

    struct Cache {
        std::mutex mu;
        std::optional<std::vector<FacetGeometry>> geometry;
    };
    std::shared_ptr<Cache> cache_;
};

/// Wulff shape [C, omega, f]: facets (u_i, -f_i) for f_i > 0.
CPolytope wulff_shape(const Cone& cone,
                      const std::vector<std::pair<Vec, double>>& atoms);

/// p-co-sum for p in (0,1]; log-co-sum (tau-weighted) for p = 0. Requires
/// identical facet-normal sets.
CPolytope p_co_sum(const CPolytope& a1, const CPolytope& a2, double p,
                   std::optional<double> tau = std::nullopt);

/// min { |x| : x in A } by active-set enumeration (exact at this scale).
double b_distance(const CPolytope& p);

/// Closest point of the polyhedron {a_j.x <= b_j} to `point`; enumerates
/// active sets of size 0..n. Returns nullopt when infeasible.
std::optional<Vec> closest_point(const std::vector<Halfspace>& cons,
                                 const Vec& point);

/// Vertices of the (bounded) polyhedron {a_j.x <= b_j}, n <= 3.
std::vector<Vec> enumerate_vertices(const std::vector<Halfspace>& cons, int dim);

/// Hausdorff distance between A cap C_t and B cap C_t (vertex-based).
double hausdorff_truncated(const CPolytope& a, const CPolytope& b, double t);

}  // namespace coneminq
