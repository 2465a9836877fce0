#include "coneminq/measures.hpp"

#include <cmath>

namespace coneminq {

double DiscreteMeasure::total_mass() const {
    KahanSum s;
    for (const MeasureAtom& a : atoms) s.add(a.mass);
    return s.value();
}

double dual_volume(const CPolytope& p, double q, const QuadratureGrid& grid) {
    if (q == 0.0) throw InvalidP("dual volume requires q != 0");
    KahanSum s;
    for (int k = 0; k < grid.size(); ++k)
        s.add(grid.weights[k] * std::pow(p.radial(grid.nodes[k]).rho, q));
    return s.value() / p.cone().dim();
}

double dual_entropy(const CPolytope& p, const QuadratureGrid& grid) {
    KahanSum s;
    for (int k = 0; k < grid.size(); ++k)
        s.add(grid.weights[k] * std::log(p.radial(grid.nodes[k]).rho));
    return s.value();
}

std::vector<double> pq_masses(const CPolytope& p, double pexp, double qexp,
                              const QuadratureGrid& grid) {
    const int m = p.facet_count();
    std::vector<KahanSum> sums(m);
    for (int k = 0; k < grid.size(); ++k) {
        const RadialResult r = p.radial(grid.nodes[k]);
        const double f = qexp == 0.0 ? 1.0 : std::pow(r.rho, qexp);
        sums[r.facet].add(grid.weights[k] * f);
    }
    std::vector<double> c(m);
    for (int i = 0; i < m; ++i) {
        const double scale = std::pow(-p.facets()[i].h, -pexp);
        c[i] = scale * sums[i].value();
        if (qexp != 0.0) c[i] /= p.cone().dim();
    }
    return c;
}

DiscreteMeasure pq_measure(const CPolytope& p, double pexp, double qexp,
                           const QuadratureGrid& grid) {
    const std::vector<double> c = pq_masses(p, pexp, qexp, grid);
    DiscreteMeasure mu;
    mu.domain = DiscreteMeasure::Domain::OmegaPolar;
    for (int i = 0; i < p.facet_count(); ++i)
        if (c[i] > 0.0) mu.atoms.push_back({p.facets()[i].u, c[i], 0.0});
    return mu;
}

namespace {

// Composite Gauss panels on the planar polar arc with panel boundaries
// aligned to the radial switch angles of the polytope, so the integrand on
// every panel is smooth and the panel rule converges at full order.
QuadratureGrid adapted_arc_grid(const CPolytope& p, int resolution) {
    const Cone& cone = p.cone();
    const Vec r0 = cone.extreme_rays()[0];
    const Vec r1 = cone.extreme_rays()[1];
    const double span = angle_between(r0, r1);
    const Vec e = normalized(r1 - r0 * r0.dot(r1));
    const auto dir = [&](double t) {
        return Vec(std::cos(t) * r0 + std::sin(t) * e);
    };
    // locate switch angles by scan + bisection
    std::vector<double> breaks = {0.0};
    const int scan = 4096;
    int prev = p.radial(dir(span * 0.5 / scan)).facet;
    for (int k = 1; k < scan; ++k) {
        const double t = span * (k + 0.5) / scan;
        const int cur = p.radial(dir(t)).facet;
        if (cur != prev) {
            double lo = span * (k - 0.5) / scan, hi = t;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (p.radial(dir(mid)).facet == prev ? lo : hi) = mid;
            }
            breaks.push_back(0.5 * (lo + hi));
            prev = cur;
        }
    }
    breaks.push_back(span);
    QuadratureGrid grid;
    grid.resolution = resolution;
    grid.scheme = "gauss-arc-adapted";
    const int per_panel = 16;
    std::vector<double> gx, gw;
    gauss_legendre(per_panel, gx, gw);
    const int total_panels =
        std::max<int>(static_cast<int>(breaks.size()) - 1, resolution / per_panel);
    for (size_t s = 0; s + 1 < breaks.size(); ++s) {
        const double a0 = breaks[s], b0 = breaks[s + 1];
        const int panels = std::max(
            1, static_cast<int>(std::lround(total_panels * (b0 - a0) / span)));
        for (int q = 0; q < panels; ++q) {
            const double a = a0 + (b0 - a0) * q / panels;
            const double b = a0 + (b0 - a0) * (q + 1) / panels;
            for (int k = 0; k < per_panel; ++k) {
                const double th = 0.5 * (a + b) + 0.5 * (b - a) * gx[k];
                grid.nodes.push_back(dir(th));
                grid.weights.push_back(0.5 * (b - a) * gw[k]);
            }
        }
    }
    return grid;
}

// Geodesic subdivision masses with extra refinement along the spherical
// region boundaries, where the facet classification of the integrand jumps.
// Leaf triangles whose corners and centroid agree on the facet are integrated
// by the centroid rule; mixed leaves are subdivided further so the
// misclassified band shrinks geometrically.
// argmax facet of the radial map, valid on the closure of the domain (the
// facet normals are strictly interior to the polar region, so u . v < 0
// holds up to and including the boundary rays)
int radial_facet(const CPolytope& p, const Vec& v, double* rho = nullptr) {
    int best = 0;
    double best_rho = -1.0;
    for (int i = 0; i < p.facet_count(); ++i) {
        const double d = p.facets()[i].u.dot(v);
        if (d >= 0.0) continue;
        const double r = p.facets()[i].h / d;
        if (r > best_rho * (1.0 + 1e-15)) {
            best_rho = r;
            best = i;
        }
    }
    if (rho) *rho = best_rho;
    return best;
}

void adapted_sphere_masses(const CPolytope& p, double qexp, const Vec& a,
                           const Vec& b, const Vec& c, int level, int extra,
                           std::vector<KahanSum>& sums) {
    const Vec mid = normalized(a + b + c);
    double rho_mid = 0.0;
    const int fm = radial_facet(p, mid, &rho_mid);
    bool mixed = false;
    for (const Vec* v : {&a, &b, &c})
        if (radial_facet(p, *v) != fm) mixed = true;
    if (level <= 0 && (!mixed || extra <= 0)) {
        const double f = qexp == 0.0 ? 1.0 : std::pow(rho_mid, qexp);
        sums[fm].add(spherical_triangle_area(a, b, c) * f);
        return;
    }
    const int nl = level > 0 ? level - 1 : 0;
    const int ne = level > 0 ? extra : extra - 1;
    const Vec ab = normalized(a + b), bc = normalized(b + c),
              ca = normalized(c + a);
    adapted_sphere_masses(p, qexp, a, ab, ca, nl, ne, sums);
    adapted_sphere_masses(p, qexp, ab, b, bc, nl, ne, sums);
    adapted_sphere_masses(p, qexp, ca, bc, c, nl, ne, sums);
    adapted_sphere_masses(p, qexp, ab, bc, ca, nl, ne, sums);
}

std::vector<double> adapted_sphere_pq_masses(const CPolytope& p, double pexp,
                                             double qexp, int resolution) {
    const std::vector<Vec> verts = omega_polygon(p.cone());
    const int k = static_cast<int>(verts.size());
    Vec center = Vec::Zero(3);
    for (const Vec& v : verts) center += v;
    center.normalize();
    int level = 0;
    while (k * (1 << (2 * level)) < resolution) ++level;
    std::vector<KahanSum> sums(p.facet_count());
    for (int i = 0; i < k; ++i)
        adapted_sphere_masses(p, qexp, center, verts[i], verts[(i + 1) % k],
                              level, 5, sums);
    std::vector<double> c(p.facet_count());
    for (int i = 0; i < p.facet_count(); ++i) {
        c[i] = std::pow(-p.facets()[i].h, -pexp) * sums[i].value();
        if (qexp != 0.0) c[i] /= p.cone().dim();
    }
    return c;
}

}  // namespace

DiscreteMeasure pq_measure_with_error(const CPolytope& p, double pexp,
                                      double qexp, int resolution,
                                      std::uint64_t seed) {
    std::vector<double> cf, cc, cq;
    if (p.cone().dim() == 2 && p.cone().kind() == Cone::Kind::Polyhedral) {
        cf = pq_masses(p, pexp, qexp, adapted_arc_grid(p, resolution));
        cc = pq_masses(p, pexp, qexp,
                       adapted_arc_grid(p, std::max(16, resolution / 2)));
        cq = cc;
    } else if (p.cone().dim() == 3 &&
               p.cone().kind() == Cone::Kind::Polyhedral) {
        cf = adapted_sphere_pq_masses(p, pexp, qexp, resolution);
        cc = adapted_sphere_pq_masses(p, pexp, qexp,
                                      std::max(16, resolution / 4));
        cq = cc;
    } else {
        cf = pq_masses(p, pexp, qexp, make_grid(p.cone(), resolution, seed));
        cc = pq_masses(p, pexp, qexp,
                       make_grid(p.cone(), std::max(16, resolution / 2), seed));
        cq = pq_masses(p, pexp, qexp,
                       make_grid(p.cone(), std::max(16, resolution / 4), seed));
    }
    DiscreteMeasure mu;
    mu.domain = DiscreteMeasure::Domain::OmegaPolar;
    for (int i = 0; i < p.facet_count(); ++i) {
        if (cf[i] <= 0.0) continue;
        const double err = std::max(std::abs(cf[i] - cc[i]),
                                    0.5 * std::abs(cc[i] - cq[i]));
        mu.atoms.push_back({p.facets()[i].u, cf[i], err});
    }
    return mu;
}

namespace {

// int over the segment [a,b] of |x|^s, composite Gauss-Legendre.
double segment_norm_integral(const Vec& a, const Vec& b, double s) {
    static std::vector<double> gx, gw;
    if (gx.empty()) gauss_legendre(32, gx, gw);
    const int panels = 8;
    const double len = (b - a).norm();
    KahanSum sum;
    for (int p = 0; p < panels; ++p) {
        const double t0 = static_cast<double>(p) / panels;
        const double t1 = static_cast<double>(p + 1) / panels;
        for (size_t k = 0; k < gx.size(); ++k) {
            const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * gx[k];
            const Vec x = a + t * (b - a);
            sum.add(0.5 * (t1 - t0) * gw[k] * std::pow(x.norm(), s));
        }
    }
    return len * sum.value();
}

// Degree-4 symmetric 6-point rule on a flat triangle (weights sum to 1,
// applied against the triangle area).
double triangle_rule(const Vec& a, const Vec& b, const Vec& c, double s) {
    static const double w1 = 0.223381589678011, w2 = 0.109951743655322;
    static const double g1 = 0.445948490915965, g2 = 0.091576213509771;
    const Vec e1 = b - a, e2 = c - a;
    Vec nrm(3);
    nrm << e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0];
    const double area = 0.5 * nrm.norm();
    const auto f = [&](double l1, double l2, double l3) {
        return std::pow((l1 * a + l2 * b + l3 * c).norm(), s);
    };
    double v = 0.0;
    v += w1 * (f(g1, g1, 1 - 2 * g1) + f(g1, 1 - 2 * g1, g1) + f(1 - 2 * g1, g1, g1));
    v += w2 * (f(g2, g2, 1 - 2 * g2) + f(g2, 1 - 2 * g2, g2) + f(1 - 2 * g2, g2, g2));
    return area * v;
}

double triangle_norm_integral(const Vec& a, const Vec& b, const Vec& c,
                              double s, int level) {
    if (level == 0) return triangle_rule(a, b, c, s);
    const Vec ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
    return triangle_norm_integral(a, ab, ca, s, level - 1) +
           triangle_norm_integral(ab, b, bc, s, level - 1) +
           triangle_norm_integral(ca, bc, c, s, level - 1) +
           triangle_norm_integral(ab, bc, ca, s, level - 1);
}

double polygon_norm_integral(const std::vector<Vec>& verts, double s, int level) {
    Vec centroid = Vec::Zero(3);
    for (const Vec& v : verts) centroid += v;
    centroid /= static_cast<double>(verts.size());
    const int k = static_cast<int>(verts.size());
    KahanSum sum;
    for (int i = 0; i < k; ++i)
        sum.add(triangle_norm_integral(centroid, verts[i], verts[(i + 1) % k], s,
                                       level));
    return sum.value();
}

}  // namespace

DiscreteMeasure pq_measure_boundary(const CPolytope& p, double pexp,
                                    double qexp) {
    const int n = p.cone().dim();
    if (n > 3) throw UnsupportedDim("boundary-integral path requires dim <= 3");
    if (b_distance(p) <= 0.0) throw Error("set touches the origin");
    // For q = 0 the density representation has no 1/n factor and the norm
    // exponent is -n; otherwise the exponent is q - n.
    const double s = (qexp == 0.0 ? 0.0 : qexp) - n;
    DiscreteMeasure mu;
    mu.domain = DiscreteMeasure::Domain::OmegaPolar;
    for (const FacetGeometry& fg : p.facet_geometry()) {
        if (!fg.active()) continue;
        const Facet& f = p.facets()[fg.index];
        double integral, coarse;
        if (n == 2) {
            integral = segment_norm_integral(fg.vertices[0], fg.vertices[1], s);
            coarse = integral;
        } else {
            integral = polygon_norm_integral(fg.vertices, s, 4);
            coarse = polygon_norm_integral(fg.vertices, s, 3);
        }
        double c = std::pow(-f.h, 1.0 - pexp) * integral;
        if (qexp != 0.0) c /= n;
        mu.atoms.push_back({f.u, c, std::abs(integral - coarse)});
    }
    return mu;
}

Finiteness is_cq_close(const std::function<double(const Vec&)>& rho,
                       double qexp, const Cone& cone,
                       const std::vector<int>& resolutions) {
    if (resolutions.size() < 3) throw TooFewSamples("need >= 3 refinement levels");
    std::vector<double> est;
    for (int r : resolutions) {
        const QuadratureGrid grid = make_grid(cone, r, 0);
        KahanSum s;
        for (int k = 0; k < grid.size(); ++k)
            s.add(grid.weights[k] * std::pow(rho(grid.nodes[k]), qexp));
        est.push_back(s.value() / cone.dim());
    }
    bool cauchy = true;
    for (size_t j = 1; j < est.size(); ++j) {
        if (std::abs(est[j] - est[j - 1]) >
            1e-4 * std::max(1.0, std::abs(est[j])))
            cauchy = false;
    }
    if (cauchy) return Finiteness::Finite;
    // Not Cauchy: look at successive increments. Slowly decaying (or
    // non-decaying) increments under geometric refinement mean the
    // estimates grow without bound; geometrically decaying increments
    // mean the limit exists but convergence is merely slow.
    std::vector<double> inc;
    bool monotone = true;
    for (size_t j = 1; j < est.size(); ++j) {
        const double d = est[j] - est[j - 1];
        if (d <= 0.0) monotone = false;
        inc.push_back(d);
    }
    if (!monotone) return Finiteness::Inconclusive;
    bool slow = true, geometric = true;
    for (size_t j = 1; j < inc.size(); ++j) {
        const double r = inc[j] / inc[j - 1];
        if (r < 0.85) slow = false;
        if (r >= 0.85) geometric = false;
    }
    if (slow) return Finiteness::Diverging;
    if (geometric) return Finiteness::Finite;
    return Finiteness::Inconclusive;
}

}  // namespace coneminq
