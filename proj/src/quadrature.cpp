#include "coneminq/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace coneminq {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = p0 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
    }
}

double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c) {
    const double la = angle_between(b, c);
    const double lb = angle_between(a, c);
    const double lc = angle_between(a, b);
    const double s = (la + lb + lc) / 2.0;
    const double t = std::tan(s / 2.0) * std::tan((s - la) / 2.0) *
                     std::tan((s - lb) / 2.0) * std::tan((s - lc) / 2.0);
    return 4.0 * std::atan(std::sqrt(std::max(t, 0.0)));
}

double QuadratureGrid::weight_sum() const {
    KahanSum s;
    for (double w : weights) s.add(w);
    return s.value();
}

namespace {

QuadratureGrid grid_arc(const Cone& cone, int resolution, std::uint64_t seed) {
    QuadratureGrid grid;
    grid.resolution = resolution;
    grid.seed = seed;
    grid.scheme = "gauss-arc";
    Vec r0, e;
    double span;
    if (cone.kind() == Cone::Kind::Circular) {
        // arc of width 2*alpha centered at the axis
        Vec perp(2);
        perp << -cone.axis()[1], cone.axis()[0];
        span = 2.0 * cone.half_angle();
        r0 = std::cos(cone.half_angle()) * cone.axis() -
             std::sin(cone.half_angle()) * perp;
        e = normalized(cone.axis() - r0 * r0.dot(cone.axis()));
    } else {
        r0 = cone.extreme_rays()[0];
        const Vec r1 = cone.extreme_rays()[1];
        span = angle_between(r0, r1);
        e = normalized(r1 - r0 * r0.dot(r1));
    }
    const int per_panel = 16;
    const int panels = std::max(1, resolution / per_panel);
    std::vector<double> gx, gw;
    gauss_legendre(per_panel, gx, gw);
    for (int p = 0; p < panels; ++p) {
        const double a = span * p / panels;
        const double b = span * (p + 1) / panels;
        for (int k = 0; k < per_panel; ++k) {
            const double th = 0.5 * (a + b) + 0.5 * (b - a) * gx[k];
            grid.nodes.push_back(std::cos(th) * r0 + std::sin(th) * e);
            grid.weights.push_back(0.5 * (b - a) * gw[k]);
        }
    }
    return grid;
}

void subdivide(const Vec& a, const Vec& b, const Vec& c, int level,
               QuadratureGrid& grid) {
    if (level == 0) {
        grid.nodes.push_back(normalized(a + b + c));
        grid.weights.push_back(spherical_triangle_area(a, b, c));
        return;
    }
    const Vec ab = normalized(a + b);
    const Vec bc = normalized(b + c);
    const Vec ca = normalized(c + a);
    subdivide(a, ab, ca, level - 1, grid);
    subdivide(ab, b, bc, level - 1, grid);
    subdivide(ca, bc, c, level - 1, grid);
    subdivide(ab, bc, ca, level - 1, grid);
}

QuadratureGrid grid_polygon(const Cone& cone, int resolution, std::uint64_t seed) {
    QuadratureGrid grid;
    grid.resolution = resolution;
    grid.seed = seed;
    grid.scheme = "geodesic-subdivision";
    const std::vector<Vec> verts = omega_polygon(cone);
    const int k = static_cast<int>(verts.size());
    Vec center = Vec::Zero(3);
    for (const Vec& v : verts) center += v;
    center.normalize();
    int level = 0;
    while (k * (1 << (2 * level)) < resolution) ++level;
    for (int i = 0; i < k; ++i)
        subdivide(center, verts[i], verts[(i + 1) % k], level, grid);
    return grid;
}

QuadratureGrid grid_cap(const Cone& cone, int resolution, std::uint64_t seed) {
    QuadratureGrid grid;
    grid.resolution = resolution;
    grid.seed = seed;
    grid.scheme = "cap-product";
    const Vec& a = cone.axis();
    Vec e1 = Vec::Zero(3);
    e1[std::abs(a[0]) < 0.9 ? 0 : 1] = 1.0;
    e1 = normalized(e1 - a * a.dot(e1));
    Vec e2(3);
    e2 << a[1] * e1[2] - a[2] * e1[1], a[2] * e1[0] - a[0] * e1[2],
        a[0] * e1[1] - a[1] * e1[0];
    const int nz = std::max(4, static_cast<int>(std::lround(std::sqrt(resolution / 2.0))));
    const int nphi = (resolution + nz - 1) / nz;
    std::vector<double> gx, gw;
    gauss_legendre(nz, gx, gw);
    const double zlo = std::cos(cone.half_angle());
    for (int i = 0; i < nz; ++i) {
        const double z = 0.5 * (1.0 + zlo) + 0.5 * (1.0 - zlo) * gx[i];
        const double wz = 0.5 * (1.0 - zlo) * gw[i];
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * std::numbers::pi * (j + 0.5) / nphi;
            grid.nodes.push_back(z * a + r * (std::cos(phi) * e1 + std::sin(phi) * e2));
            grid.weights.push_back(wz * 2.0 * std::numbers::pi / nphi);
        }
    }
    return grid;
}

QuadratureGrid grid_mc4(const Cone& cone, int resolution, std::uint64_t seed) {
    QuadratureGrid grid;
    grid.resolution = resolution;
    grid.seed = seed;
    grid.scheme = "monte-carlo";
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const double sphere_area = 2.0 * std::numbers::pi * std::numbers::pi;
    std::uint64_t total = 0;
    while (static_cast<int>(grid.nodes.size()) < resolution && total < 50'000'000ULL) {
        Vec v(4);
        for (int k = 0; k < 4; ++k) v[k] = nd(rng);
        ++total;
        if (v.norm() < 1e-12) continue;
        v.normalize();
        if (cone.omega_contains(v)) grid.nodes.push_back(v);
    }
    if (grid.nodes.empty()) throw Error("Monte Carlo grid found no interior nodes");
    const double w = sphere_area / static_cast<double>(total);
    grid.weights.assign(grid.nodes.size(), w);
    return grid;
}

}  // namespace

QuadratureGrid make_grid(const Cone& cone, int resolution, std::uint64_t seed) {
    if (resolution < 16) throw InputError("grid resolution must be >= 16");
    if (cone.dim() == 2) return grid_arc(cone, resolution, seed);
    if (cone.dim() == 3) {
        return cone.kind() == Cone::Kind::Circular ? grid_cap(cone, resolution, seed)
                                                   : grid_polygon(cone, resolution, seed);
    }
    if (cone.dim() == 4) return grid_mc4(cone, resolution, seed);
    throw UnsupportedDim("quadrature grids support dim <= 4");
}

}  // namespace coneminq
