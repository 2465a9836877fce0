#include "coneminq/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coneminq/lp.hpp"

namespace coneminq {
namespace {

constexpr double kDupAngle = 1e-9;

bool same_ray(const Vec& a, const Vec& b) {
    return angle_between(a, b) < kDupAngle;
}

// Chebyshev-style interior direction: maximize t s.t. g.xi >= t, |xi_k| <= 1.
// Returns (xi, t); t <= 0 means the cone is not pointed.
std::pair<Vec, double> chebyshev_direction(const std::vector<Vec>& gens, int n) {
    const int m = static_cast<int>(gens.size());
    // vars: a_1..a_n (xi = a - 1, a in [0,2]), tp, tm (t = tp - tm)
    const int nv = n + 2;
    Mat A = Mat::Zero(m + n, nv);
    Vec b = Vec::Zero(m + n);
    Vec c = Vec::Zero(nv);
    c[n] = 1.0;
    c[n + 1] = -1.0;
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < n; ++k) A(i, k) = -gens[i][k];
        A(i, n) = 1.0;
        A(i, n + 1) = -1.0;
        b[i] = -gens[i].sum();
    }
    for (int k = 0; k < n; ++k) {
        A(m + k, k) = 1.0;
        b[m + k] = 2.0;
    }
    const LpResult res = solve_lp_max(c, A, b);
    if (res.status != LpResult::Status::Optimal)
        throw Error("chebyshev direction LP failed");
    Vec xi(n);
    for (int k = 0; k < n; ++k) xi[k] = res.x[k] - 1.0;
    return {xi, res.objective};
}

// Extreme rays of {y : g.y <= 0 for all g} by brute-force enumeration of
// (n-1)-subsets; adequate for n <= 4 at this scale.
std::vector<Vec> dual_extreme_rays(const std::vector<Vec>& gens, int n) {
    const int m = static_cast<int>(gens.size());
    std::vector<Vec> rays;
    std::vector<int> idx(n - 1);

    auto try_subset = [&](const std::vector<int>& sub) {
        Mat M(n - 1, n);
        for (int r = 0; r < n - 1; ++r) M.row(r) = gens[sub[r]].transpose();
        Eigen::FullPivLU<Mat> lu(M);
        if (lu.rank() != n - 1) return;
        Vec d = lu.kernel().col(0);
        d.normalize();
        for (int sign = 0; sign < 2; ++sign) {
            const Vec cand = sign ? Vec(-d) : d;
            bool ok = true;
            for (int i = 0; i < m; ++i) {
                if (gens[i].dot(cand) > 1e-10) { ok = false; break; }
            }
            if (!ok) continue;
            bool dup = false;
            for (const Vec& r : rays)
                if (same_ray(r, cand)) { dup = true; break; }
            if (!dup) rays.push_back(cand);
        }
    };

    std::vector<int> sub(n - 1);
    // iterate over combinations
    std::vector<int> comb(n - 1);
    for (int i = 0; i < n - 1; ++i) comb[i] = i;
    if (m < n - 1) return rays;
    while (true) {
        try_subset(comb);
        int i = n - 2;
        while (i >= 0 && comb[i] == m - (n - 1) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < n - 1; ++j) comb[j] = comb[j - 1] + 1;
    }
    // canonical order for determinism
    std::sort(rays.begin(), rays.end(), [](const Vec& a, const Vec& b) {
        for (int k = 0; k < a.size(); ++k) {
            if (a[k] < b[k] - 1e-12) return true;
            if (a[k] > b[k] + 1e-12) return false;
        }
        return false;
    });
    return rays;
}

}  // namespace

Cone Cone::polyhedral(int dim, const std::vector<Vec>& generators) {
    if (dim < 2) throw UnsupportedDim("cone dimension must be >= 2");
    if (static_cast<int>(generators.size()) < dim)
        throw DegenerateCone("need at least dim generators");

    Cone c;
    c.dim_ = dim;
    c.kind_ = Kind::Polyhedral;
    for (const Vec& g : generators) {
        if (g.size() != dim) throw InputError("generator dimension mismatch");
        const Vec gn = normalized(g);
        bool dup = false;
        for (const Vec& e : c.generators_)
            if (same_ray(e, gn)) { dup = true; break; }
        if (!dup) c.generators_.push_back(gn);
    }

    // Pointedness first: a strictly separating direction must exist.
    const auto [xi, t] = chebyshev_direction(c.generators_, dim);
    if (t <= 1e-10) throw NotPointed("cone contains a line");
    (void)xi;

    Mat G(c.generators_.size(), dim);
    for (size_t i = 0; i < c.generators_.size(); ++i)
        G.row(static_cast<Eigen::Index>(i)) = c.generators_[i].transpose();
    if (Eigen::FullPivLU<Mat>(G).rank() != dim)
        throw DegenerateCone("generators do not span the space");

    if (dim > 4)
        throw UnsupportedDim("polyhedral polar computation limited to dim <= 4");
    c.polar_generators_ = dual_extreme_rays(c.generators_, dim);
    if (static_cast<int>(c.polar_generators_.size()) < dim)
        throw DegenerateCone("polar cone is degenerate");

    // duality consistency
    for (const Vec& g : c.generators_)
        for (const Vec& w : c.polar_generators_)
            if (g.dot(w) > 1e-12)
                throw Error("polar generator violates duality");

    // extreme rays: tight on a rank-(dim-1) set of facet normals
    for (const Vec& g : c.generators_) {
        Mat T(c.polar_generators_.size(), dim);
        int nt = 0;
        for (const Vec& w : c.polar_generators_)
            if (std::abs(g.dot(w)) <= 1e-9) T.row(nt++) = w.transpose();
        if (nt >= dim - 1 &&
            Eigen::FullPivLU<Mat>(T.topRows(nt)).rank() == dim - 1)
            c.extreme_rays_.push_back(g);
    }
    if (static_cast<int>(c.extreme_rays_.size()) < dim)
        throw DegenerateCone("could not identify extreme rays");
    return c;
}

Cone Cone::circular(const Vec& axis, double half_angle) {
    const int dim = static_cast<int>(axis.size());
    if (dim < 2) throw UnsupportedDim("cone dimension must be >= 2");
    if (!(half_angle > 0.0 && half_angle < std::numbers::pi / 2))
        throw NotPointed("circular half-angle must lie in (0, pi/2)");
    Cone c;
    c.dim_ = dim;
    c.kind_ = Kind::Circular;
    c.axis_ = normalized(axis);
    c.half_angle_ = half_angle;
    return c;
}

Cone build_cone(int dim, const std::vector<Vec>& generators) {
    return Cone::polyhedral(dim, generators);
}

Cone build_circular_cone(const Vec& axis, double half_angle) {
    return Cone::circular(axis, half_angle);
}

Cone Cone::polar() const {
    if (kind_ == Kind::Circular)
        return circular(-axis_, std::numbers::pi / 2 - half_angle_);
    return polyhedral(dim_, polar_generators_);
}

bool Cone::omega_contains(const Vec& v) const {
    if (v.size() != dim_) throw InputError("dimension mismatch");
    if (std::abs(v.norm() - 1.0) > 1e-9) throw InvalidDirection("not a unit vector");
    if (kind_ == Kind::Circular)
        return angle_between(axis_, v) < half_angle_ - kAngleTol;
    for (const Vec& w : polar_generators_)
        if (v.dot(w) >= -kAngleTol) return false;
    return true;
}

double Cone::boundary_angle(const Vec& u) const {
    if (!omega_contains(u)) throw OutsideDomain("direction not in Omega");
    if (kind_ == Kind::Circular) return half_angle_ - angle_between(axis_, u);
    if (dim_ == 2) {
        double best = std::numbers::pi;
        for (const Vec& r : extreme_rays_)
            best = std::min(best, angle_between(u, r));
        return best;
    }
    // distance to the nearest facet great circle; exact for a convex
    // spherical polygon inside an open hemisphere
    double best = std::numbers::pi;
    for (const Vec& w : polar_generators_)
        best = std::min(best, std::asin(std::clamp(-u.dot(w), 0.0, 1.0)));
    return best;
}

Vec Cone::reference_direction() const {
    if (kind_ == Kind::Circular) return axis_;
    Vec mean = Vec::Zero(dim_);
    for (const Vec& g : generators_) mean += g;
    if (mean.norm() > 1e-12) {
        mean.normalize();
        bool ok = true;
        for (const Vec& g : generators_)
            if (g.dot(mean) <= 1e-10) { ok = false; break; }
        if (ok) return mean;
    }
    const auto [xi, t] = chebyshev_direction(generators_, dim_);
    if (t <= 1e-10) throw NotPointed("no strictly interior direction");
    return normalized(xi);
}

std::vector<Vec> omega_polygon(const Cone& cone) {
    if (cone.kind() != Cone::Kind::Polyhedral || cone.dim() != 3)
        throw UnsupportedDim("omega_polygon requires a polyhedral cone in dim 3");
    const Vec xi = cone.reference_direction();
    Vec e1 = Vec::Zero(3);
    e1[std::abs(xi[0]) < 0.9 ? 0 : 1] = 1.0;
    e1 = normalized(e1 - xi * xi.dot(e1));
    Vec e2(3);
    e2 << xi[1] * e1[2] - xi[2] * e1[1], xi[2] * e1[0] - xi[0] * e1[2],
        xi[0] * e1[1] - xi[1] * e1[0];
    std::vector<Vec> verts = cone.extreme_rays();
    std::sort(verts.begin(), verts.end(), [&](const Vec& a, const Vec& b) {
        return std::atan2(a.dot(e2), a.dot(e1)) < std::atan2(b.dot(e2), b.dot(e1));
    });
    return verts;
}

double Cone::omega_area() const {
    if (kind_ == Kind::Circular) {
        if (dim_ == 2) return 2.0 * half_angle_;
        if (dim_ == 3) return 2.0 * std::numbers::pi * (1.0 - std::cos(half_angle_));
        throw UnsupportedDim("omega_area for circular cones: dim <= 3");
    }
    if (dim_ == 2) return angle_between(extreme_rays_[0], extreme_rays_[1]);
    if (dim_ == 3) {
        const std::vector<Vec> verts = omega_polygon(*this);
        const int k = static_cast<int>(verts.size());
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            const Vec& v = verts[i];
            const Vec& vp = verts[(i + k - 1) % k];
            const Vec& vn = verts[(i + 1) % k];
            const Vec tp = normalized(vp - v * v.dot(vp));
            const Vec tn = normalized(vn - v * v.dot(vn));
            sum += std::acos(std::clamp(tp.dot(tn), -1.0, 1.0));
        }
        return sum - (k - 2) * std::numbers::pi;
    }
    throw UnsupportedDim("omega_area for polyhedral cones: dim <= 3");
}

bool Cone::contains(const Vec& x, double tol) const {
    if (x.norm() <= tol) return true;
    if (kind_ == Kind::Circular) return angle_between(axis_, x) <= half_angle_ + tol;
    for (const Vec& w : polar_generators_)
        if (x.dot(w) > tol * std::max(1.0, x.norm())) return false;
    return true;
}

}  // namespace coneminq
