#include "coneminq/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "coneminq/lp.hpp"

namespace coneminq {
namespace {

constexpr double kFeasTol = 1e-8;

bool polar_omega_contains(const Cone& cone, const Vec& u) {
    if (std::abs(u.norm() - 1.0) > 1e-9) return false;
    if (cone.kind() == Cone::Kind::Circular) {
        return angle_between(-cone.axis(), u) <
               std::acos(-1.0) / 2 - cone.half_angle() - kAngleTol;
    }
    for (const Vec& g : cone.extreme_rays())
        if (u.dot(g) >= -kAngleTol) return false;
    return true;
}

bool same_cone(const Cone& a, const Cone& b) {
    if (a.dim() != b.dim() || a.kind() != b.kind()) return false;
    if (a.kind() == Cone::Kind::Circular) {
        return angle_between(a.axis(), b.axis()) < 1e-9 &&
               std::abs(a.half_angle() - b.half_angle()) < 1e-9;
    }
    if (a.extreme_rays().size() != b.extreme_rays().size()) return false;
    for (const Vec& r : a.extreme_rays()) {
        bool found = false;
        for (const Vec& s : b.extreme_rays())
            if (angle_between(r, s) < 1e-9) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

Vec perp2(const Vec& u) {
    Vec d(2);
    d << -u[1], u[0];
    return d;
}

// Sutherland-Hodgman clip of a 2D polygon by { x : a.x <= b }.
std::vector<Eigen::Vector2d> clip_halfplane(const std::vector<Eigen::Vector2d>& poly,
                                            const Eigen::Vector2d& a, double b) {
    std::vector<Eigen::Vector2d> out;
    const int k = static_cast<int>(poly.size());
    for (int i = 0; i < k; ++i) {
        const Eigen::Vector2d& p = poly[i];
        const Eigen::Vector2d& q = poly[(i + 1) % k];
        const double dp = a.dot(p) - b;
        const double dq = a.dot(q) - b;
        if (dp <= 0) out.push_back(p);
        if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0)) {
            const double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

double polygon_area(const std::vector<Eigen::Vector2d>& poly) {
    double s = 0.0;
    const int k = static_cast<int>(poly.size());
    for (int i = 0; i < k; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % k];
        s += p.x() * q.y() - q.x() * p.y();
    }
    return std::abs(s) / 2.0;
}

}  // namespace

CPolytope::CPolytope(Cone cone, std::vector<Facet> facets)
    : cone_(std::move(cone)), facets_(std::move(facets)),
      cache_(std::make_shared<Cache>()) {
    if (facets_.empty()) throw InputError("a C-polytope needs at least one facet");
    for (Facet& f : facets_) {
        f.u = normalized(f.u);
        if (!polar_omega_contains(cone_, f.u))
            throw InvalidDirection("facet normal not strictly inside Omega of the polar cone");
        if (!(f.h < 0)) throw NonPositive("facet support value must be negative");
    }
}

RadialResult CPolytope::radial(const Vec& v) const {
    if (!cone_.omega_contains(v)) throw OutsideOmega("direction not in Omega_C");
    const int m = facet_count();
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
        const double denom = facets_[i].u.dot(v);  // < 0 on Omega_C
        best = std::max(best, facets_[i].h / denom);
    }
    // lowest-index tie-break, with a tie flag for quadrature bookkeeping
    int arg = -1;
    int hits = 0;
    for (int i = 0; i < m; ++i) {
        const double val = facets_[i].h / facets_[i].u.dot(v);
        if (val >= best - 1e-12 * best) {
            ++hits;
            if (arg < 0) arg = i;
        }
    }
    return {best, arg, hits > 1};
}

double CPolytope::support(const Vec& u) const {
    if (cone_.kind() != Cone::Kind::Polyhedral)
        throw UnsupportedDim("support LP requires a polyhedral cone");
    if (std::abs(u.norm() - 1.0) > 1e-9) throw InvalidDirection("not a unit vector");
    // u must lie strictly inside the polar cone, else the sup is not finite
    // (or degenerate on the boundary).
    for (const Vec& g : cone_.extreme_rays()) {
        if (u.dot(g) >= -kAngleTol) {
            if (u.dot(g) > kAngleTol)
                throw Unbounded("support direction outside the polar cone");
            throw OutsideOmega("support direction on the boundary of Omega");
        }
    }
    // Parametrize x = sum_k lambda_k g_k over the generators:
    //   max sum_k lambda_k (g_k.u)  s.t.  sum_k lambda_k (g_k.u_i) <= h_i.
    const auto& gens = cone_.generators();
    const int ng = static_cast<int>(gens.size());
    const int m = facet_count();
    Vec c(ng);
    for (int k = 0; k < ng; ++k) c[k] = gens[k].dot(u);
    Mat A(m, ng);
    Vec b(m);
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < ng; ++k) A(i, k) = gens[k].dot(facets_[i].u);
        b[i] = facets_[i].h;
    }
    const LpResult res = solve_lp_max(c, A, b);
    if (res.status == LpResult::Status::Unbounded)
        throw Unbounded("support LP unbounded");
    if (res.status != LpResult::Status::Optimal)
        throw Error("support LP infeasible");
    return res.objective;
}

double CPolytope::copolar_radial(const Vec& u) const { return -1.0 / support(u); }

std::vector<Halfspace> CPolytope::constraints() const {
    std::vector<Halfspace> cons;
    for (const Vec& w : cone_.polar_generators()) cons.push_back({w, 0.0});
    for (const Facet& f : facets_) cons.push_back({f.u, f.h});
    return cons;
}

const std::vector<FacetGeometry>& CPolytope::facet_geometry() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->geometry) return *cache_->geometry;

    const int n = cone_.dim();
    if (n > 3) throw UnsupportedDim("facet_geometry requires dim <= 3");
    if (cone_.kind() != Cone::Kind::Polyhedral)
        throw UnsupportedDim("facet_geometry requires a polyhedral cone");

    std::vector<FacetGeometry> out(facets_.size());
    const auto cons = constraints();
    for (int i = 0; i < facet_count(); ++i) {
        FacetGeometry& fg = out[i];
        fg.index = i;
        const Vec& u = facets_[i].u;
        const double h = facets_[i].h;
        if (n == 2) {
            const Vec p0 = h * u;
            const Vec d = perp2(u);
            double tlo = -std::numeric_limits<double>::infinity();
            double thi = std::numeric_limits<double>::infinity();
            for (const auto& [a, b] : cons) {
                const double ad = a.dot(d);
                const double rem = b - a.dot(p0);
                if (std::abs(ad) < 1e-14) {
                    if (rem < -kFeasTol) { tlo = 1; thi = 0; break; }
                } else if (ad > 0) {
                    thi = std::min(thi, rem / ad);
                } else {
                    tlo = std::max(tlo, rem / ad);
                }
            }
            if (thi - tlo > 1e-10) {
                fg.vertices = {p0 + tlo * d, p0 + thi * d};
                fg.measure = thi - tlo;
            }
        } else {
            // local frame on the supporting plane
            Vec e1 = Vec::Zero(3);
            e1[std::abs(u[0]) < 0.9 ? 0 : 1] = 1.0;
            e1 = normalized(e1 - u * u.dot(e1));
            Vec e2(3);
            e2 << u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2],
                u[0] * e1[1] - u[1] * e1[0];
            const Vec p0 = h * u;
            // The facet is bounded: |x| <= -h / min_g(-g.u) on it.
            double cmin = 1.0;
            for (const Vec& g : cone_.extreme_rays())
                cmin = std::min(cmin, -g.dot(u));
            const double R = 4.0 * (-h) / std::max(cmin, 1e-6);
            std::vector<Eigen::Vector2d> poly = {
                {-R, -R}, {R, -R}, {R, R}, {-R, R}};
            for (const auto& [a, b] : cons) {
                if ((a - u).norm() < 1e-12) continue;  // the facet's own plane
                const Eigen::Vector2d a2(a.dot(e1), a.dot(e2));
                const double b2 = b - a.dot(p0);
                if (a2.norm() < 1e-13) {
                    if (b2 < -kFeasTol) { poly.clear(); break; }
                    continue;
                }
                poly = clip_halfplane(poly, a2, b2);
                if (poly.empty()) break;
            }
            const double area = poly.size() >= 3 ? polygon_area(poly) : 0.0;
            if (area > 1e-12) {
                fg.measure = area;
                for (const auto& q : poly)
                    fg.vertices.push_back(p0 + q.x() * e1 + q.y() * e2);
            }
        }
        for (const Vec& v : fg.vertices) fg.spherical_vertices.push_back(normalized(v));
    }
    cache_->geometry = std::move(out);
    return *cache_->geometry;
}

CPolytope CPolytope::scaled(double lambda) const {
    if (!(lambda > 0)) throw NonPositive("scale factor must be positive");
    std::vector<Facet> fs = facets_;
    for (Facet& f : fs) f.h *= lambda;
    return CPolytope(cone_, std::move(fs));
}

CPolytope wulff_shape(const Cone& cone,
                      const std::vector<std::pair<Vec, double>>& atoms) {
    if (atoms.empty()) throw InputError("empty atom list");
    std::vector<Facet> facets;
    for (const auto& [u, f] : atoms) {
        if (!(f > 0)) throw NonPositive("Wulff values must be positive");
        const Vec un = normalized(u);
        if (!polar_omega_contains(cone, un))
            throw InvalidDirection("Wulff direction not in Omega of the polar cone");
        facets.push_back({un, -f});
    }
    return CPolytope(cone, std::move(facets));
}

CPolytope p_co_sum(const CPolytope& a1, const CPolytope& a2, double p,
                   std::optional<double> tau) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidP("p-co-sum requires p in [0,1]");
    if (!same_cone(a1.cone(), a2.cone()))
        throw MismatchedNormals("co-sum operands live on different cones");
    const int m = a1.facet_count();
    if (m != a2.facet_count())
        throw MismatchedNormals("co-sum requires identical facet-normal sets");
    std::vector<Facet> facets;
    for (int i = 0; i < m; ++i) {
        const Vec& u = a1.facets()[i].u;
        int j = -1;
        for (int k = 0; k < m; ++k)
            if (angle_between(u, a2.facets()[k].u) < 1e-9) { j = k; break; }
        if (j < 0) throw MismatchedNormals("facet normal missing from second operand");
        const double f1 = -a1.facets()[i].h;
        const double f2 = -a2.facets()[j].h;
        double f;
        if (p == 0.0) {
            const double t = tau.value_or(0.5);
            if (!(t >= 0.0 && t <= 1.0)) throw InvalidP("tau must lie in [0,1]");
            f = std::pow(f1, 1.0 - t) * std::pow(f2, t);
        } else {
            f = std::pow(std::pow(f1, p) + std::pow(f2, p), 1.0 / p);
        }
        facets.push_back({u, -f});
    }
    return CPolytope(a1.cone(), std::move(facets));
}

std::optional<Vec> closest_point(const std::vector<Halfspace>& cons,
                                 const Vec& point) {
    const int n = static_cast<int>(point.size());
    const int m = static_cast<int>(cons.size());
    auto feasible = [&](const Vec& x) {
        for (const auto& [a, b] : cons)
            if (a.dot(x) > b + kFeasTol * std::max(1.0, x.norm())) return false;
        return true;
    };
    std::optional<Vec> best;
    double best_d = std::numeric_limits<double>::infinity();
    auto consider = [&](const Vec& x) {
        const double d = (x - point).norm();
        if (feasible(x) && d < best_d) {
            best = x;
            best_d = d;
        }
    };
    consider(point);

    std::vector<int> subset;
    auto project = [&]() {
        const int k = static_cast<int>(subset.size());
        Mat A(k, n);
        Vec b(k);
        for (int r = 0; r < k; ++r) {
            A.row(r) = cons[subset[r]].a.transpose();
            b[r] = cons[subset[r]].b;
        }
        const Mat AAt = A * A.transpose();
        Eigen::FullPivLU<Mat> lu(AAt);
        if (!lu.isInvertible()) return;
        const Vec x = point - A.transpose() * lu.solve(A * point - b);
        consider(x);
    };
    // all active sets of size 1..n
    std::vector<int> stack;
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == 0) return;
        for (int i = start; i < m; ++i) {
            subset.push_back(i);
            project();
            rec(i + 1, depth - 1);
            subset.pop_back();
        }
    };
    rec(0, n);
    return best;
}

double b_distance(const CPolytope& p) {
    const auto x = closest_point(p.constraints(), Vec::Zero(p.cone().dim()));
    if (!x) throw Error("b_distance: empty polytope");
    return x->norm();
}

std::vector<Vec> enumerate_vertices(const std::vector<Halfspace>& cons, int dim) {
    if (dim > 3) throw UnsupportedDim("vertex enumeration requires dim <= 3");
    const int m = static_cast<int>(cons.size());
    std::vector<Vec> verts;
    std::vector<int> comb(dim);
    for (int i = 0; i < dim; ++i) comb[i] = i;
    if (m < dim) return verts;
    auto feasible = [&](const Vec& x) {
        for (const auto& [a, b] : cons)
            if (a.dot(x) > b + kFeasTol * std::max(1.0, x.norm())) return false;
        return true;
    };
    while (true) {
        Mat A(dim, dim);
        Vec b(dim);
        for (int r = 0; r < dim; ++r) {
            A.row(r) = cons[comb[r]].a.transpose();
            b[r] = cons[comb[r]].b;
        }
        Eigen::FullPivLU<Mat> lu(A);
        if (lu.isInvertible()) {
            const Vec x = lu.solve(b);
            if (feasible(x)) {
                bool dup = false;
                for (const Vec& v : verts)
                    if ((v - x).norm() < 1e-7 * std::max(1.0, x.norm())) {
                        dup = true;
                        break;
                    }
                if (!dup) verts.push_back(x);
            }
        }
        int i = dim - 1;
        while (i >= 0 && comb[i] == m - dim + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < dim; ++j) comb[j] = comb[j - 1] + 1;
    }
    return verts;
}

double hausdorff_truncated(const CPolytope& a, const CPolytope& b, double t) {
    if (!(t > 0)) throw InputError("truncation height must be positive");
    const Vec xi = a.cone().reference_direction();
    auto truncated = [&](const CPolytope& p) {
        auto cons = p.constraints();
        cons.push_back({xi, t});
        return cons;
    };
    const auto ca = truncated(a);
    const auto cb = truncated(b);
    const auto va = enumerate_vertices(ca, a.cone().dim());
    const auto vb = enumerate_vertices(cb, b.cone().dim());
    if (va.empty() || vb.empty())
        throw EmptyTruncation("truncated set is empty");
    double d = 0.0;
    for (const Vec& v : va) {
        const auto q = closest_point(cb, v);
        if (!q) throw EmptyTruncation("truncated set is empty");
        d = std::max(d, (*q - v).norm());
    }
    for (const Vec& v : vb) {
        const auto q = closest_point(ca, v);
        if (!q) throw EmptyTruncation("truncated set is empty");
        d = std::max(d, (*q - v).norm());
    }
    return d;
}

}  // namespace coneminq
