#pragma once

#include <cstdint>

#include "coneminq/cone.hpp"

namespace coneminq {

/// Deterministic quadrature over Omega_C. Identical (cone, resolution, seed)
/// yields a bit-identical grid.
///  - n=2: composite Gauss-Legendre on the arc parameter (exact weight sum)
///  - n=3 polyhedral: recursive geodesic subdivision of the spherical polygon
///  - n=3 circular: Gauss in the polar coordinate x product rule in azimuth
///  - n=4: seeded Monte Carlo fallback
struct QuadratureGrid {
    std::vector<Vec> nodes;
    std::vector<double> weights;
    int resolution = 0;
    std::uint64_t seed = 0;
    std::string scheme;

    double weight_sum() const;
    int size() const { return static_cast<int>(nodes.size()); }
};

QuadratureGrid make_grid(const Cone& cone, int resolution, std::uint64_t seed = 0);

/// Nodes/weights of n-point Gauss-Legendre on [-1, 1] (Newton on Legendre
/// recurrences; deterministic).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/// Area of the spherical triangle with unit vertices a, b, c (L'Huilier).
double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c);

}  // namespace coneminq
