#pragma once

#include <cmath>
#include <vector>

#include "bolza/hyperbolic.hpp"

// The generalized Bolza surface of genus g >= 2: the hyperbolic quotient whose
// fundamental domain is the regular 4g-gon centered at the origin with
// interior angles pi/2g, opposite sides identified.  All lengths are pinned by
// the genus through cosh(R) = cosh^2(s/2) = cot^2(pi/4g), where R is the
// circumradius and s the side length (equal to the distance between the
// centers of adjacent copies of the polygon).

namespace bolza {

struct SurfaceParams {
    int genus = 0;
    double circumradius = 0.0;       // R
    double side_length = 0.0;        // s
    double circumradius_prime = 0.0; // R' = tanh(R/2)
    double side_prime = 0.0;         // s' = tanh(s/4)
    double area = 0.0;               // 4 pi (g - 1)
    std::vector<DiskPoint> vertices; // v_k = tanh(R/2) e^{i(k-1/2)pi/2g}, k = 0..4g-1
    std::vector<Isometry> generators;         // t_k, k = 0..2g-1
    std::vector<Isometry> generator_inverses; // t_k^{-1}

    int side_count() const { return 4 * genus; }

    /// Angle of the k-th vertex, (k - 1/2) pi / 2g.
    double vertex_angle(int k) const {
        return (k - 0.5) * pi / (2.0 * genus);
    }

    /// The pairing that maps the side opposite side j onto side j;
    /// j in [0, 4g): t_j for j < 2g analysis and t_{j-2g}^{-1} beyond.
    /// Its basepoint image u_j(0) is the center of the neighbor across side j.
    const Isometry& side_pairing(int j) const {
        const int n = 2 * genus;
        return j < n ? generators[j] : generator_inverses[j - n];
    }
};

/// Closed-form surface constants and generators for genus g >= 2.
inline SurfaceParams surface_params(int genus) {
    if (genus < 2)
        throw std::invalid_argument("surface_params: genus must be >= 2");

    SurfaceParams sp;
    sp.genus = genus;
    const double cot = 1.0 / std::tan(pi / (4.0 * genus));
    // cosh R = cot^2(pi/4g), cosh(s/2) = cot(pi/4g)
    sp.circumradius = acosh_stable(cot * cot);
    sp.side_length = 2.0 * acosh_stable(cot);
    sp.circumradius_prime = std::tanh(sp.circumradius / 2.0);
    sp.side_prime = std::tanh(sp.side_length / 4.0);
    sp.area = 4.0 * pi * (genus - 1);

    const int n = 4 * genus;
    sp.vertices.reserve(n);
    for (int k = 0; k < n; ++k)
        sp.vertices.push_back(polar_point(sp.circumradius, sp.vertex_angle(k)));

    // The matrices [[1, tanh(s/2) e^{i k pi/2g}], [tanh(s/2) e^{-i k pi/2g}, 1]]
    // have determinant sech^2(s/2); the Isometry constructor rescales them to
    // determinant 1, giving a = cosh(s/2), c = sinh(s/2) e^{-i k pi/2g}.
    const double th = std::tanh(sp.side_length / 2.0);
    sp.generators.reserve(2 * genus);
    sp.generator_inverses.reserve(2 * genus);
    for (int k = 0; k < 2 * genus; ++k) {
        const double ang = k * pi / (2.0 * genus);
        Isometry t(complex(1.0, 0.0), th * std::polar(1.0, -ang));
        sp.generators.push_back(t);
        sp.generator_inverses.push_back(invert(t));
    }
    return sp;
}

enum class Region { interior, boundary, outside };

/// Dirichlet-domain membership of z in the fundamental polygon: z belongs iff
/// it is at least as close to 0 as to each of the 4g neighboring translates
/// u_j(0).  Classification uses a tolerance band of 1e-10 on the defect.
inline Region contains_fundamental(const SurfaceParams& sp, const DiskPoint& z,
                                   double tol = 1e-10) {
    const double d0 = disk_distance(DiskPoint(), z);
    bool on_boundary = false;
    for (int j = 0; j < sp.side_count(); ++j) {
        const DiskPoint t0 = sp.side_pairing(j)(DiskPoint());
        const double margin = disk_distance(t0, z) - d0;
        if (margin < -tol)
            return Region::outside;
        if (margin <= tol)
            on_boundary = true;
    }
    return on_boundary ? Region::boundary : Region::interior;
}

/// Convex polygon with geodesic sides, stored as its center and the vertex
/// cycle in counterclockwise order.
struct Polygon {
    DiskPoint center;
    std::vector<DiskPoint> vertices;

    int side_count() const { return static_cast<int>(vertices.size()); }

    GeodesicSegment side(int j) const {
        const int n = side_count();
        return GeodesicSegment(vertices[j % n], vertices[(j + 1) % n]);
    }
};

inline Polygon fundamental_polygon(const SurfaceParams& sp) {
    return Polygon{DiskPoint(), sp.vertices};
}

/// Geodesic triangle, stored by its vertex triple.
struct Triangle {
    DiskPoint a, b, c;
};

/// The fundamental wedge T with vertices 0, v_1, v_2; by symmetry every point
/// of the surface has a representative here.
inline Triangle fundamental_triangle(const SurfaceParams& sp) {
    return Triangle{DiskPoint(), sp.vertices[1], sp.vertices[2]};
}

/// Membership in T, up to an angular/membership tolerance: inside the closed
/// polygon with argument between those of v_1 and v_2.
inline bool in_fundamental_triangle(const SurfaceParams& sp, const DiskPoint& z,
                                    double tol = 1e-9) {
    if (contains_fundamental(sp, z) == Region::outside)
        return false;
    if (std::abs(z.coord()) <= tol)
        return true;
    const double lo = sp.vertex_angle(1);
    const double off = std::remainder(std::arg(z.coord()) - lo, 2.0 * pi);
    return off >= -tol && off <= pi / (2.0 * sp.genus) + tol;
}

/// Distance from the origin to the polygon boundary along the ray whose angle
/// is beta away from a side's apothem direction (|beta| <= pi/4g); the apothem
/// of side j points along angle j*pi/2g and has length s/2.
inline double boundary_radius_at(const SurfaceParams& sp, double beta) {
    // Right triangle with the apothem foot: cos(beta) = tanh(s/2)/tanh(rho).
    const double t = std::tanh(sp.side_length / 2.0) / std::cos(beta);
    if (t >= 1.0)
        throw std::invalid_argument("boundary_radius_at: angle beyond the side sector");
    return std::atanh(t);
}

/// Half-turn about the hyperbolic midpoint of segment [0, v_k]; exchanges the
/// origin with vertex v_k and takes the fundamental polygon to the dual
/// polygon centered there.
inline Isometry dual_isometry(const SurfaceParams& sp, int k) {
    const int n = sp.side_count();
    if (k < 0 || k >= n)
        throw std::invalid_argument("dual_isometry: vertex index out of range");
    return half_turn(hyperbolic_midpoint(DiskPoint(), sp.vertices[k]));
}

} // namespace bolza
