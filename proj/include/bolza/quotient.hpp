#pragma once

#include "bolza/group_ball.hpp"

// The quotient metric of the surface: distances between orbits of the group,
// realized by reducing points to the fundamental polygon and minimizing over
// translated copies.  A ball of cutoff 4R always suffices: representatives in
// the polygon are within R of the center, so any translate beating the
// in-polygon distance (itself at most 2R) has displacement below 4R.

namespace bolza {

/// A point of the quotient: its representative inside the closed fundamental
/// polygon and the group word that maps the original input onto it.
struct CanonicalPoint {
    DiskPoint representative;
    Word reducing_word;
};

/// Pull z into the closed fundamental polygon by greedily applying whichever
/// side pairing most decreases the distance to the origin.  The orbit of z
/// below its starting distance is finite, so the strict descent terminates;
/// a safety cap guards against numerically degenerate inputs.
inline CanonicalPoint reduce_to_fundamental(const SurfaceParams& sp, const DiskPoint& z) {
    DiskPoint cur = z;
    Word word;
    double dist = disk_distance(DiskPoint(), cur);
    for (int iter = 0; iter < 10000; ++iter) {
        int best_j = -1;
        DiskPoint best_p = cur;
        double best_d = dist;
        for (int j = 0; j < sp.side_count(); ++j) {
            const DiskPoint p = sp.side_pairing(j)(cur);
            const double d = disk_distance(DiskPoint(), p);
            if (d < best_d) {
                best_d = d;
                best_p = p;
                best_j = j;
            }
        }
        if (best_j < 0) {
            if (contains_fundamental(sp, cur) == Region::outside)
                throw numerical_pathology(
                    "reduce_to_fundamental: descent stalled outside the polygon");
            // Word letters were applied first-to-last; stored product order is
            // last-applied-first, matching left-to-right isometry products.
            return CanonicalPoint{cur, word};
        }
        cur = best_p;
        dist = best_d;
        word.insert(word.begin(), letter_of_pairing(best_j, sp.genus));
    }
    throw numerical_pathology("reduce_to_fundamental: no convergence");
}

namespace detail {

inline void require_quotient_ball(const TranslateBall& ball) {
    if (ball.cutoff() < 4.0 * ball.params().circumradius - 1e-9)
        throw insufficient_ball("quotient distance: ball cutoff below 4R");
}

} // namespace detail

/// Quotient distance together with the translate realizing it:
/// value = min over ball elements f of delta(z', f(w')).
struct QuotientWitness {
    double value = 0.0;
    std::size_t element = 0; // index into the ball
    CanonicalPoint z, w;
};

inline QuotientWitness quotient_distance_witness(const TranslateBall& ball,
                                                 const DiskPoint& z,
                                                 const DiskPoint& w) {
    detail::require_quotient_ball(ball);
    const SurfaceParams& sp = ball.params();
    QuotientWitness out;
    out.z = reduce_to_fundamental(sp, z);
    out.w = reduce_to_fundamental(sp, w);
    const double dz = disk_distance(DiskPoint(), out.z.representative);
    const double dw = disk_distance(DiskPoint(), out.w.representative);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    // Elements are sorted by displacement; once the displacement alone forces
    // delta(z', f(w')) >= d_f - dz - dw > best, nothing later can win.
    for (std::size_t i = 0; i < ball.size(); ++i) {
        const GroupElement& e = ball[i];
        if (e.displacement - dz - dw > best)
            break;
        const double d = disk_distance(out.z.representative,
                                       e.iso(out.w.representative));
        if (d < best) {
            best = d;
            best_i = i;
        }
    }
    out.value = best;
    out.element = best_i;
    return out;
}

/// Distance between the orbits of z and w.
inline double quotient_distance(const TranslateBall& ball, const DiskPoint& z,
                                const DiskPoint& w) {
    return quotient_distance_witness(ball, z, w).value;
}

/// Distance from the orbit of z to the orbit of the polygon center.
inline double distance_to_center(const TranslateBall& ball, const DiskPoint& z) {
    return quotient_distance(ball, z, DiskPoint());
}

/// Dirichlet shortcut for the center distance: the representative of z is by
/// construction closest to 0 among all translates, so the quotient distance
/// is just its distance to the origin.
inline double distance_to_center_direct(const SurfaceParams& sp, const DiskPoint& z) {
    return disk_distance(DiskPoint(), reduce_to_fundamental(sp, z).representative);
}

/// Distance from the orbit of z to the orbit of the polygon vertices (all 4g
/// vertices project to a single point of the surface).
inline double distance_to_vertex(const TranslateBall& ball, const DiskPoint& z) {
    detail::require_quotient_ball(ball);
    const SurfaceParams& sp = ball.params();
    const DiskPoint zr = reduce_to_fundamental(sp, z).representative;
    const double dz = disk_distance(DiskPoint(), zr);
    const double R = sp.circumradius;
    const DiskPoint& v1 = sp.vertices[1];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ball.size(); ++i) {
        const GroupElement& e = ball[i];
        // delta(zr, f(v1)) >= d_f - R - dz, again monotone in displacement.
        if (e.displacement - R - dz > best)
            break;
        best = std::min(best, disk_distance(zr, e.iso(v1)));
    }
    return best;
}

/// In-polygon shortcut: the vertex orbit meets the closed polygon exactly in
/// its 4g corners, so for reduced points the minimum runs over those.
inline double distance_to_vertex_direct(const SurfaceParams& sp, const DiskPoint& z) {
    const DiskPoint zr = reduce_to_fundamental(sp, z).representative;
    double best = std::numeric_limits<double>::infinity();
    for (const DiskPoint& v : sp.vertices)
        best = std::min(best, disk_distance(zr, v));
    return best;
}

/// Representatives of an orbit inside the dual polygons at v_1 and v_2: the
/// translates closest to each vertex.  A translate closest to v_i among the
/// whole orbit automatically lies in the Dirichlet domain of v_i with respect
/// to the vertex orbit, which is exactly the dual polygon there.
struct DualRepresentatives {
    DiskPoint w1, w2;     // representatives in the dual polygons at v_1, v_2
    std::size_t f1, f2;   // ball elements mapping the reduced input onto them
    double theta1 = 0.0;  // angle at v_1 between [v_1, w_1] and [v_1, v_2]
    double theta2 = 0.0;  // angle at v_2 between [v_2, w_2] and the extension of [v_1, v_2]
};

inline DualRepresentatives dual_representatives(const TranslateBall& ball,
                                                const DiskPoint& w) {
    detail::require_quotient_ball(ball);
    const SurfaceParams& sp = ball.params();
    const double dv = distance_to_vertex(ball, w);
    if (dv > sp.side_length / 2.0 + 1e-9)
        throw std::invalid_argument(
            "dual_representatives: point farther than s/2 from the vertex orbit");
    const DiskPoint wr = reduce_to_fundamental(sp, w).representative;
    const double dz = disk_distance(DiskPoint(), wr);
    const double R = sp.circumradius;

    DualRepresentatives out;
    for (int which = 0; which < 2; ++which) {
        const DiskPoint& v = sp.vertices[1 + which];
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        DiskPoint best_p;
        for (std::size_t i = 0; i < ball.size(); ++i) {
            const GroupElement& e = ball[i];
            if (e.displacement - R - dz > best)
                break;
            const DiskPoint p = e.iso(wr);
            const double d = disk_distance(v, p);
            if (d < best) {
                best = d;
                best_i = i;
                best_p = p;
            }
        }
        if (which == 0) {
            out.w1 = best_p;
            out.f1 = best_i;
        } else {
            out.w2 = best_p;
            out.f2 = best_i;
        }
    }

    const DiskPoint &v1 = sp.vertices[1], &v2 = sp.vertices[2];
    out.theta1 = disk_distance(v1, out.w1) > 1e-12 ? angle_at(v1, out.w1, v2) : 0.0;
    if (disk_distance(v2, out.w2) > 1e-12) {
        // Angle against the continuation of v1 v2 beyond v2.
        const double ext = direction_from(v2, v1) + pi;
        double d = direction_from(v2, out.w2) - ext;
        out.theta2 = std::abs(std::remainder(d, 2.0 * pi));
    }
    return out;
}

/// Dirichlet membership in the dual polygon at v_k, judged against the vertex
/// orbit as sampled by the ball.
inline bool in_dual_polygon(const TranslateBall& ball, int k, const DiskPoint& p,
                            double tol = 1e-9) {
    const SurfaceParams& sp = ball.params();
    if (k < 0 || k >= sp.side_count())
        throw std::invalid_argument("in_dual_polygon: vertex index out of range");
    const double m = disk_distance(sp.vertices[k], p);
    const double dp = disk_distance(DiskPoint(), p);
    const double R = sp.circumradius;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        const GroupElement& e = ball[i];
        if (e.displacement - R - dp > m + tol)
            break;
        if (disk_distance(e.iso(sp.vertices[1]), p) < m - tol)
            return false;
    }
    return true;
}

} // namespace bolza
