#pragma once

#include "bolza/group_ball.hpp"

#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

// SVG rendering of the tessellation: geodesic sides drawn as Euclidean
// circular arcs orthogonal to the unit circle (straight segments through the
// origin), polygon translates up to a word-length depth, and optionally the
// dual tessellation in a second stroke style.

namespace bolza {

/// Euclidean description of the geodesic through two disk points: either a
/// straight segment (the chord passes through the origin) or the circle
/// through p, q, and the inversion 1/conj(p), which meets the unit circle at
/// right angles.  sweep is the SVG arc sweep flag for the minor arc from p to
/// q in the 1000 x 1000 y-flipped viewport.
struct GeodesicArc {
    bool straight = false;
    double cx = 0.0, cy = 0.0;
    double radius = 0.0;
    int sweep = 0;
};

inline GeodesicArc geodesic_arc(const DiskPoint& p, const DiskPoint& q) {
    GeodesicArc arc;
    const double px = p.re(), py = p.im();
    const double qx = q.re(), qy = q.im();
    const double cross = px * qy - py * qx;
    if (std::abs(cross) < 1e-12) {
        arc.straight = true;
        return arc;
    }
    // The center c satisfies 2 c.p = |p|^2 + 1 and 2 c.q = |q|^2 + 1 (equal
    // power with respect to the unit circle), hence |c|^2 - r^2 = 1.
    const double P = px * px + py * py + 1.0;
    const double Q = qx * qx + qy * qy + 1.0;
    const double det = 4.0 * cross;
    arc.cx = 2.0 * (P * qy - Q * py) / det;
    arc.cy = 2.0 * (Q * px - P * qx) / det;
    arc.radius = std::sqrt(arc.cx * arc.cx + arc.cy * arc.cy - 1.0);
    const double ap = std::atan2(py - arc.cy, px - arc.cx);
    const double aq = std::atan2(qy - arc.cy, qx - arc.cx);
    const double delta = std::remainder(aq - ap, 2.0 * pi);
    // Counterclockwise in math coordinates stays counterclockwise on screen
    // after the y-flip, which in SVG's y-down frame is sweep flag 0.
    arc.sweep = delta > 0.0 ? 0 : 1;
    return arc;
}

namespace detail {

inline double svg_x(double x) { return 500.0 * (1.0 + x); }
inline double svg_y(double y) { return 500.0 * (1.0 - y); }

inline void append_side_path(std::string& out, const DiskPoint& p,
                             const DiskPoint& q) {
    char buf[192];
    const GeodesicArc arc = geodesic_arc(p, q);
    if (arc.straight) {
        std::snprintf(buf, sizeof buf,
                      "<path d=\"M %.4f %.4f L %.4f %.4f\"/>\n",
                      svg_x(p.re()), svg_y(p.im()), svg_x(q.re()),
                      svg_y(q.im()));
    } else {
        std::snprintf(buf, sizeof buf,
                      "<path d=\"M %.4f %.4f A %.4f %.4f 0 0 %d %.4f %.4f\"/>\n",
                      svg_x(p.re()), svg_y(p.im()), 500.0 * arc.radius,
                      500.0 * arc.radius, arc.sweep, svg_x(q.re()),
                      svg_y(q.im()));
    }
    out += buf;
}

inline void append_polygon(std::string& out, const SurfaceParams& sp,
                           const Isometry& map) {
    const int n = sp.side_count();
    std::vector<DiskPoint> verts;
    verts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        verts.push_back(map(sp.vertices[static_cast<std::size_t>(k)]));
    for (int k = 0; k < n; ++k)
        append_side_path(out, verts[static_cast<std::size_t>(k)],
                         verts[static_cast<std::size_t>((k + 1) % n)]);
}

} // namespace detail

/// Renders the tessellation to an SVG document: all polygon translates whose
/// group word has length <= depth, the unit circle, and (optionally) the dual
/// tessellation.  Deterministic for fixed inputs.
inline std::string render_tessellation_svg(const SurfaceParams& sp,
                                           const TranslateBall& ball,
                                           int depth, bool include_dual) {
    if (depth < 0)
        throw std::invalid_argument("render_tessellation_svg: negative depth");
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" "
           "viewBox=\"0 0 1000 1000\">\n";
    out += "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
    out += "<circle cx=\"500\" cy=\"500\" r=\"500\" fill=\"none\" "
           "stroke=\"#000000\" stroke-width=\"2\"/>\n";

    std::vector<const GroupElement*> shown;
    for (const GroupElement& e : ball.elements())
        if (static_cast<int>(e.word.size()) <= depth)
            shown.push_back(&e);

    out += "<g fill=\"none\" stroke=\"#111111\" stroke-width=\"2\">\n";
    for (const GroupElement* e : shown) {
        out += "<g class=\"cell\">\n";
        detail::append_polygon(out, sp, e->iso);
        out += "</g>\n";
    }
    out += "</g>\n";

    if (include_dual) {
        out += "<g fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\">\n";
        std::set<std::pair<long long, long long>> seen;
        for (const GroupElement* e : shown) {
            for (int k = 0; k < sp.side_count(); ++k) {
                const DiskPoint center =
                    e->iso(sp.vertices[static_cast<std::size_t>(k)]);
                const auto key = std::make_pair(
                    std::llround(center.re() * 1e7),
                    std::llround(center.im() * 1e7));
                if (!seen.insert(key).second)
                    continue;
                out += "<g class=\"dual\">\n";
                detail::append_polygon(
                    out, sp, compose(e->iso, dual_isometry(sp, k)));
                out += "</g>\n";
            }
        }
        out += "</g>\n";
    }

    out += "</svg>\n";
    return out;
}

} // namespace bolza
