#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bolza/errors.hpp"

// Geometry of the Poincaré disk model of the hyperbolic plane.
//
// Points are complex numbers with |z| < 1.  Orientation-preserving isometries
// are Möbius transformations z -> (a z + conj(c)) / (c z + conj(a)) with
// |a|^2 - |c|^2 = 1; they form PSU(1,1), so a matrix and its negation act
// identically and we keep a canonical sign representative.

namespace bolza {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;

/// arccosh via the logarithmic form, tolerant of arguments that dip a hair
/// below 1 through rounding.
inline double acosh_stable(double x) {
    if (x < 1.0) {
        if (x < 1.0 - 1e-9)
            throw std::invalid_argument("acosh_stable: argument below 1");
        return 0.0;
    }
    return std::log(x + std::sqrt((x - 1.0) * (x + 1.0)));
}

/// A point of the open unit disk.
class DiskPoint {
public:
    DiskPoint() : z_(0.0, 0.0) {}

    explicit DiskPoint(complex z) : z_(z) {
        if (!(std::norm(z) < 1.0))
            throw std::invalid_argument("DiskPoint: |z| must be < 1");
    }

    DiskPoint(double re, double im) : DiskPoint(complex(re, im)) {}

    complex coord() const { return z_; }
    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }

private:
    complex z_;
};

/// Hyperbolic distance between two disk points.
///
/// Equivalent to arccosh(1 + 2|z-w|^2 / ((1-|z|^2)(1-|w|^2))); evaluated as
/// 2 asinh(|z-w| / sqrt((1-|z|^2)(1-|w|^2))), which keeps full precision for
/// nearby points and is log-based for distant ones.
inline double disk_distance(const DiskPoint& p, const DiskPoint& q) {
    const complex z = p.coord(), w = q.coord();
    const double num = std::abs(z - w);
    const double den = std::sqrt((1.0 - std::norm(z)) * (1.0 - std::norm(w)));
    return 2.0 * std::asinh(num / den);
}

/// Point at hyperbolic distance d from the origin in direction angle (radians).
inline DiskPoint polar_point(double d, double angle) {
    if (d < 0.0)
        throw std::invalid_argument("polar_point: negative distance");
    const double r = std::tanh(d / 2.0);
    return DiskPoint(r * std::polar(1.0, angle));
}

/// Orientation-preserving disk isometry, stored as the first column (a, c) of
/// the matrix [[a, conj(c)], [c, conj(a)]] with |a|^2 - |c|^2 = 1.
///
/// Construction normalizes by sqrt(|a|^2 - |c|^2) (so inputs only need a
/// positive determinant) and then fixes the projective sign: Re(a) > 0, ties
/// broken by Im(a) > 0, then Re(c) > 0.
class Isometry {
public:
    Isometry() : a_(1.0, 0.0), c_(0.0, 0.0) {}

    Isometry(complex a, complex c) : a_(a), c_(c) {
        const double det = std::norm(a_) - std::norm(c_);
        if (!(det > 0.0) || !std::isfinite(det))
            throw std::invalid_argument("Isometry: |a|^2 - |c|^2 must be positive");
        const double scale = 1.0 / std::sqrt(det);
        a_ *= scale;
        c_ *= scale;
        canonicalize();
    }

    friend Isometry compose(const Isometry& f, const Isometry& g);
    friend Isometry invert(const Isometry& f);

    complex a() const { return a_; }
    complex c() const { return c_; }

    /// Matrix trace a + conj(a); real for every element of this family.
    double trace() const { return 2.0 * a_.real(); }

    /// Möbius action on a disk point.
    DiskPoint operator()(const DiskPoint& p) const {
        const complex z = p.coord();
        const complex w = (a_ * z + std::conj(c_)) / (c_ * z + std::conj(a_));
        // The image of the open disk stays inside it; rounding can push the
        // modulus to 1 only for inputs essentially on the boundary.
        return DiskPoint(w);
    }

private:
    struct normalized_tag {};

    // Entries already satisfy |a|^2 - |c|^2 = 1; skip the renormalization,
    // whose double-precision determinant loses accuracy at large entries.
    Isometry(complex a, complex c, normalized_tag) : a_(a), c_(c) { canonicalize(); }

    void canonicalize() {
        bool flip = false;
        if (a_.real() != 0.0) {
            flip = a_.real() < 0.0;
        } else if (a_.imag() != 0.0) {
            flip = a_.imag() < 0.0;
        } else {
            flip = c_.real() < 0.0;
        }
        if (flip) {
            a_ = -a_;
            c_ = -c_;
        }
    }

    complex a_, c_;
};

/// Matrix product.  Carried out in extended precision: entries grow like
/// e^(displacement/2), and the unit determinant of the product is recovered
/// by a cancellation-prone difference whose error a double would smear over
/// every entry of long composition chains.
inline Isometry compose(const Isometry& f, const Isometry& g) {
    using longcomplex = std::complex<long double>;
    const longcomplex a1(f.a()), c1(f.c()), a2(g.a()), c2(g.c());
    longcomplex a = a1 * a2 + std::conj(c1) * c2;
    longcomplex c = c1 * a2 + std::conj(a1) * c2;
    const long double det = std::norm(a) - std::norm(c);
    if (!(det > 0.0L) || !std::isfinite(static_cast<double>(det)))
        throw std::invalid_argument("compose: degenerate product");
    const long double scale = 1.0L / std::sqrt(det);
    a *= scale;
    c *= scale;
    return Isometry(complex(static_cast<double>(a.real()), static_cast<double>(a.imag())),
                    complex(static_cast<double>(c.real()), static_cast<double>(c.imag())),
                    Isometry::normalized_tag{});
}

inline Isometry invert(const Isometry& f) {
    // The inverse of a normalized matrix is normalized; no rescale needed.
    return Isometry(std::conj(f.a()), -f.c(), Isometry::normalized_tag{});
}

/// Rotation about the origin by the given angle.
inline Isometry rotation_isometry(double angle) {
    return Isometry(std::polar(1.0, angle / 2.0), complex(0.0, 0.0));
}

/// The unique "pure translation" taking 0 to p (its axis is the diameter
/// through p).  For p = tanh(d/2) e^{i psi} it is a = cosh(d/2),
/// c = sinh(d/2) e^{-i psi}, which closes to a = 1/sqrt(1-|p|^2), c = a conj(p).
inline Isometry translation_to(const DiskPoint& p) {
    const double n = 1.0 / std::sqrt(1.0 - std::norm(p.coord()));
    return Isometry(complex(n, 0.0), n * std::conj(p.coord()));
}

/// Entry-wise max distance between canonical representatives.
inline double isometry_distance(const Isometry& f, const Isometry& g) {
    return std::max(std::abs(f.a() - g.a()), std::abs(f.c() - g.c()));
}

inline bool is_identity(const Isometry& f, double tol = 1e-12) {
    return isometry_distance(f, Isometry()) <= tol;
}

/// Direction (radians) of the geodesic from p toward q, measured at p.
/// Computed by transporting p to the origin, where geodesics are straight rays.
inline double direction_from(const DiskPoint& p, const DiskPoint& q) {
    const DiskPoint qq = invert(translation_to(p))(q);
    if (std::abs(qq.coord()) == 0.0)
        throw std::invalid_argument("direction_from: coincident points");
    return std::arg(qq.coord());
}

/// Unsigned angle in [0, pi] at p between the geodesics p->q1 and p->q2.
inline double angle_at(const DiskPoint& p, const DiskPoint& q1, const DiskPoint& q2) {
    double d = direction_from(p, q1) - direction_from(p, q2);
    d = std::remainder(d, 2.0 * pi);
    return std::abs(d);
}

/// Point at hyperbolic distance dist from p along the geodesic toward q.
inline DiskPoint point_along(const DiskPoint& p, const DiskPoint& q, double dist) {
    const Isometry t = translation_to(p);
    const DiskPoint qq = invert(t)(q);
    return t(polar_point(dist, std::arg(qq.coord())));
}

/// Hyperbolic midpoint of the segment pq.
inline DiskPoint hyperbolic_midpoint(const DiskPoint& p, const DiskPoint& q) {
    const double d = disk_distance(p, q);
    if (d == 0.0)
        return p;
    return point_along(p, q, d / 2.0);
}

/// Half-turn (rotation by pi) about the point m.
inline Isometry half_turn(const DiskPoint& m) {
    const Isometry t = translation_to(m);
    return compose(compose(t, rotation_isometry(pi)), invert(t));
}

/// Translation by dist along the oriented geodesic through p and q (positive
/// dist moves from p toward q).  Requires p != q.
inline Isometry translation_along(const DiskPoint& p, const DiskPoint& q,
                                  double dist) {
    const Isometry move = translation_to(p);
    const Isometry rot = rotation_isometry(direction_from(p, q));
    const Isometry step(complex(std::cosh(dist / 2.0), 0.0),
                        complex(std::sinh(dist / 2.0), 0.0));
    return compose(compose(compose(move, rot), step),
                   compose(invert(rot), invert(move)));
}

/// Hyperbolic law of cosines: the side opposite the angle alpha enclosed by
/// sides of length b and c.
inline double cosine_law_side(double b, double c, double alpha) {
    if (b < 0.0 || c < 0.0)
        throw std::invalid_argument("cosine_law_side: negative side length");
    const double ch = std::cosh(b) * std::cosh(c) -
                      std::sinh(b) * std::sinh(c) * std::cos(alpha);
    return acosh_stable(ch);
}

/// Geodesic segment between two disk points.  The degenerate flag marks
/// zero-length segments, for which no direction is defined.
struct GeodesicSegment {
    DiskPoint start;
    DiskPoint end;
    bool degenerate = false;

    GeodesicSegment() = default;
    GeodesicSegment(const DiskPoint& s, const DiskPoint& e)
        : start(s), end(e), degenerate(disk_distance(s, e) == 0.0) {}

    double length() const { return disk_distance(start, end); }

    /// Point at parameter t in [0, 1] by arc length.
    DiskPoint at(double t) const {
        if (degenerate)
            return start;
        return point_along(start, end, t * length());
    }
};

} // namespace bolza
