#include <catch2/catch_amalgamated.hpp>

#include "bolza/hyperbolic.hpp"

#include <random>

using namespace bolza;

namespace {

std::mt19937_64 rng(12345);

DiskPoint random_point(double max_euclid = 0.95) {
    std::uniform_real_distribution<double> radius(0.0, max_euclid);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    const double r = radius(rng);
    const double t = angle(rng);
    return DiskPoint(r * std::cos(t), r * std::sin(t));
}

Isometry random_isometry() {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    return compose(rotation_isometry(angle(rng)),
                   compose(translation_to(random_point(0.9)),
                           rotation_isometry(angle(rng))));
}

} // namespace

TEST_CASE("disk distance of antipodal points doubles the radius", "[hyperbolic]") {
    const DiskPoint p(0.5, 0.0);
    const DiskPoint q(-0.5, 0.0);
    const double r = disk_distance(DiskPoint(), p);
    CHECK(disk_distance(p, q) == Catch::Approx(2.0 * r).margin(1e-12));
}

TEST_CASE("disk distance matches the arccosh form", "[hyperbolic]") {
    for (int i = 0; i < 200; ++i) {
        const DiskPoint p = random_point();
        const DiskPoint q = random_point();
        const double num = 2.0 * std::norm(p.coord() - q.coord());
        const double den = (1.0 - std::norm(p.coord())) *
                           (1.0 - std::norm(q.coord()));
        const double reference = std::acosh(1.0 + num / den);
        CHECK(disk_distance(p, q) ==
              Catch::Approx(reference).margin(1e-10));
    }
}

TEST_CASE("disk distance is a metric on sampled triples", "[hyperbolic]") {
    for (int i = 0; i < 200; ++i) {
        const DiskPoint p = random_point();
        const DiskPoint q = random_point();
        const DiskPoint r = random_point();
        const double pq = disk_distance(p, q);
        const double qr = disk_distance(q, r);
        const double pr = disk_distance(p, r);
        CHECK(pq == disk_distance(q, p));
        CHECK(pq >= 0.0);
        CHECK(pr <= pq + qr + 1e-12);
    }
    CHECK(disk_distance(DiskPoint(0.3, -0.2), DiskPoint(0.3, -0.2)) == 0.0);
}

TEST_CASE("points on or outside the unit circle are rejected", "[hyperbolic]") {
    CHECK_THROWS_AS(DiskPoint(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DiskPoint(0.8, 0.7), std::invalid_argument);
    CHECK_NOTHROW(DiskPoint(0.999999, 0.0));
}

TEST_CASE("acosh_stable handles arguments near one", "[hyperbolic]") {
    CHECK(acosh_stable(1.0) == 0.0);
    CHECK(acosh_stable(1.0 - 1e-16) == 0.0);
    const double x = 1.0 + 1e-12;
    CHECK(acosh_stable(x) == Catch::Approx(std::sqrt(2e-12)).epsilon(1e-4));
    CHECK(acosh_stable(2.0) == Catch::Approx(std::acosh(2.0)).margin(1e-15));
}

TEST_CASE("polar_point sits at the requested distance and angle", "[hyperbolic]") {
    for (const double d : {0.0, 0.3, 1.0, 2.5, 6.0}) {
        const DiskPoint p = polar_point(d, 0.7);
        CHECK(disk_distance(DiskPoint(), p) == Catch::Approx(d).margin(1e-12));
        if (d > 0.0)
            CHECK(std::arg(p.coord()) == Catch::Approx(0.7).margin(1e-12));
    }
}

TEST_CASE("isometries preserve the metric", "[hyperbolic]") {
    for (int i = 0; i < 100; ++i) {
        const Isometry f = random_isometry();
        const DiskPoint p = random_point();
        const DiskPoint q = random_point();
        CHECK(disk_distance(f(p), f(q)) ==
              Catch::Approx(disk_distance(p, q)).margin(1e-11));
    }
}

TEST_CASE("composition realizes function composition and the group axioms",
          "[hyperbolic]") {
    for (int i = 0; i < 50; ++i) {
        const Isometry f = random_isometry();
        const Isometry g = random_isometry();
        const Isometry h = random_isometry();
        const DiskPoint p = random_point();
        const DiskPoint fg = compose(f, g)(p);
        const DiskPoint expect = f(g(p));
        CHECK(std::abs(fg.coord() - expect.coord()) < 1e-12);
        CHECK(isometry_distance(compose(compose(f, g), h),
                                compose(f, compose(g, h))) < 1e-12);
        CHECK(is_identity(compose(f, invert(f)), 1e-12));
        CHECK(is_identity(compose(invert(f), f), 1e-12));
    }
}

TEST_CASE("isometry entries stay on the unit determinant surface",
          "[hyperbolic]") {
    // Two hundred renormalizations in a row; short steps keep the composite's
    // displacement far below the range where the determinant recovery runs
    // out of precision (entries grow like e^(displacement/2)).
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    Isometry f = rotation_isometry(0.3);
    for (int i = 0; i < 200; ++i) {
        const Isometry step = compose(rotation_isometry(angle(rng)),
                                      translation_to(random_point(0.1)));
        f = compose(f, step);
    }
    CHECK(std::norm(f.a()) - std::norm(f.c()) == Catch::Approx(1.0).margin(1e-9));
    CHECK(2.0 * std::asinh(std::abs(f.c())) < 40.0);
}

TEST_CASE("rotation_isometry fixes the origin and turns by the angle",
          "[hyperbolic]") {
    const Isometry rot = rotation_isometry(0.9);
    CHECK(std::abs(rot(DiskPoint()).coord()) < 1e-15);
    const DiskPoint p = polar_point(1.2, 0.4);
    const DiskPoint q = rot(p);
    CHECK(disk_distance(DiskPoint(), q) == Catch::Approx(1.2).margin(1e-12));
    CHECK(std::arg(q.coord()) == Catch::Approx(1.3).margin(1e-12));
    CHECK(rot.trace() == Catch::Approx(2.0 * std::cos(0.45)).margin(1e-12));
}

TEST_CASE("translation_to carries the origin to its target", "[hyperbolic]") {
    for (int i = 0; i < 50; ++i) {
        const DiskPoint p = random_point();
        const Isometry t = translation_to(p);
        CHECK(std::abs(t(DiskPoint()).coord() - p.coord()) < 1e-14);
        // Its differential at the origin is a positive real scaling, so
        // directions in the local chart are preserved.
        const DiskPoint probe = polar_point(1e-4, 1.1);
        const double dir = direction_from(p, t(probe));
        CHECK(std::remainder(dir - 1.1, 2.0 * pi) ==
              Catch::Approx(0.0).margin(1e-6));
    }
}

TEST_CASE("translation_along moves by the requested distance on the axis",
          "[hyperbolic]") {
    for (int i = 0; i < 50; ++i) {
        const DiskPoint p = random_point(0.8);
        DiskPoint q = random_point(0.8);
        while (disk_distance(p, q) < 0.1)
            q = random_point(0.8);
        const double d = disk_distance(p, q);
        const Isometry t = translation_along(p, q, d);
        CHECK(std::abs(t(p).coord() - q.coord()) < 1e-11);
        // Half the distance lands on the midpoint; composing twice gives the
        // full translation.
        const Isometry half = translation_along(p, q, d / 2.0);
        CHECK(std::abs(half(p).coord() -
                       hyperbolic_midpoint(p, q).coord()) < 1e-11);
        CHECK(isometry_distance(compose(half, half), t) < 1e-11);
        // Negative distance moves away from q.
        const Isometry back = translation_along(p, q, -d);
        CHECK(disk_distance(back(p), q) == Catch::Approx(2.0 * d).margin(1e-10));
    }
}

TEST_CASE("point_along interpolates by arc length", "[hyperbolic]") {
    const DiskPoint p(0.2, 0.5);
    const DiskPoint q(-0.4, 0.1);
    const double d = disk_distance(p, q);
    CHECK(std::abs(point_along(p, q, 0.0).coord() - p.coord()) < 1e-14);
    CHECK(std::abs(point_along(p, q, d).coord() - q.coord()) < 1e-12);
    const DiskPoint third = point_along(p, q, d / 3.0);
    CHECK(disk_distance(p, third) == Catch::Approx(d / 3.0).margin(1e-12));
    CHECK(disk_distance(third, q) == Catch::Approx(2.0 * d / 3.0).margin(1e-12));
}

TEST_CASE("hyperbolic_midpoint bisects and half_turn swaps the endpoints",
          "[hyperbolic]") {
    for (int i = 0; i < 50; ++i) {
        const DiskPoint p = random_point(0.8);
        const DiskPoint q = random_point(0.8);
        const DiskPoint m = hyperbolic_midpoint(p, q);
        CHECK(disk_distance(p, m) ==
              Catch::Approx(disk_distance(m, q)).margin(1e-11));
        CHECK(disk_distance(p, m) + disk_distance(m, q) ==
              Catch::Approx(disk_distance(p, q)).margin(1e-11));
        const Isometry h = half_turn(m);
        CHECK(std::abs(h(p).coord() - q.coord()) < 1e-10);
        CHECK(std::abs(h(q).coord() - p.coord()) < 1e-10);
        CHECK(std::abs(h(m).coord() - m.coord()) < 1e-12);
        CHECK(is_identity(compose(h, h), 1e-10));
    }
}

TEST_CASE("angle_at measures the unsigned vertex angle", "[hyperbolic]") {
    const DiskPoint origin;
    const DiskPoint a = polar_point(1.0, 0.2);
    const DiskPoint b = polar_point(2.0, 0.2 + 1.1);
    CHECK(angle_at(origin, a, b) == Catch::Approx(1.1).margin(1e-12));
    CHECK(angle_at(origin, b, a) == Catch::Approx(1.1).margin(1e-12));
    // Transported to a generic vertex the angle is preserved.
    const Isometry t = translation_to(DiskPoint(0.3, -0.6));
    CHECK(angle_at(t(origin), t(a), t(b)) == Catch::Approx(1.1).margin(1e-10));
}

TEST_CASE("direction_from rejects coincident points", "[hyperbolic]") {
    const DiskPoint p(0.1, 0.2);
    CHECK_THROWS_AS(direction_from(p, p), std::invalid_argument);
}

TEST_CASE("cosine_law_side agrees with realized triangles", "[hyperbolic]") {
    for (int i = 0; i < 100; ++i) {
        std::uniform_real_distribution<double> len(0.1, 3.0);
        std::uniform_real_distribution<double> ang(0.1, pi - 0.1);
        const double b = len(rng), c = len(rng), alpha = ang(rng);
        const DiskPoint q1 = polar_point(b, 0.0);
        const DiskPoint q2 = polar_point(c, alpha);
        CHECK(cosine_law_side(b, c, alpha) ==
              Catch::Approx(disk_distance(q1, q2)).margin(1e-10));
    }
    CHECK_THROWS_AS(cosine_law_side(-1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("geodesic segments parametrize by arc length", "[hyperbolic]") {
    const GeodesicSegment seg(DiskPoint(0.1, 0.1), DiskPoint(-0.5, 0.3));
    CHECK_FALSE(seg.degenerate);
    CHECK(std::abs(seg.at(0.0).coord() - seg.start.coord()) < 1e-14);
    CHECK(std::abs(seg.at(1.0).coord() - seg.end.coord()) < 1e-12);
    CHECK(disk_distance(seg.start, seg.at(0.25)) ==
          Catch::Approx(0.25 * seg.length()).margin(1e-12));
    const GeodesicSegment trivial(DiskPoint(0.2, 0.0), DiskPoint(0.2, 0.0));
    CHECK(trivial.degenerate);
    CHECK(std::abs(trivial.at(0.7).coord() - trivial.start.coord()) == 0.0);
}

TEST_CASE("displacement of a normalized element is twice asinh of the "
          "off-diagonal entry",
          "[hyperbolic]") {
    for (int i = 0; i < 50; ++i) {
        const Isometry f = random_isometry();
        CHECK(disk_distance(DiskPoint(), f(DiskPoint())) ==
              Catch::Approx(2.0 * std::asinh(std::abs(f.c()))).margin(1e-11));
    }
}
