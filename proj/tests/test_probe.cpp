#include <gtest/gtest.h>

#include <cmath>

#include "omegaprobe/harness.hpp"
#include "omegaprobe/probe.hpp"

using namespace omegaprobe;

namespace {

ConvexPolygon unit_square() { return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

ConvexPolygon equilateral() {
    return ConvexPolygon({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
}

void expect_valid(const ConvexPolygon& poly, double omega, const DirectedLine& line, const ProbeOutcome& o) {
    const double tol = 1e-9 * poly.diameter();
    double spread = std::atan2(cross(o.dir1, o.dir2), o.dir1.dot(o.dir2));
    EXPECT_NEAR(spread, omega, 1e-9);
    for (const auto& v : poly.vertices()) {
        EXPECT_GE(cross(o.dir1, v - o.q), -tol);
        EXPECT_LE(cross(o.dir2, v - o.q), tol);
    }
    // contact minimality
    for (const auto& v : poly.vertices()) {
        if (std::abs(cross(o.dir1, v - o.q)) <= tol && (v - o.q).dot(o.dir1) > 0)
            EXPECT_LE((o.p1 - o.q).norm(), (v - o.q).norm() + tol);
        if (std::abs(cross(o.dir2, v - o.q)) <= tol && (v - o.q).dot(o.dir2) > 0)
            EXPECT_LE((o.p2 - o.q).norm(), (v - o.q).norm() + tol);
    }
    // p1 on or right of the line, p2 on or left
    EXPECT_LE(cross(line.direction, o.p1 - line.origin), tol);
    EXPECT_GE(cross(line.direction, o.p2 - line.origin), -tol);
    // apex sits on the line
    EXPECT_NEAR(cross(line.direction, o.q - line.origin), 0.0, 1e-9);
}

}  // namespace

TEST(Session, CentroidAndEnclosure) {
    auto s = new_session(unit_square(), kPi / 3);
    EXPECT_NEAR(s.interior_point().x(), 0.5, 1e-15);
    EXPECT_NEAR(s.interior_point().y(), 0.5, 1e-15);
    EXPECT_NEAR(s.enclosure().radius, 1.5 * std::sqrt(2.0) / 2, 1e-15);
    auto t = new_session(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}), kPi / 3);
    EXPECT_NEAR(t.interior_point().x(), 1.0 / 3, 1e-15);
    EXPECT_NEAR(t.interior_point().y(), 1.0 / 3, 1e-15);
    EXPECT_THROW(new_session(unit_square(), 2.0), InvalidOmega);
}

TEST(Probe, UnitSquareFromAbove) {
    auto s = new_session(unit_square(), kPi / 2);
    auto line = DirectedLine::make({0.5, 5}, {0, -1});
    auto r = s.probe(line);
    ASSERT_TRUE(r);
    // first cloud point on the way down is the top of the half-disc over the top edge
    EXPECT_NEAR(r->q.x(), 0.5, 1e-12);
    EXPECT_NEAR(r->q.y(), 1.5, 1e-12);
    // heading down, the right side is -x
    EXPECT_NEAR((r->p1 - Point(0, 1)).norm(), 0.0, 1e-12);
    EXPECT_NEAR((r->p2 - Point(1, 1)).norm(), 0.0, 1e-12);
    EXPECT_FALSE(r->apex_on_polygon);
    expect_valid(s.hidden(), kPi / 2, line, *r);
    auto bf = brute_force_probe(s, line);
    ASSERT_TRUE(bf);
    EXPECT_NEAR((bf->q - r->q).norm(), 0.0, 1e-8);
}

TEST(Probe, NarrowVertexEntry) {
    auto tri = equilateral();
    auto s = new_session(tri, kPi / 2);
    Point top = tri[2];
    auto line = DirectedLine::through(top + Vec(0, 2), s.interior_point());
    auto r = s.probe(line);
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->apex_on_polygon);
    EXPECT_NEAR((r->q - top).norm(), 0.0, 1e-12);
    EXPECT_NEAR((r->p1 - top).norm(), 0.0, 1e-12);
    EXPECT_NEAR((r->p2 - top).norm(), 0.0, 1e-12);
    expect_valid(tri, kPi / 2, line, *r);
    // adversarial arms leave both edges untouched
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_GT(cross(r->dir1, tri[i] - r->q), 1e-3);
        EXPECT_LT(cross(r->dir2, tri[i] - r->q), -1e-3);
    }
}

TEST(Probe, MissAndCounter) {
    auto s = new_session(unit_square(), kPi / 3);
    EXPECT_FALSE(s.probe(DirectedLine::make({3, 3}, {1, 0})));
    EXPECT_FALSE(s.probe(DirectedLine::make({-1, 2}, {1, 1})));
    EXPECT_EQ(s.probes_used(), 2);
    EXPECT_FALSE(brute_force_probe(s, DirectedLine::make({3, 3}, {1, 0})));
}

TEST(Probe, RepeatGivesSameApex) {
    auto s = new_session(unit_square(), kPi / 3);
    auto line = DirectedLine::make({-2, 0.3}, Vec(1, 0.2).normalized());
    auto a = s.probe(line), b = s.probe(line);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->q, b->q);
    EXPECT_EQ(s.probes_used(), 2);
}

TEST(Probe, TouchingEdgeLine) {
    // line running along the bottom edge: apex left of (0,0), arm flush with the edge
    auto s = new_session(unit_square(), kPi / 3);
    auto line = DirectedLine::make({-3, 0}, {1, 0});
    auto r = s.probe(line);
    ASSERT_TRUE(r);
    EXPECT_LT(r->q.x(), 0.0);
    EXPECT_NEAR(r->q.y(), 0.0, 1e-12);
    EXPECT_NEAR((r->p1 - Point(0, 0)).norm(), 0.0, 1e-12);  // closest of the flush pair
    expect_valid(s.hidden(), kPi / 3, line, *r);
}

TEST(Probe, MatchesBruteForceOnRandomInstances) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    int valid = 0;
    for (int t = 0; t < 300; ++t) {
        ExperimentConfig cfg;
        cfg.omega = (t % 4 == 0) ? kPi / 6 : (t % 4 == 1) ? kPi / 4 : (t % 4 == 2) ? kPi / 3 : kPi / 2;
        cfg.n_min = 4;
        cfg.n_max = 20;
        cfg.target_narrow = (cfg.omega >= kPi / 3 && t % 5 == 0) ? 1 : 0;
        cfg.seed = 17;
        ConvexPolygon poly;
        try {
            poly = gen_polygon(cfg, t);
        } catch (const Infeasible&) {
            continue;
        }
        auto s = new_session(poly, cfg.omega);
        Point through = s.interior_point() + 1.2 * Vec(u(rng) - 0.5, u(rng) - 0.5);
        auto line = DirectedLine::through(through - 3 * unit_at(kTwoPi * u(rng)), through);
        auto a = s.probe(line);
        auto b = brute_force_probe(s, line);
        ASSERT_EQ(a.has_value(), b.has_value()) << "trial " << t;
        if (!a) continue;
        ++valid;
        EXPECT_LE((a->q - b->q).norm(), 1e-6 * poly.diameter()) << "trial " << t;
        expect_valid(poly, cfg.omega, line, *a);
    }
    EXPECT_GT(valid, 100);
}

TEST(Probe, WidthShrinksAwayFromPolygon) {
    auto poly = ConvexPolygon({{0, 0}, {2, 0}, {2.5, 1}, {1, 2}, {-0.5, 1}});
    auto line = DirectedLine::make({-5, -3}, Vec(1, 0.6).normalized());
    double prev = 0;
    for (double t = 0; t < 4.5; t += 0.25) {
        double w = angular_width(poly, line.at(t));
        EXPECT_GE(w, prev);
        prev = w;
    }
}

TEST(Probe, PolicyDoesNotMatterOffPolygon) {
    auto poly = ConvexPolygon({{0, 0}, {2, 0}, {2.5, 1}, {1, 2}, {-0.5, 1}});
    auto a = new_session(poly, kPi / 3, ArmPolicy::AdversarialMinimal, 1);
    auto b = new_session(poly, kPi / 3, ArmPolicy::SeededRandom, 2);
    auto c = new_session(poly, kPi / 3, ArmPolicy::BisectorSymmetric, 3);
    auto line = DirectedLine::make({-4, 3}, Vec(1, -0.5).normalized());
    auto ra = a.probe(line), rb = b.probe(line), rc = c.probe(line);
    EXPECT_TRUE(same_result(ra, rb, 0.0));
    EXPECT_TRUE(same_result(ra, rc, 0.0));
}
