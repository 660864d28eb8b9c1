#include <gtest/gtest.h>

#include <cmath>

#include "omegaprobe/harness.hpp"
#include "omegaprobe/reconstruct.hpp"

using namespace omegaprobe;

namespace {

ConvexPolygon regular(int n, double phase = 0.2) {
    std::vector<Point> v;
    for (int i = 0; i < n; ++i) v.push_back(unit_at(kTwoPi * i / n + phase));
    return ConvexPolygon(v);
}

void expect_exact(const ReconResult& r, const ConvexPolygon& poly) {
    EXPECT_FALSE(r.best_effort);
    EXPECT_LE(aligned_vertex_error(r.vertices, poly.vertices()), 1e-6 * poly.diameter());
}

void expect_potential_grows(const ReconResult& r) {
    for (std::size_t i = 1; i < r.potential.size(); ++i) EXPECT_GE(r.potential[i], r.potential[i - 1] + 1) << i;
}

}  // namespace

TEST(NoNarrow, Hexagon) {
    auto poly = regular(6);
    auto s = new_session(poly, kPi / 3);
    auto r = reconstruct_no_narrow(s);
    expect_exact(r, poly);
    EXPECT_LE(r.probes_used, 10);
    expect_potential_grows(r);
}

TEST(NoNarrow, Square) {
    auto poly = ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    auto s = new_session(poly, kPi / 3);
    auto r = reconstruct_no_narrow(s);
    expect_exact(r, poly);
    EXPECT_LE(r.probes_used, 6);
}

TEST(NoNarrow, DeterministicAcrossSeeds) {
    auto poly = regular(7, 0.5);
    auto a = new_session(poly, kPi / 4, ArmPolicy::SeededRandom, 1);
    auto b = new_session(poly, kPi / 4, ArmPolicy::SeededRandom, 99);
    auto ra = reconstruct_no_narrow(a), rb = reconstruct_no_narrow(b);
    EXPECT_LE(aligned_vertex_error(ra.vertices, rb.vertices), 1e-12);
}

TEST(NoNarrow, RefusesNarrowVertex) {
    auto tri = ConvexPolygon({{0, 0}, {1, 0}, {0.5, 0.9}});
    auto s = new_session(tri, kPi / 2);
    EXPECT_THROW(reconstruct_no_narrow(s), NarrowVertexEncountered);
}

TEST(NoNarrow, RandomPolygonsWithinBudget) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 3;
    cfg.n_min = 5;
    cfg.n_max = 30;
    cfg.trials = 40;
    cfg.seed = 4;
    cfg.algorithm = "input1";
    auto rep = run_suite(cfg);
    for (const auto& t : rep.trials) EXPECT_TRUE(t.ok()) << t.trial << " " << t.error << " probes " << t.probes_used;
}

TEST(RightAngle, PentagonAndHexagon) {
    for (int n : {5, 6}) {
        auto poly = regular(n);
        auto s = new_session(poly, kPi / 2);
        auto r = reconstruct_right_angle(s);
        expect_exact(r, poly);
        EXPECT_LE(r.probes_used, 2 * n - 3);
        ASSERT_TRUE(r.hit_gain);
        EXPECT_EQ(*r.hit_gain, 2);
    }
}

TEST(RightAngle, Refusals) {
    auto poly = regular(6);
    auto s = new_session(poly, kPi / 3);
    EXPECT_THROW(reconstruct_right_angle(s), OmegaMismatch);
    auto sq = new_session(ConvexPolygon({{0, 0}, {2, 0}, {2.2, 1}, {0, 1.2}}), kPi / 2);
    EXPECT_THROW(reconstruct_right_angle(sq), InvalidParams);
}

TEST(RightAngle, RandomPolygonsWithinBudget) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 2;
    cfg.n_min = 5;
    cfg.n_max = 30;
    cfg.trials = 40;
    cfg.seed = 8;
    cfg.algorithm = "input2";
    auto rep = run_suite(cfg);
    for (const auto& t : rep.trials) {
        EXPECT_TRUE(t.ok()) << t.trial << " " << t.error << " probes " << t.probes_used << "/" << t.bound;
        EXPECT_EQ(t.hit_gain, 2) << t.trial;
    }
}

TEST(General, NoNarrowMatchesFirstBound) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 4;
    cfg.n_min = 5;
    cfg.n_max = 20;
    cfg.trials = 20;
    cfg.seed = 12;
    cfg.algorithm = "general";
    auto rep = run_suite(cfg);
    for (const auto& t : rep.trials) {
        EXPECT_TRUE(t.ok()) << t.trial << " " << t.error;
        EXPECT_LE(t.probes_used, 2 * t.n - 2);
    }
}

TEST(General, NarrowCounts) {
    struct Case {
        double omega;
        int narrow;
    };
    for (Case c : {Case{kPi / 3, 1}, Case{kPi / 2, 1}, Case{kPi / 3, 2}, Case{kPi / 2, 2}, Case{5 * kPi / 12, 3},
                   Case{kPi / 2, 3}}) {
        ExperimentConfig cfg;
        cfg.omega = c.omega;
        cfg.n_min = 5;
        cfg.n_max = 20;
        cfg.trials = 15;
        cfg.target_narrow = c.narrow;
        cfg.epsilon = c.omega / 10;
        cfg.seed = 21 + c.narrow;
        auto rep = run_suite(cfg);
        for (const auto& t : rep.trials)
            EXPECT_TRUE(t.ok()) << "omega " << c.omega << " nb " << c.narrow << " trial " << t.trial << " " << t.error
                                << " probes " << t.probes_used << "/" << t.bound;
    }
}

TEST(General, AdjacentNarrowWithoutEpsilonIsBestEffort) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 2;
    cfg.n_min = 5;
    cfg.n_max = 12;
    cfg.target_narrow = 2;
    cfg.adjacent_narrow = true;
    cfg.seed = 5;
    for (int i = 0; i < 5; ++i) {
        auto poly = gen_polygon(cfg, i);
        auto s = new_session(poly, cfg.omega);
        auto r = reconstruct_general(s, std::nullopt);
        EXPECT_TRUE(r.best_effort);
        auto nv = narrow_vertices(poly, cfg.omega);
        ASSERT_EQ(nv.size(), 2u);
        bool listed = false;
        for (auto& [a, b] : r.unresolved) {
            bool ab = (a - poly[nv[0]]).norm() < 1e-9 && (b - poly[nv[1]]).norm() < 1e-9;
            bool ba = (a - poly[nv[1]]).norm() < 1e-9 && (b - poly[nv[0]]).norm() < 1e-9;
            listed = listed || ab || ba;
        }
        EXPECT_TRUE(listed) << i;
    }
}

TEST(Classify, ObservationBranches) {
    const double w = kPi / 3;
    Point u(0, 0);
    auto make = [&](double angle) {
        Point a = unit_at(0.0), b = unit_at(angle);
        ProbeOutcome o1{Point(0.5, -1), Vec(0, 1), Vec(0, 1), a, u, false};
        ProbeOutcome o2{Point(-1, 0.5), Vec(1, 0), Vec(1, 0), u, b, false};
        return std::make_pair(o1, o2);
    };
    auto [a1, a2] = make(w + 0.1);
    EXPECT_EQ(classify_narrow_pair(a1, a2, w), NarrowClass::PairNarrow);
    auto [b1, b2] = make(w - 0.1);
    EXPECT_EQ(classify_narrow_pair(b1, b2, w), NarrowClass::SharedNarrow);
    // second apex on the first outcome's arc and the first apex on the second's
    Point p1(-1, 0), p2(1, 0);
    auto arc = omega_arc(p1, p2, w);
    Point qa = arc.point_at(arc.start_angle + 0.3 * arc.span());
    Point qb = arc.point_at(arc.start_angle + 0.6 * arc.span());
    ProbeOutcome s1{qa, Vec(1, 0), Vec(0, 1), p1, p2, false};
    ProbeOutcome s2{qb, Vec(1, 0), Vec(0, 1), p2, p1, false};
    EXPECT_EQ(classify_narrow_pair(s1, s2, w), NarrowClass::Inconclusive);
}
