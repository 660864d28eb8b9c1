#include <gtest/gtest.h>

#include <cmath>

#include "omegaprobe/harness.hpp"
#include "omegaprobe/io.hpp"
#include "omegaprobe/reconstruct.hpp"

using namespace omegaprobe;

TEST(Generator, HexagonAtRightAngleHasNoNarrowVertex) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 2;
    cfg.n_min = cfg.n_max = 6;
    cfg.seed = 3;
    for (int i = 0; i < 20; ++i) {
        auto poly = gen_polygon(cfg, i);
        ASSERT_EQ(poly.size(), 6u);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            EXPECT_GT(poly.angle_at(k), kPi / 2 + cfg.margin);
            EXPECT_LT(poly.angle_at(k), kPi);
        }
    }
}

TEST(Generator, ThreeNarrowNeedsWideOmega) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 3;
    cfg.n_min = cfg.n_max = 8;
    cfg.target_narrow = 3;
    EXPECT_THROW(gen_polygon(cfg, 0), Infeasible);
    cfg.omega = kPi / 4;
    EXPECT_THROW(gen_polygon(cfg, 0), Infeasible);
    cfg.target_narrow = 4;
    cfg.omega = kPi / 2;
    EXPECT_THROW(gen_polygon(cfg, 0), Infeasible);
}

TEST(Generator, NarrowCountAndMargins) {
    for (int target : {0, 1, 2, 3}) {
        ExperimentConfig cfg;
        cfg.omega = target == 3 ? 5 * kPi / 12 : kPi / 3;
        cfg.n_min = 5;
        cfg.n_max = 30;
        cfg.target_narrow = target;
        cfg.epsilon = cfg.omega / 10;
        cfg.seed = 40 + target;
        for (int i = 0; i < 25; ++i) {
            auto poly = gen_polygon(cfg, i);
            EXPECT_EQ(count_narrow(poly, cfg.omega), target);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                double a = poly.angle_at(k);
                EXPECT_TRUE(a <= cfg.omega - cfg.margin + 1e-12 || a >= cfg.omega + cfg.margin - 1e-12) << a;
            }
        }
    }
}

TEST(Generator, SevenGonTwoNarrowWithEpsilon) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 2;
    cfg.n_min = cfg.n_max = 7;
    cfg.target_narrow = 2;
    cfg.epsilon = kPi / 20;
    cfg.seed = 77;
    for (int i = 0; i < 10; ++i) {
        auto poly = gen_polygon(cfg, i);
        EXPECT_EQ(poly.size(), 7u);
        EXPECT_EQ(count_narrow(poly, cfg.omega), 2);
        EXPECT_TRUE(epsilon_hypothesis_holds(poly, cfg.omega, *cfg.epsilon));
    }
}

TEST(Generator, CentroidNormalized) {
    ExperimentConfig cfg;
    cfg.seed = 9;
    auto poly = gen_polygon(cfg, 4);
    EXPECT_LE(poly.centroid().norm(), 1e-9);
    double far = 0;
    for (const auto& v : poly.vertices()) far = std::max(far, v.norm());
    EXPECT_NEAR(far, 1.0, 1e-12);
}

TEST(Suite, DeterministicCsv) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 3;
    cfg.n_min = 5;
    cfg.n_max = 15;
    cfg.trials = 12;
    cfg.target_narrow = 1;
    cfg.seed = 5;
    auto a = run_suite(cfg).to_csv();
    auto b = run_suite(cfg).to_csv();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.substr(0, a.find('\n')),
              "trial,n,narrow,algorithm,probes_used,bound,exact_match,vertex_error,best_effort,hit_gain,error");
    cfg.seed = 6;
    EXPECT_NE(run_suite(cfg).to_csv(), a);
}

TEST(Suite, ErrorsStayInsideTheTrial) {
    ExperimentConfig cfg;
    cfg.omega = kPi / 3;
    cfg.n_min = 5;
    cfg.n_max = 8;
    cfg.trials = 3;
    cfg.algorithm = "input2";  // needs a right angle
    auto rep = run_suite(cfg);
    ASSERT_EQ(rep.trials.size(), 3u);
    for (const auto& t : rep.trials) EXPECT_FALSE(t.error.empty());
    EXPECT_FALSE(rep.passed());
}

TEST(Suite, BoundTable) {
    EXPECT_EQ(probe_bound("input1", 10, 0), 18);
    EXPECT_EQ(probe_bound("input2", 10, 0), 17);
    EXPECT_EQ(probe_bound("general", 10, 0), 18);
    EXPECT_EQ(probe_bound("general", 10, 1), 19);
    EXPECT_EQ(probe_bound("general", 10, 2), 23);
    EXPECT_EQ(probe_bound("general", 10, 3), 25);
}

TEST(Io, PolygonRoundTripIsExact) {
    ExperimentConfig cfg;
    cfg.seed = 12;
    auto poly = gen_polygon(cfg, 1);
    auto back = polygon_from_json(polygon_to_json(poly));
    ASSERT_EQ(back.size(), poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        EXPECT_EQ(back[i].x(), poly[i].x());
        EXPECT_EQ(back[i].y(), poly[i].y());
    }
    auto cw = polygon_from_json(R"({"vertices": [[0,0],[0,1],[1,1],[1,0]], "ccw": false})");
    EXPECT_GT(cw.area(), 0);
    EXPECT_THROW(polygon_from_json("{\"points\": []}"), InvalidParams);
}

TEST(Io, TranscriptRoundTripReplays) {
    ExperimentConfig cfg;
    cfg.seed = 13;
    auto poly = gen_polygon(cfg, 2);
    auto s = new_session(poly, cfg.omega);
    s.probe(DirectedLine::make(Point(5, 5), Vec(1, 0)));  // a miss
    reconstruct_no_narrow(s);
    auto back = transcript_from_jsonl(transcript_to_jsonl(s.transcript()));
    ASSERT_EQ(back.size(), s.transcript().size());
    auto fresh = new_session(poly, cfg.omega);
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].t, static_cast<int>(i));
        EXPECT_TRUE(same_result(back[i].result, s.transcript()[i].result, 0.0));
        EXPECT_TRUE(same_result(fresh.probe(back[i].line), back[i].result, 0.0));
    }
    EXPECT_FALSE(back[0].result);
}

TEST(Io, LineSpecAndCloudCsv) {
    auto l = parse_line("0,-2,0,3");
    EXPECT_NEAR(l.direction.y(), 1.0, 1e-15);
    EXPECT_THROW(parse_line("1,2,3"), InvalidParams);
    EXPECT_THROW(parse_line("1,2,0,0"), CoincidentPoints);
    ConvexPolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    auto cloud = build_cloud(sq, kPi / 3);
    auto csv = cloud_to_csv(cloud);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(cloud.arcs.size()) + 1);
    auto svg = cloud_to_svg(sq, cloud);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
}
