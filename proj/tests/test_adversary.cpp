#include <gtest/gtest.h>

#include <cmath>

#include "omegaprobe/adversary.hpp"
#include "omegaprobe/harness.hpp"
#include "omegaprobe/reconstruct.hpp"

using namespace omegaprobe;

TEST(Adversary, RejectsTooFewVertices) {
    EXPECT_THROW(new_adversary(kPi / 3, 3), InvalidParams);
    EXPECT_THROW(new_adversary(kPi / 2, 4), InvalidParams);
    EXPECT_NO_THROW(new_adversary(kPi / 2, 5));
    EXPECT_THROW(new_adversary(2.0, 6), InvalidOmega);
}

TEST(Adversary, FirstValidProbeIsSymmetric) {
    for (double w : {kPi / 3, kPi / 2}) {
        auto adv = new_adversary(w, 6);
        auto miss = adv.probe(DirectedLine::make(Point(0.5, -1), Vec(0, 1)));
        EXPECT_FALSE(miss);
        auto line = DirectedLine::make(Point(0, -1), Vec(0, 1));
        auto r = adv.probe(line);
        ASSERT_TRUE(r);
        EXPECT_NEAR(std::abs(cross(line.direction, r->q - line.origin)), 0.0, 1e-12);
        // arms sit at -w/2 and +w/2 around the probe direction
        EXPECT_NEAR(angle_of(r->dir1), normalize_angle(kPi / 2 - w / 2), 1e-9);
        EXPECT_NEAR(angle_of(r->dir2), normalize_angle(kPi / 2 + w / 2), 1e-9);
        EXPECT_GT(r->p1.x(), 0);
        EXPECT_LT(r->p2.x(), 0);
        EXPECT_EQ(adv.potential(), 2);
    }
}

TEST(Adversary, RepeatedLineGetsSameAnswer) {
    auto adv = new_adversary(kPi / 3, 7, 3);
    auto first = adv.probe(DirectedLine::make(Point(-1, -1), Vec(1, 1).normalized()));
    auto again = adv.probe(DirectedLine::make(Point(-1, -1), Vec(1, 1).normalized()));
    ASSERT_TRUE(first);
    EXPECT_TRUE(same_result(first, again, 1e-12));
    auto along = DirectedLine::through(first->p1, first->p2);
    auto a = adv.probe(along);
    auto b = adv.probe(along);
    EXPECT_TRUE(same_result(a, b, 1e-12));
}

namespace {

void play(double omega, int n, const char* algo, std::uint64_t seed) {
    auto adv = new_adversary(omega, n, seed);
    ReconResult r = std::string(algo) == "greedy" ? reconstruct_greedy(adv) : reconstruct_no_narrow(adv);
    SCOPED_TRACE(std::string(algo) + " n=" + std::to_string(n) + " omega=" + std::to_string(omega));
    auto rep = audit(adv, adv.transcript());
    EXPECT_EQ(rep.final_vertices, n);
    EXPECT_EQ(rep.revealed, n);
    EXPECT_EQ(rep.unconfirmed, 0);
    EXPECT_EQ(adv.forced_answers(), 0);
    EXPECT_GE(r.probes_used, rep.lower_bound);
    EXPECT_TRUE(rep.meets_lower_bound());
    // information grows by at most the allowance
    int valid = 0;
    for (std::size_t i = 0; i < rep.potential.size(); ++i) {
        if (adv.transcript()[i].result) ++valid;
        EXPECT_LE(rep.potential[i], potential_cap(omega, valid)) << i;
    }
    // the reconstruction is the witness
    auto witness = adv.provisional();
    EXPECT_LE(aligned_vertex_error(r.vertices, witness), 1e-9);
    // a fresh honest session on the witness replays the game exactly
    auto fresh = new_session(ConvexPolygon(witness), omega);
    for (const auto& rec : adv.transcript()) EXPECT_TRUE(same_result(fresh.probe(rec.line), rec.result, 1e-9)) << rec.t;
}

}  // namespace

TEST(Adversary, LowerBoundAgainstInput1) {
    for (int n : {5, 6, 8, 10}) play(kPi / 3, n, "input1", 11 + n);
    for (int n : {5, 6, 8}) play(kPi / 2, n, "input1", 17 + n);
}

TEST(Adversary, LowerBoundAgainstGreedy) {
    for (int n : {5, 6, 8, 10}) play(kPi / 3, n, "greedy", 23 + n);
    for (int n : {5, 7}) play(kPi / 2, n, "greedy", 29 + n);
}

TEST(Adversary, ForgedTranscriptIsCaught) {
    auto adv = new_adversary(kPi / 3, 6, 5);
    reconstruct_no_narrow(adv);
    Transcript forged = adv.transcript();
    ASSERT_GE(forged.size(), 4u);
    ASSERT_TRUE(forged[3].result);
    forged[3].result->p2 += Vec(0.01, 0.0);
    try {
        audit(adv, forged);
        FAIL() << "forged transcript passed";
    } catch (const InconsistencyFound& e) {
        EXPECT_EQ(e.probe_index, 3);
    }
}

TEST(Adversary, RegionIsConvexWithRevealedOnBoundary) {
    auto adv = new_adversary(kPi / 4, 7, 9);
    auto line = DirectedLine::make(Point(0, -1), Vec(0, 1));
    adv.probe(line);
    for (int step = 0; step < 5; ++step) {
        auto ch = adv.ledger().chain();
        auto conf = adv.ledger().confirmed(ch);
        std::size_t i = 0;
        while (i < ch.size() && conf[i]) ++i;
        if (i == ch.size()) break;
        adv.probe(DirectedLine::through(ch[i], ch[(i + 1) % ch.size()]));

        auto reg = adv.region();
        ASSERT_FALSE(reg.empty);
        const auto& b = reg.boundary;
        for (std::size_t k = 0; k < b.size(); ++k)
            EXPECT_GE(cross(b[(k + 1) % b.size()] - b[k], b[(k + 2) % b.size()] - b[(k + 1) % b.size()]), -1e-12);
        for (const auto& p : adv.revealed()) {
            EXPECT_TRUE(reg.contains(p, 1e-9));
            double best = 1e9;
            for (std::size_t k = 0; k < b.size(); ++k) {
                Vec e = b[(k + 1) % b.size()] - b[k];
                if (e.norm() == 0) continue;
                best = std::min(best, std::abs(cross(e.normalized(), p - b[k])));
            }
            EXPECT_LE(best, 1e-9);
        }
    }
}

TEST(Adversary, UnconfirmedCountMatchesDefinition) {
    auto adv = new_adversary(kPi / 3, 8, 2);
    reconstruct_greedy(adv);
    InfoLedger fresh;
    for (const auto& rec : adv.transcript()) fresh.add(rec.line, rec.result);
    auto ch = fresh.chain();
    // recount by hand: a pair is settled when one arm holds both ends in the right order
    int open = 0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        const Point& a = ch[i];
        const Point& b = ch[(i + 1) % ch.size()];
        bool settled = false;
        for (const auto& rec : adv.transcript()) {
            if (!rec.result) continue;
            const auto& o = *rec.result;
            bool right = std::abs(cross(o.dir1, a - o.q)) < 1e-9 && std::abs(cross(o.dir1, b - o.q)) < 1e-9 &&
                         (b - a).dot(o.dir1) > 0;
            bool left = std::abs(cross(o.dir2, a - o.q)) < 1e-9 && std::abs(cross(o.dir2, b - o.q)) < 1e-9 &&
                        (b - a).dot(o.dir2) < 0;
            settled = settled || right || left;
        }
        if (!settled) ++open;
    }
    EXPECT_EQ(fresh.unconfirmed(), open);
    EXPECT_EQ(adv.unconfirmed(), open);
    EXPECT_EQ(open, 0);
}
