#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "omegaprobe/geometry.hpp"
#include "omegaprobe/probe.hpp"

namespace omegaprobe {

// What an algorithm has learned from a transcript: the revealed contact points,
// the wedges, the miss lines, and which neighbouring pairs an arm has pinned
// down as edges.
class InfoLedger {
public:
    explicit InfoLedger(double tol = 1e-9) : tol_(tol) {}

    void add(const DirectedLine& line, const ProbeResult& r);

    const std::vector<Point>& points() const { return pts_; }
    std::vector<Point> chain() const;  // revealed points in ccw order
    // confirmed[i] is about chain()[i] -> chain()[i+1]
    std::vector<bool> confirmed(const std::vector<Point>& chain) const;
    int unconfirmed() const;
    int potential() const { return 2 * static_cast<int>(pts_.size()) - unconfirmed(); }
    std::vector<Wedge> wedges() const;
    // half-planes (left sides) that keep the given interior point, one per miss
    std::vector<DirectedLine> miss_sides(const Point& inside) const;
    int valid_answers() const { return static_cast<int>(outs_.size()); }

private:
    bool has(const Point& x) const;
    bool pinned(const Point& a, const Point& b) const;

    std::vector<Point> pts_;
    std::vector<ProbeOutcome> outs_;
    std::vector<DirectedLine> misses_;
    double tol_;
};

enum class AdversaryStage { Init, Grow, Confirm, Final };
std::string stage_name(AdversaryStage s);

// Plays the hidden polygon for an algorithm. Every answer is the honest answer
// for some convex n-gon that also reproduces all earlier answers, picked so the
// algorithm learns as little as possible.
class Adversary : public ProbeChannel {
public:
    Adversary(double omega, int n, std::uint64_t seed);

    ProbeResult probe(const DirectedLine& line) override;
    double omega() const override { return omega_; }
    Point interior_point() const override { return Point(0, 0); }
    Circle enclosure() const override { return {Point(0, 0), 1.0}; }
    int audit_vertex_count() const override { return n_; }

    int n() const { return n_; }
    AdversaryStage stage() const;
    const InfoLedger& ledger() const { return ledger_; }
    std::vector<Point> revealed() const { return ledger_.points(); }
    std::vector<Point> provisional() const;  // current witness polygon, ccw
    const std::vector<Point>& hidden() const { return hidden_; }
    int unconfirmed() const { return ledger_.unconfirmed(); }
    int potential() const { return ledger_.potential(); }
    const std::vector<int>& potential_history() const { return phi_history_; }
    int forced_answers() const { return forced_; }  // answers that broke the information budget
    // consistent region: enclosure cut by every answered wedge and miss side
    FeasibleRegion region() const;

private:
    struct Candidate {
        std::vector<Point> hidden;
    };
    struct Verdict {
        bool ok = false;
        ProbeResult answer;
        int gain = 0;
    };

    ProbeResult first_valid(const DirectedLine& line);
    Verdict judge(const Candidate& c, const DirectedLine& line) const;
    std::vector<std::vector<Candidate>> candidates(const DirectedLine& line);
    std::vector<Point> sample_gap(std::size_t gap, int count);
    int allowance() const;

    double omega_;
    int n_;
    std::mt19937_64 rng_;
    InfoLedger ledger_;
    std::vector<Point> hidden_;
    bool started_ = false;
    int forced_ = 0;
    std::vector<int> phi_history_;
};

Adversary new_adversary(double omega, int n, std::uint64_t seed = 1);

struct AuditReport {
    int probes = 0;
    int final_vertices = 0;
    int revealed = 0;
    int unconfirmed = 0;
    int lower_bound = 0;
    std::vector<int> potential;  // after each probe
    bool meets_lower_bound() const { return probes >= lower_bound; }
};

// Checks a finished game; throws InconsistencyFound naming the first bad probe
// (index -1 for a defect of the final polygon itself).
AuditReport audit(const Adversary& adv, const Transcript& transcript);

// most potential an honest-but-stingy game allows after k valid answers
int potential_cap(double omega, int k);

}  // namespace omegaprobe
