#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "omegaprobe/geometry.hpp"
#include "omegaprobe/probe.hpp"

namespace omegaprobe {

struct ReconVertex {
    Point pt;
    bool flag = false;    // this vertex and its ccw successor form a confirmed edge
    bool narrow = false;  // known to be a narrow vertex
    int order = 0;        // insertion index, used for deterministic choices
};

// Partial reconstruction: known vertices in ccw order with their bookkeeping.
class ReconState {
public:
    explicit ReconState(double tol) : tol_(tol) {}

    const std::vector<ReconVertex>& vertices() const { return q_; }
    std::size_t size() const { return q_.size(); }
    std::size_t next(std::size_t i) const { return (i + 1) % q_.size(); }
    std::size_t prev(std::size_t i) const { return (i + q_.size() - 1) % q_.size(); }
    ReconVertex& at(std::size_t i) { return q_[i]; }
    const ReconVertex& at(std::size_t i) const { return q_[i]; }

    std::optional<std::size_t> find(const Point& x) const;
    // Adds x at its place on the hull. Returns its index, or nullopt when x
    // does not lie strictly outside the current polygon.
    std::optional<std::size_t> hull_insert(const Point& x, bool narrow = false);

    int unflagged() const;  // F
    int narrow_count() const;
    int potential() const { return 2 * static_cast<int>(q_.size()) - unflagged(); }
    int potential_with_narrow() const { return potential() + narrow_count(); }
    double corner_angle(std::size_t i) const;  // 0 for fewer than three vertices
    std::vector<Point> points() const;
    double tol() const { return tol_; }

    // Folds one outcome of a probe along the line from s to t (both known
    // vertices, s first). New contacts join the hull; an arm lying on the line
    // through s confirms the edge between s and t in the orientation the arm
    // allows; an apex on the polygon marks a narrow vertex.
    // Returns false when the outcome contradicts the current state.
    bool absorb(const ProbeOutcome& o, const Point* s, const Point* t);

private:
    std::vector<ReconVertex> q_;
    double tol_;
    int next_order_ = 0;
};

struct ReconResult {
    std::vector<Point> vertices;  // ccw
    int probes_used = 0;
    bool best_effort = false;
    std::vector<std::pair<Point, Point>> unresolved;  // edges assumed, not confirmed
    std::vector<int> potential;  // after initialization and after each loop step
    std::optional<int> hit_gain;  // right-angle algorithm only
    int p2_at_u = 0;              // loop probes whose left contact was the start vertex
    int narrow_found = 0;

    ConvexPolygon polygon() const { return ConvexPolygon(vertices); }
};

ReconResult reconstruct_no_narrow(ProbeChannel& ch);
ReconResult reconstruct_right_angle(ProbeChannel& ch);
ReconResult reconstruct_general(ProbeChannel& ch, std::optional<double> epsilon);
// Reference strategy for lower-bound games: always probe the longest open gap backwards.
ReconResult reconstruct_greedy(ProbeChannel& ch);

enum class NarrowClass { PairNarrow, SharedNarrow, Inconclusive };

NarrowClass classify_narrow_pair(const ProbeOutcome& o1, const ProbeOutcome& o2, double omega);

}  // namespace omegaprobe
