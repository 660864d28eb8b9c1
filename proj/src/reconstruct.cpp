#include "omegaprobe/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace omegaprobe {

std::optional<std::size_t> ReconState::find(const Point& x) const {
    for (std::size_t i = 0; i < q_.size(); ++i)
        if ((q_[i].pt - x).norm() <= tol_) return i;
    return std::nullopt;
}

std::optional<std::size_t> ReconState::hull_insert(const Point& x, bool narrow) {
    if (find(x)) return std::nullopt;
    ReconVertex v{x, false, narrow, next_order_};
    const std::size_t n = q_.size();
    std::size_t pos = n;
    if (n == 2) {
        Vec e = q_[1].pt - q_[0].pt;
        double side = cross(e.normalized(), x - q_[0].pt);
        if (std::abs(side) <= tol_) return std::nullopt;
        pos = side > 0 ? 2 : 1;
    } else if (n >= 3) {
        std::optional<std::size_t> edge;
        int seen = 0;
        double worst = -tol_;
        for (std::size_t i = 0; i < n; ++i) {
            Vec e = (q_[next(i)].pt - q_[i].pt).normalized();
            double side = cross(e, x - q_[i].pt);
            if (side < -tol_) ++seen;
            if (side < worst) {
                worst = side;
                edge = i;
            }
        }
        if (!edge || seen != 1) return std::nullopt;
        pos = *edge + 1;
    }
    if (n >= 2) {
        std::size_t before = (pos + n - 1) % n;
        if (q_[before].flag) return std::nullopt;  // confirmed edges have nothing beyond them
    }
    q_.insert(q_.begin() + static_cast<long>(pos), v);
    ++next_order_;
    return pos;
}

int ReconState::unflagged() const {
    return static_cast<int>(std::count_if(q_.begin(), q_.end(), [](const ReconVertex& v) { return !v.flag; }));
}

int ReconState::narrow_count() const {
    return static_cast<int>(std::count_if(q_.begin(), q_.end(), [](const ReconVertex& v) { return v.narrow; }));
}

double ReconState::corner_angle(std::size_t i) const {
    if (q_.size() < 3) return 0.0;
    return angle_ccw(q_[next(i)].pt, q_[i].pt, q_[prev(i)].pt);
}

std::vector<Point> ReconState::points() const {
    std::vector<Point> out;
    for (const auto& v : q_) out.push_back(v.pt);
    return out;
}

bool ReconState::absorb(const ProbeOutcome& o, const Point* s, const Point* t) {
    auto same = [&](const Point& a, const Point& b) { return (a - b).norm() <= tol_; };
    if (o.apex_on_polygon) {
        if (auto i = find(o.q)) {
            q_[*i].narrow = true;
            return true;
        }
        return hull_insert(o.q, true).has_value();
    }
    const bool right_flush = s && same(o.p1, *s) && !same(o.q, *s);
    const bool left_flush = s && same(o.p2, *s) && !same(o.q, *s);
    for (const Point* x : {&o.p1, &o.p2}) {
        if (find(*x)) continue;
        if (!hull_insert(*x)) return false;
    }
    if (t && right_flush) {
        // polygon to the left of the line: edge runs s -> t
        auto i = find(*s);
        if (i && q_.size() >= 2 && same(q_[next(*i)].pt, *t)) q_[*i].flag = true;
    }
    if (t && left_flush) {
        // polygon to the right: edge runs t -> s
        auto j = find(*t);
        if (j && q_.size() >= 2 && same(q_[next(*j)].pt, *s)) q_[*j].flag = true;
    }
    return true;
}

namespace {

class Prober {
public:
    Prober(ProbeChannel& ch, int limit, const char* what) : ch_(ch), limit_(limit), what_(what) {}

    ProbeOutcome operator()(const DirectedLine& line) {
        if (ch_.probes_used() >= limit_)
            throw BudgetExceeded(std::string(what_) + ": budget of " + std::to_string(limit_) + " probes exhausted");
        auto r = ch_.probe(line);
        if (!r) throw Error(std::string(what_) + ": probe through known points missed");
        return *r;
    }

private:
    ProbeChannel& ch_;
    int limit_;
    const char* what_;
};

double psi_tol(const ProbeChannel& ch) { return kTau * 2.0 * ch.enclosure().radius; }

DirectedLine initial_line(const ProbeChannel& ch) {
    Vec d = unit_at(0.3);
    return DirectedLine::make(ch.interior_point() - ch.enclosure().radius * d, d);
}

// where the ray from x along dir leaves the enclosing circle
Point exit_psi(const Circle& psi, const Point& x, const Vec& dir) {
    Vec oc = x - psi.center;
    double b = dir.dot(oc);
    double c = oc.squaredNorm() - psi.radius * psi.radius;
    double s = -b + std::sqrt(std::max(0.0, b * b - c));
    return x + s * dir;
}

double unsigned_angle(const Point& a, const Point& b, const Point& c) {
    Vec u = a - b, w = c - b;
    return std::atan2(std::abs(cross(u, w)), u.dot(w));
}

ReconResult finish(const ReconState& st, const ProbeChannel& ch, ReconResult r) {
    r.vertices = st.points();
    r.probes_used = ch.probes_used();
    r.narrow_found = st.narrow_count();
    return r;
}

void lowest_unflagged_loop(Prober& probe, ReconState& st, ReconResult& res) {
    while (st.unflagged() > 0) {
        std::size_t u = 0;
        int best = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < st.size(); ++i)
            if (!st.at(i).flag && st.at(i).order < best) best = st.at(i).order, u = i;
        Point pu = st.at(u).pt, pv = st.at(st.next(u)).pt;
        auto o = probe(DirectedLine::through(pu, pv));
        if (o.apex_on_polygon) throw NarrowVertexEncountered("apex landed on a polygon vertex");
        if ((o.p2 - pu).norm() <= st.tol()) ++res.p2_at_u;
        if (!st.absorb(o, &pu, &pv)) throw Error("outcome contradicts the known vertices");
        res.potential.push_back(st.potential());
    }
}

}  // namespace

ReconResult reconstruct_no_narrow(ProbeChannel& ch) {
    const int n = ch.audit_vertex_count();
    Prober probe(ch, 2 * n - 2, "no-narrow reconstruction");
    ReconState st(psi_tol(ch));
    ReconResult res;
    auto o = probe(initial_line(ch));
    if (o.apex_on_polygon) throw NarrowVertexEncountered("first apex landed on a polygon vertex");
    st.hull_insert(o.p1);
    st.hull_insert(o.p2);
    res.potential.push_back(st.potential());
    lowest_unflagged_loop(probe, st, res);
    return finish(st, ch, res);
}

ReconResult reconstruct_right_angle(ProbeChannel& ch) {
    if (std::abs(ch.omega() - kPi / 2) > 1e-12) throw OmegaMismatch("right-angle reconstruction needs omega = pi/2");
    const int n = ch.audit_vertex_count();
    if (n < 5) throw InvalidParams("right-angle reconstruction needs at least 5 vertices");
    Prober probe(ch, 2 * n - 3, "right-angle reconstruction");
    ReconState st(psi_tol(ch));
    ReconResult res;
    auto same = [&](const Point& a, const Point& b) { return (a - b).norm() <= st.tol(); };
    auto absorb = [&](const ProbeOutcome& o, const Point& s, const Point& t) {
        if (o.apex_on_polygon) throw NarrowVertexEncountered("apex landed on a polygon vertex");
        if (!st.absorb(o, &s, &t)) throw Error("outcome contradicts the known vertices");
    };

    auto o0 = probe(initial_line(ch));
    if (o0.apex_on_polygon) throw NarrowVertexEncountered("first apex landed on a polygon vertex");
    const Point q = o0.q, v1 = o0.p1, v2 = o0.p2;
    st.hull_insert(v1);
    st.hull_insert(v2);
    res.potential.push_back(st.potential());

    auto o1 = probe(DirectedLine::through(v1, v2));
    absorb(o1, v1, v2);
    DirectedLine hit;
    Point hs, ht;
    bool labelled = true;
    if (same(o1.p2, v1)) {
        // left arm lies on the chord: edge confirmed, one new vertex
        const Point v4 = o1.p1;
        res.potential.push_back(st.potential());
        auto o2 = probe(DirectedLine::through(v4, v2));
        absorb(o2, v4, v2);
        const Point v3 = o2.p1;
        hs = v3;
        ht = v4;
        labelled = !same(v3, v4);
    } else {
        const Point v3 = o1.p1, v4 = o1.p2, q1 = o1.q;
        labelled = !same(v3, v1) && !same(v4, v2) && !same(v3, v4);
        if (unsigned_angle(v2, v3, q1) < unsigned_angle(q, v2, v3)) {
            hs = v3;
            ht = v1;
        } else {
            hs = v2;
            ht = v4;
        }
    }
    res.potential.push_back(st.potential());
    if (labelled) {
        hit = DirectedLine::through(hs, ht);
        int before = st.potential();
        auto oh = probe(hit);
        absorb(oh, hs, ht);
        res.hit_gain = st.potential() - before;
        res.potential.push_back(st.potential());
    }
    lowest_unflagged_loop(probe, st, res);
    return finish(st, ch, res);
}

ReconResult reconstruct_general(ProbeChannel& ch, std::optional<double> epsilon) {
    const int n = ch.audit_vertex_count();
    const int nb = ch.audit_narrow_count();
    static const int kExtra[4] = {-1, -1, 2, 3};
    const int bound = 2 * n - 1 + nb + kExtra[std::clamp(nb, 0, 3)];
    Prober probe(ch, bound, "general reconstruction");
    ReconState st(psi_tol(ch));
    ReconResult res;
    const double omega = ch.omega();
    const Circle psi = ch.enclosure();
    auto same = [&](const Point& a, const Point& b) { return (a - b).norm() <= st.tol(); };
    auto record = [&] { res.potential.push_back(st.potential_with_narrow()); };

    auto o = probe(initial_line(ch));
    if (!o.apex_on_polygon) {
        st.hull_insert(o.p1);
        st.hull_insert(o.p2);
    } else {
        st.hull_insert(o.q, true);
        Vec inside = (o.dir1 + o.dir2).normalized();
        Point start = exit_psi(psi, o.q, inside);
        auto o2 = probe(DirectedLine::make(start, -inside));
        if (o2.apex_on_polygon && same(o2.q, o.q)) {
            record();
            return finish(st, ch, res);
        }
        if (!st.absorb(o2, nullptr, nullptr)) throw Error("outcome contradicts the known vertices");
    }
    record();

    const int guard = 4 * n + 16;
    for (int iter = 0; st.unflagged() > 0; ++iter) {
        if (iter > guard) throw Error("general reconstruction is not making progress");
        const std::size_t m = st.size();
        auto pick = [&](auto pred) {
            std::optional<std::size_t> best;
            for (std::size_t i = 0; i < m; ++i)
                if (pred(i) && (!best || st.at(i).order < st.at(*best).order)) best = i;
            return best;
        };
        // (a) an open non-narrow vertex, wide corners first
        auto open = [&](std::size_t i) { return !st.at(i).flag && !st.at(i).narrow; };
        auto u = pick([&](std::size_t i) { return open(i) && st.corner_angle(i) > omega; });
        if (!u) u = pick(open);
        if (u) {
            Point pu = st.at(*u).pt, pv = st.at(st.next(*u)).pt;
            auto r = probe(DirectedLine::through(pu, pv));
            if ((r.p2 - pu).norm() <= st.tol() && !r.apex_on_polygon) ++res.p2_at_u;
            if (!st.absorb(r, &pu, &pv)) throw Error("outcome contradicts the known vertices");
            record();
            continue;
        }
        // (b) approach an open narrow vertex from its ccw neighbour, backwards
        u = pick([&](std::size_t i) {
            std::size_t v = st.prev(i);
            return !st.at(i).narrow && !st.at(v).flag && st.at(v).narrow && v != i;
        });
        if (u) {
            Point pu = st.at(*u).pt, pv = st.at(st.prev(*u)).pt;
            auto r = probe(DirectedLine::through(pu, pv));
            if (!st.absorb(r, &pu, &pv)) throw Error("outcome contradicts the known vertices");
            record();
            continue;
        }
        // (c) two narrow neighbours with the gap between them still open
        u = pick([&](std::size_t i) { return !st.at(i).flag && st.at(i).narrow && st.at(st.next(i)).narrow; });
        if (!u || !epsilon) {
            res.best_effort = true;
            for (std::size_t i = 0; i < m; ++i)
                if (!st.at(i).flag) res.unresolved.emplace_back(st.at(i).pt, st.at(st.next(i)).pt);
            break;
        }
        const Point pu = st.at(*u).pt, pv = st.at(st.next(*u)).pt;
        const double span = 2.0 * psi.radius;
        auto insert_in_gap = [&](const ProbeOutcome& r, const Point& x) {
            if (st.find(x)) throw EpsilonViolated("tilted probe returned a known vertex");
            bool narrow = r.apex_on_polygon && same(r.q, x);
            auto pos = st.hull_insert(x, narrow);
            if (!pos) throw EpsilonViolated("tilted probe returned a point inside the known polygon");
            if (!same(st.at(st.prev(*pos)).pt, pu) || !same(st.at(st.next(*pos)).pt, pv))
                throw EpsilonViolated("tilted probe returned a vertex outside the open gap");
        };
        Vec d1 = rotate((pv - pu).normalized(), 0.5 * *epsilon);
        auto r1 = probe(DirectedLine::make(pv - span * d1, d1));
        if (!same(r1.p1, pv)) {
            insert_in_gap(r1, r1.p1);
        } else {
            Vec d2 = rotate((pu - pv).normalized(), -0.5 * *epsilon);
            auto r2 = probe(DirectedLine::make(pu - span * d2, d2));
            if (!same(r2.p2, pu)) {
                insert_in_gap(r2, r2.p2);
            } else {
                st.at(*st.find(pu)).flag = true;
            }
        }
        record();
    }
    return finish(st, ch, res);
}

ReconResult reconstruct_greedy(ProbeChannel& ch) {
    const int n = ch.audit_vertex_count();
    Prober probe(ch, 4 * n + 16, "greedy reconstruction");
    ReconState st(psi_tol(ch));
    ReconResult res;
    auto o = probe(initial_line(ch));
    if (!st.absorb(o, nullptr, nullptr)) throw Error("outcome contradicts the known vertices");
    res.potential.push_back(st.potential());
    while (st.unflagged() > 0) {
        std::optional<std::size_t> u;
        double longest = -1;
        for (std::size_t i = 0; i < st.size(); ++i) {
            if (st.at(i).flag || st.size() < 2) continue;
            double len = (st.at(st.next(i)).pt - st.at(i).pt).norm();
            if (len > longest + st.tol()) longest = len, u = i;
        }
        if (!u) throw Error("greedy reconstruction has nothing to probe");
        Point pu = st.at(*u).pt, pv = st.at(st.next(*u)).pt;
        auto r = probe(DirectedLine::through(pv, pu));
        if (!st.absorb(r, &pv, &pu)) throw Error("outcome contradicts the known vertices");
        res.potential.push_back(st.potential());
    }
    return finish(st, ch, res);
}

NarrowClass classify_narrow_pair(const ProbeOutcome& o1, const ProbeOutcome& o2, double omega) {
    const double tol = 1e-9 * std::max({1.0, o1.q.norm(), o2.q.norm()});
    auto same = [&](const Point& a, const Point& b) { return (a - b).norm() <= tol; };
    if (o1.apex_on_polygon || o2.apex_on_polygon) return NarrowClass::Inconclusive;
    Point u, a, b;
    if (same(o1.p2, o2.p1)) {
        u = o1.p2;
        a = o1.p1;
        b = o2.p2;
    } else if (same(o1.p1, o2.p2)) {
        u = o1.p1;
        a = o2.p1;
        b = o1.p2;
    } else {
        return NarrowClass::Inconclusive;
    }
    if (same(a, b) || same(a, u) || same(b, u)) return NarrowClass::Inconclusive;
    // both apices on one circle of the same support pair means one arc
    auto on_arc = [&](const ProbeOutcome& o, const Point& x) {
        if (same(o.p1, o.p2)) return false;
        return std::abs(angle_ccw(o.p1, x, o.p2) - omega) <= 1e-9;
    };
    if (on_arc(o1, o2.q) && on_arc(o2, o1.q)) return NarrowClass::Inconclusive;
    return angle_ccw(a, u, b) > omega ? NarrowClass::PairNarrow : NarrowClass::SharedNarrow;
}

}  // namespace omegaprobe
