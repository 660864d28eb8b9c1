#include "omegaprobe/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace omegaprobe {

ArmPolicy parse_policy(const std::string& name) {
    if (name == "adversarial-minimal") return ArmPolicy::AdversarialMinimal;
    if (name == "bisector-symmetric") return ArmPolicy::BisectorSymmetric;
    if (name == "seeded-random") return ArmPolicy::SeededRandom;
    throw InvalidParams("unknown arm policy: " + name);
}

std::string policy_name(ArmPolicy p) {
    switch (p) {
        case ArmPolicy::AdversarialMinimal: return "adversarial-minimal";
        case ArmPolicy::BisectorSymmetric: return "bisector-symmetric";
        case ArmPolicy::SeededRandom: return "seeded-random";
    }
    return "?";
}

bool same_result(const ProbeResult& a, const ProbeResult& b, double tol) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return (a->q - b->q).norm() <= tol && (a->p1 - b->p1).norm() <= tol && (a->p2 - b->p2).norm() <= tol &&
           (a->dir1 - b->dir1).norm() <= tol && (a->dir2 - b->dir2).norm() <= tol &&
           a->apex_on_polygon == b->apex_on_polygon;
}

namespace {

// parameter where the line first meets the polygon; nullopt if disjoint
std::optional<double> entry_parameter(const ConvexPolygon& poly, const DirectedLine& line, double slack) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Vec e = (poly[poly.next(i)] - poly[i]).normalized();
        double c0 = cross(e, line.origin - poly[i]);
        double c1 = cross(e, line.direction);
        if (std::abs(c1) < 1e-15) {
            if (c0 < -slack) return std::nullopt;
            continue;
        }
        double t = (-slack - c0) / c1;
        if (c1 > 0)
            lo = std::max(lo, t);
        else
            hi = std::min(hi, t);
    }
    if (lo > hi) return std::nullopt;
    return lo;
}

ProbeOutcome narrow_apex(const ConvexPolygon& poly, std::size_t v, double omega, const DirectedLine& line,
                         ArmPolicy policy, std::mt19937_64* rng) {
    const Point& pv = poly[v];
    double alpha = poly.angle_at(v);
    double room = std::max(0.0, omega - alpha);
    Vec out_edge = (poly[poly.next(v)] - pv).normalized();
    double s = 0.5 * room;
    if (policy == ArmPolicy::BisectorSymmetric) {
        double want = angle_of(out_edge) - (angle_of(line.direction) - 0.5 * omega);
        want = std::remainder(want, kTwoPi);
        s = std::clamp(want, 0.0, room);
    } else if (policy == ArmPolicy::SeededRandom && rng) {
        s = std::uniform_real_distribution<double>(0.0, 1.0)(*rng) * room;
    }
    ProbeOutcome o;
    o.q = pv;
    o.dir1 = rotate(out_edge, -s);
    o.dir2 = rotate(o.dir1, omega);
    o.p1 = pv;
    o.p2 = pv;
    o.apex_on_polygon = true;
    return o;
}

double bisect_apex(const ConvexPolygon& poly, double omega, const DirectedLine& line, double t_enter) {
    const double scale = poly.diameter();
    double hi = t_enter;
    double lo = t_enter - scale;
    while (angular_width(poly, line.at(lo)) > omega) lo -= scale;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * scale; ++it) {
        double mid = 0.5 * (lo + hi);
        if (angular_width(poly, line.at(mid)) >= omega)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

ProbeResult probe_polygon(const ConvexPolygon& poly, const OmegaCloud& cloud, const DirectedLine& line,
                          ArmPolicy policy, std::mt19937_64* rng) {
    const double omega = cloud.omega;
    const double scale = poly.diameter();
    const double tol = kTau * scale;

    auto t_enter = entry_parameter(poly, line, 0.0);
    if (!t_enter) t_enter = entry_parameter(poly, line, tol);
    if (!t_enter) return std::nullopt;
    Point entry = line.at(*t_enter);

    if (auto v = poly.vertex_near(entry, 1e-7 * scale)) {
        if (poly.angle_at(*v) <= omega + kTauAngle) return narrow_apex(poly, *v, omega, line, policy, rng);
    }

    double best_t = std::numeric_limits<double>::infinity();
    Point q;
    for (const auto& arc : cloud.arcs) {
        for (const auto& h : line_arc_intersections(line, arc)) {
            if (h.t <= *t_enter + tol && h.t < best_t) {
                best_t = h.t;
                q = h.point;
            }
        }
    }
    if (!std::isfinite(best_t)) q = line.at(bisect_apex(poly, omega, line, *t_enter));

    // extreme directions seen from q, measured against the line direction
    std::size_t lo_i = 0, hi_i = 0;
    double lo_a = std::numeric_limits<double>::infinity(), hi_a = -lo_a;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Vec w = poly[i] - q;
        double a = std::atan2(cross(line.direction, w), line.direction.dot(w));
        if (a < lo_a) {
            lo_a = a;
            lo_i = i;
        }
        if (a > hi_a) {
            hi_a = a;
            hi_i = i;
        }
    }
    ProbeOutcome o;
    o.q = q;
    o.dir1 = (poly[lo_i] - q).normalized();
    o.dir2 = (poly[hi_i] - q).normalized();
    auto closest_on = [&](const Vec& dir, std::size_t fallback) {
        Point best = poly[fallback];
        double bd = (best - q).norm();
        for (std::size_t i = 0; i < poly.size(); ++i) {
            Vec w = poly[i] - q;
            if (std::abs(cross(dir, w)) <= tol && w.dot(dir) > 0 && w.norm() < bd) {
                bd = w.norm();
                best = poly[i];
            }
        }
        return best;
    };
    o.p1 = closest_on(o.dir1, lo_i);
    o.p2 = closest_on(o.dir2, hi_i);
    return o;
}

ProbeSession::ProbeSession(ConvexPolygon hidden, double omega, ArmPolicy policy, std::uint64_t seed)
    : hidden_(std::move(hidden)), omega_(omega), policy_(policy), rng_(seed) {
    check_omega(omega);
    p_ = hidden_.centroid();
    double r = 0.0;
    for (const auto& v : hidden_.vertices()) r = std::max(r, (v - p_).norm());
    psi_ = {p_, 1.5 * r};
}

const OmegaCloud& ProbeSession::cloud() const {
    if (!cloud_) cloud_ = build_cloud(hidden_, omega_);
    return *cloud_;
}

ProbeResult ProbeSession::probe(const DirectedLine& line) {
    ProbeResult r = probe_polygon(hidden_, cloud(), line, policy_, &rng_);
    record(line, r);
    return r;
}

ProbeSession new_session(const ConvexPolygon& poly, double omega, ArmPolicy policy, std::uint64_t seed) {
    return ProbeSession(poly, omega, policy, seed);
}

}  // namespace omegaprobe
