// Reference oracle that shares nothing with the cloud construction: it walks
// the line toward the polygon and bisects on the angular width.
#include <algorithm>
#include <cmath>
#include <limits>

#include "omegaprobe/probe.hpp"

namespace omegaprobe {

double angular_width(const ConvexPolygon& poly, const Point& x) {
    // directions measured against the direction toward the centroid, which keeps
    // them inside (-pi, pi) for any x outside the polygon
    Vec ref = poly.centroid() - x;
    if (ref.norm() == 0.0) return kTwoPi;
    double lo = 1e300, hi = -1e300;
    for (const auto& v : poly.vertices()) {
        Vec w = v - x;
        double a = std::atan2(cross(ref, w), ref.dot(w));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return hi - lo;
}

namespace {

struct Span {
    double enter;
    double leave;
};

std::optional<Span> clip_line(const ConvexPolygon& poly, const DirectedLine& line, double slack) {
    double enter = -1e300, leave = 1e300;
    const auto& vs = poly.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Point a = vs[i], b = vs[(i + 1) % vs.size()];
        Vec n = right_normal((b - a).normalized());  // outward
        double num = n.dot(line.origin - a) - slack;
        double den = n.dot(line.direction);
        if (den == 0.0) {
            if (num > 0) return std::nullopt;
            continue;
        }
        double t = -num / den;
        if (den < 0)
            enter = std::max(enter, t);
        else
            leave = std::min(leave, t);
    }
    if (enter > leave) return std::nullopt;
    return Span{enter, leave};
}

}  // namespace

ProbeResult brute_force_probe(const ConvexPolygon& poly, double omega, const DirectedLine& line) {
    const double scale = poly.diameter();
    auto span = clip_line(poly, line, 0.0);
    if (!span) span = clip_line(poly, line, kTau * scale);
    if (!span) return std::nullopt;
    const Point entry = line.at(span->enter);

    const auto& vs = poly.vertices();
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        if ((vs[i] - entry).norm() > 1e-7 * scale) continue;
        Vec to_next = vs[(i + 1) % n] - vs[i];
        Vec to_prev = vs[(i + n - 1) % n] - vs[i];
        double inner = std::acos(std::clamp(to_next.normalized().dot(to_prev.normalized()), -1.0, 1.0));
        if (inner <= omega + kTauAngle) {
            ProbeOutcome o;
            o.q = vs[i];
            o.p1 = o.p2 = vs[i];
            o.apex_on_polygon = true;
            // any admissible arms; callers compare apex and validity only
            o.dir1 = to_next.normalized();
            o.dir2 = rotate(o.dir1, omega);
            return o;
        }
    }

    // f(t) = width - omega grows as t approaches the entry point
    double hi = span->enter;
    double lo = hi - scale;
    while (angular_width(poly, line.at(lo)) >= omega) lo -= scale;
    while (hi - lo > 1e-10 * std::max(1.0, scale)) {
        double mid = 0.5 * (lo + hi);
        if (angular_width(poly, line.at(mid)) >= omega)
            hi = mid;
        else
            lo = mid;
    }
    const Point q = line.at(hi);

    std::size_t right = 0, left = 0;
    double amin = 1e300, amax = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        Vec w = vs[i] - q;
        double a = std::atan2(cross(line.direction, w), line.direction.dot(w));
        if (a < amin) amin = a, right = i;
        if (a > amax) amax = a, left = i;
    }
    ProbeOutcome o;
    o.q = q;
    o.dir1 = (vs[right] - q).normalized();
    o.dir2 = (vs[left] - q).normalized();
    // loose flush test, the apex is only good to the bisection tolerance
    const double flush = 1e-7 * scale;
    auto nearest = [&](const Vec& dir, std::size_t start) {
        std::size_t best = start;
        for (std::size_t i = 0; i < n; ++i) {
            Vec w = vs[i] - q;
            if (std::abs(cross(dir, w)) <= flush && w.dot(dir) > 0 && w.norm() < (vs[best] - q).norm()) best = i;
        }
        return vs[best];
    };
    o.p1 = nearest(o.dir1, right);
    o.p2 = nearest(o.dir2, left);
    return o;
}

ProbeResult brute_force_probe(const ProbeSession& s, const DirectedLine& line) {
    return brute_force_probe(s.hidden(), s.omega(), line);
}

}  // namespace omegaprobe
