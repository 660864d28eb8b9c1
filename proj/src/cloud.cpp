#include "omegaprobe/cloud.hpp"

#include <algorithm>
#include <cmath>

namespace omegaprobe {

void check_omega(double omega) {
    if (!(omega > 0.0 && omega <= kPi / 2 + kTauAngle)) throw InvalidOmega("omega must lie in (0, pi/2]");
}

std::vector<int> narrow_vertices(const ConvexPolygon& poly, double omega) {
    std::vector<int> out;
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (poly.angle_at(i) <= omega + kTauAngle) out.push_back(static_cast<int>(i));
    return out;
}

int count_narrow(const ConvexPolygon& poly, double omega) {
    return static_cast<int>(narrow_vertices(poly, omega).size());
}

SupportFinder::SupportFinder(const ConvexPolygon& poly) {
    const std::size_t n = poly.size();
    edge_angle_.resize(n);
    for (std::size_t i = 0; i < n; ++i) edge_angle_[i] = angle_of(poly[poly.next(i)] - poly[i]);
    first_ = static_cast<int>(std::min_element(edge_angle_.begin(), edge_angle_.end()) - edge_angle_.begin());
    sorted_.resize(n);
    for (std::size_t j = 0; j < n; ++j) sorted_[j] = edge_angle_[(first_ + j) % n];
}

int SupportFinder::operator()(double theta) const {
    // vertex i supports every direction between its incoming and outgoing edge angles
    theta = normalize_angle(theta);
    const int n = static_cast<int>(sorted_.size());
    int j = static_cast<int>(std::lower_bound(sorted_.begin(), sorted_.end(), theta) - sorted_.begin());
    if (j == n) j = 0;
    return (first_ + j) % n;
}

namespace {

Point line_meet(const Point& p, const Vec& u, const Point& r, const Vec& w) {
    // p + s u = r + t w
    double den = cross(u, w);
    double s = cross(r - p, w) / den;
    return p + s * u;
}

}  // namespace

OmegaCloud build_cloud(const ConvexPolygon& poly, double omega) {
    check_omega(omega);
    const double scale = poly.diameter();
    SupportFinder support(poly);

    std::vector<double> events;
    for (double phi : support.edge_angles()) {
        events.push_back(normalize_angle(phi));
        events.push_back(normalize_angle(phi - omega - kPi));
    }
    std::sort(events.begin(), events.end());
    std::vector<double> ev;
    for (double e : events)
        if (ev.empty() || e - ev.back() > kTauAngle) ev.push_back(e);
    if (ev.size() > 1 && ev.front() + kTwoPi - ev.back() <= kTauAngle) ev.pop_back();

    OmegaCloud cloud;
    cloud.omega = omega;
    const std::size_t m = ev.size();
    for (std::size_t k = 0; k < m; ++k) {
        double lo = ev[k];
        double hi = (k + 1 < m) ? ev[k + 1] : ev[0] + kTwoPi;
        double mid = 0.5 * (lo + hi);
        int a = support(mid);
        int b = support(mid + omega + kPi);
        if (a == b) continue;  // apex parked on a narrow vertex
        const Point& pa = poly[a];
        const Point& pb = poly[b];
        Point q0 = line_meet(pa, unit_at(lo), pb, unit_at(lo + omega));
        Point q1 = line_meet(pa, unit_at(hi), pb, unit_at(hi + omega));
        if ((q1 - q0).norm() <= kTau * scale) continue;
        OmegaArc arc = omega_arc(pa, pb, omega);
        arc.start_angle = angle_of(q0 - arc.center);
        arc.end_angle = angle_of(q1 - arc.center);
        arc.support_a_index = a;
        arc.support_b_index = b;
        cloud.arcs.push_back(arc);
    }
    // neighbouring arcs over the same pair come from a merged-away event; join them
    std::vector<OmegaArc> merged;
    for (const auto& arc : cloud.arcs) {
        if (!merged.empty() && merged.back().support_a_index == arc.support_a_index &&
            merged.back().support_b_index == arc.support_b_index &&
            (merged.back().end_point() - arc.start_point()).norm() <= 10 * kTau * scale) {
            merged.back().end_angle = arc.end_angle;
        } else {
            merged.push_back(arc);
        }
    }
    if (merged.size() > 1 && merged.front().support_a_index == merged.back().support_a_index &&
        merged.front().support_b_index == merged.back().support_b_index &&
        (merged.back().end_point() - merged.front().start_point()).norm() <= 10 * kTau * scale) {
        merged.front().start_angle = merged.back().start_angle;
        merged.pop_back();
    }
    cloud.arcs = std::move(merged);
    // sanity only: each arm passes each edge direction once
    if (cloud.arcs.size() > 4 * poly.size()) throw Error("cloud has more than 4n arcs");

    for (const auto& arc : cloud.arcs) {
        Point pv = arc.start_point();
        cloud.pivots.push_back(pv);
        if (auto vi = poly.vertex_near(pv, kTau * scale * 10)) {
            cloud.on_polygon_pivots.push_back(pv);
            cloud.on_polygon_vertices.push_back(static_cast<int>(*vi));
        }
    }
    return cloud;
}

}  // namespace omegaprobe
