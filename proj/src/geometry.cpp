#include "omegaprobe/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace omegaprobe {

DirectedLine DirectedLine::through(const Point& from, const Point& to) {
    Vec d = to - from;
    double len = d.norm();
    if (len == 0.0) throw CoincidentPoints("line through a single point");
    return {from, d / len};
}

DirectedLine DirectedLine::make(const Point& origin, const Vec& dir) {
    double len = dir.norm();
    if (len == 0.0) throw CoincidentPoints("zero line direction");
    return {origin, dir / len};
}

Vec rotate(const Vec& v, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return Vec(c * v.x() - s * v.y(), s * v.x() + c * v.y());
}

Vec unit_at(double angle) { return Vec(std::cos(angle), std::sin(angle)); }

double normalize_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

double angle_of(const Vec& v) { return normalize_angle(std::atan2(v.y(), v.x())); }

double angle_ccw(const Point& x, const Point& y, const Point& z) {
    Vec a = x - y, b = z - y;
    return normalize_angle(std::atan2(cross(a, b), a.dot(b)));
}

Turn orient(const Point& a, const Point& b, const Point& c, double scale) {
    double area2 = cross(b - a, c - a);
    if (std::abs(area2) <= kTau * scale * scale) return Turn::Collinear;
    return area2 > 0 ? Turn::Left : Turn::Right;
}

double internal_angle(const Point& prev, const Point& v, const Point& next, double scale) {
    if (same_point(prev, v, scale) || same_point(next, v, scale) || same_point(prev, next, scale))
        throw DegenerateCorner("corner has coincident points");
    if (orient(prev, v, next, scale) != Turn::Left)
        throw DegenerateCorner("corner is not a strict left turn");
    return angle_ccw(next, v, prev);
}

bool same_point(const Point& a, const Point& b, double scale) {
    return (a - b).norm() <= kTau * scale;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : verts_(std::move(vertices)) {
    const std::size_t n = verts_.size();
    if (n < 3) throw DegeneratePolygon("polygon needs at least 3 vertices");
    for (const auto& p : verts_)
        if (!std::isfinite(p.x()) || !std::isfinite(p.y())) throw DegeneratePolygon("non-finite vertex");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) diameter_ = std::max(diameter_, (verts_[i] - verts_[j]).norm());
    if (diameter_ == 0.0) throw DegeneratePolygon("all vertices coincide");
    for (std::size_t i = 0; i < n; ++i) {
        if (orient(verts_[prev(i)], verts_[i], verts_[next(i)], diameter_) != Turn::Left)
            throw DegeneratePolygon("vertex " + std::to_string(i) + " is not a strict left turn");
    }
    // a strictly left-turning closed chain could still wind twice
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += kPi - angle_at(i);
    if (std::abs(total - kTwoPi) > 1e-6) throw DegeneratePolygon("vertex chain winds more than once");
}

double ConvexPolygon::angle_at(std::size_t i) const {
    return angle_ccw(verts_[next(i)], verts_[i], verts_[prev(i)]);
}

double ConvexPolygon::area() const {
    double a = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i) a += cross(verts_[i], verts_[next(i)]);
    return 0.5 * a;
}

Point ConvexPolygon::centroid() const {
    // shift to the first vertex for conditioning
    const Point o = verts_[0];
    double a = 0.0;
    Point c(0, 0);
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        Point p = verts_[i] - o, q = verts_[next(i)] - o;
        double w = cross(p, q);
        a += w;
        c += w * (p + q);
    }
    return o + c / (3.0 * a);
}

bool ConvexPolygon::contains(const Point& x, double slack) const {
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        Vec e = (verts_[next(i)] - verts_[i]).normalized();
        if (cross(e, x - verts_[i]) < -slack) return false;
    }
    return true;
}

std::optional<std::size_t> ConvexPolygon::vertex_near(const Point& x, double tol) const {
    std::optional<std::size_t> best;
    double bd = tol;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        double d = (verts_[i] - x).norm();
        if (d <= bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

std::vector<Point> convex_hull(std::vector<Point> pts, double tol) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(), [tol](const Point& a, const Point& b) { return (a - b).norm() <= tol; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    auto keep = [&](const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a) > tol * (c - a).norm(); };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && !keep(h[k - 2], h[k - 1], pts[i])) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && !keep(h[k - 2], h[k - 1], pts[i])) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double OmegaArc::span() const { return normalize_angle(end_angle - start_angle); }

Point OmegaArc::point_at(double angle) const { return center + radius * unit_at(angle); }

bool OmegaArc::covers_angle(double angle, double tol) const {
    double rel = normalize_angle(angle - start_angle);
    double s = span();
    return rel <= s + tol || rel >= kTwoPi - tol;
}

OmegaArc omega_arc(const Point& a, const Point& b, double omega) {
    Vec ab = b - a;
    double len = ab.norm();
    if (len == 0.0 || len <= kTau * std::max({1.0, a.norm(), b.norm()}) * 1e-3)
        throw CoincidentPoints("omega arc needs two distinct points");
    if (!(omega > 0.0 && omega <= kPi / 2 + kTauAngle)) throw InvalidOmega("omega outside (0, pi/2]");
    OmegaArc arc;
    Vec n = left_normal(ab / len);
    arc.center = 0.5 * (a + b) + n * (len / (2.0 * std::tan(omega)));
    arc.radius = len / (2.0 * std::sin(omega));
    arc.start_angle = angle_of(b - arc.center);
    arc.end_angle = angle_of(a - arc.center);
    arc.support_a = a;
    arc.support_b = b;
    return arc;
}

std::vector<ArcHit> line_arc_intersections(const DirectedLine& line, const OmegaArc& arc) {
    Vec oc = line.origin - arc.center;
    double b = line.direction.dot(oc);
    double c = oc.squaredNorm() - arc.radius * arc.radius;
    double disc = b * b - c;
    std::vector<ArcHit> out;
    const double r2 = arc.radius * arc.radius;
    const double ang_tol = kTauAngle + kTau;  // span filter slack
    auto push = [&](double t) {
        Point x = line.at(t);
        if (arc.covers_angle(angle_of(x - arc.center), ang_tol)) out.push_back({x, t});
    };
    if (std::abs(disc) <= 2.0 * kTau * r2) {
        push(-b);
    } else if (disc > 0) {
        double s = std::sqrt(disc);
        push(-b - s);
        push(-b + s);
    }
    return out;
}

std::vector<Point> clip_left(const std::vector<Point>& poly, const Point& on_line, const Vec& dir, double tol) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    auto side = [&](const Point& x) { return cross(dir, x - on_line); };
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        double sa = side(a), sb = side(b);
        bool ina = sa >= -tol, inb = sb >= -tol;
        if (ina) out.push_back(a);
        if (ina != inb) {
            double t = sa / (sa - sb);
            out.push_back(a + t * (b - a));
        }
    }
    // drop near-duplicates created at the cut
    std::vector<Point> clean;
    for (const auto& p : out)
        if (clean.empty() || (p - clean.back()).norm() > tol) clean.push_back(p);
    while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= tol) clean.pop_back();
    return clean;
}

bool FeasibleRegion::contains(const Point& x, double tol) const {
    if (empty || boundary.size() < 3) return false;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const Point& a = boundary[i];
        const Point& b = boundary[(i + 1) % boundary.size()];
        Vec e = b - a;
        double len = e.norm();
        if (len == 0.0) continue;
        if (cross(e / len, x - a) < -tol) return false;
    }
    return true;
}

double FeasibleRegion::area() const {
    double a = 0.0;
    for (std::size_t i = 0; i < boundary.size(); ++i) a += cross(boundary[i], boundary[(i + 1) % boundary.size()]);
    return 0.5 * a;
}

namespace {

FeasibleRegion clip_region(const std::vector<Point>& chain, const std::vector<Wedge>& wedges, double bound,
                           const std::vector<DirectedLine>& extra, const Point* edge_from, const Point* edge_to) {
    Point c(0, 0);
    for (const auto& p : chain) c += p;
    if (!chain.empty()) c /= static_cast<double>(chain.size());
    double scale = 0.0;
    for (const auto& p : chain) scale = std::max(scale, (p - c).norm());
    scale = std::max(scale, 1e-12);
    const double tol = kTau * scale;

    std::vector<Point> box = {c + Vec(-bound, -bound), c + Vec(bound, -bound), c + Vec(bound, bound),
                              c + Vec(-bound, bound)};
    std::vector<Point> poly = box;
    for (const auto& w : wedges) {
        poly = clip_left(poly, w.apex, w.dir1, tol);
        poly = clip_left(poly, w.apex, -w.dir2, tol);
    }
    for (const auto& l : extra) poly = clip_left(poly, l.origin, l.direction, tol);
    if (edge_from) {
        Vec d = (*edge_to - *edge_from).normalized();
        // outer side of a ccw edge is its right side
        poly = clip_left(poly, *edge_from, -d, tol);
    }

    FeasibleRegion r;
    r.boundary = poly;
    if (poly.empty()) {
        r.empty = true;
        return r;
    }
    for (const auto& p : poly) {
        if (std::abs(p.x() - c.x()) >= bound * (1 - 1e-9) || std::abs(p.y() - c.y()) >= bound * (1 - 1e-9)) {
            r.unbounded = true;
        }
    }
    double a = std::abs(r.area());
    double diam = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        for (std::size_t j = i + 1; j < poly.size(); ++j) diam = std::max(diam, (poly[i] - poly[j]).norm());
    if (poly.size() < 3 || a <= 1e-7 * scale * std::max(diam, scale)) r.degenerate = true;
    return r;
}

}  // namespace

FeasibleRegion feasible_region(const std::vector<Point>& chain, const std::vector<Wedge>& wedges, double bound,
                               const std::vector<DirectedLine>& extra) {
    return clip_region(chain, wedges, bound, extra, nullptr, nullptr);
}

FeasibleRegion feasible_edge_region(const std::vector<Point>& chain, std::size_t edge, const std::vector<Wedge>& wedges,
                                    double bound, const std::vector<DirectedLine>& extra) {
    if (chain.size() < 2 || edge >= chain.size()) throw InvalidParams("edge index out of range");
    const Point& a = chain[edge];
    const Point& b = chain[(edge + 1) % chain.size()];
    return clip_region(chain, wedges, bound, extra, &a, &b);
}

}  // namespace omegaprobe
