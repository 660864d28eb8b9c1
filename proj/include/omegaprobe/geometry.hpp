#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <vector>

#include "omegaprobe/errors.hpp"

namespace omegaprobe {

using Point = Eigen::Vector2d;
using Vec = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// relative length tolerance and absolute angular tolerance
inline constexpr double kTau = 1e-9;
inline constexpr double kTauAngle = 1e-9;

struct DirectedLine {
    Point origin;
    Vec direction;  // unit

    static DirectedLine through(const Point& from, const Point& to);
    static DirectedLine make(const Point& origin, const Vec& dir);
    Point at(double t) const { return origin + t * direction; }
    double param(const Point& x) const { return (x - origin).dot(direction); }
};

enum class Turn { Right = -1, Collinear = 0, Left = 1 };

inline double cross(const Vec& a, const Vec& b) { return a.x() * b.y() - a.y() * b.x(); }
inline Vec left_normal(const Vec& v) { return Vec(-v.y(), v.x()); }
inline Vec right_normal(const Vec& v) { return Vec(v.y(), -v.x()); }
Vec rotate(const Vec& v, double angle);
Vec unit_at(double angle);

double normalize_angle(double a);  // into [0, 2pi)
double angle_of(const Vec& v);     // [0, 2pi)

// ccw angle at y, sweeping from ray y->x to ray y->z, in [0, 2pi)
double angle_ccw(const Point& x, const Point& y, const Point& z);

Turn orient(const Point& a, const Point& b, const Point& c, double scale = 1.0);

// angle at v of a ccw corner prev, v, next
double internal_angle(const Point& prev, const Point& v, const Point& next, double scale = 1.0);

bool same_point(const Point& a, const Point& b, double scale);

class ConvexPolygon {
public:
    ConvexPolygon() = default;
    // vertices must be ccw and strictly convex, else DegeneratePolygon
    explicit ConvexPolygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    const Point& operator[](std::size_t i) const { return verts_[i]; }
    std::size_t next(std::size_t i) const { return (i + 1) % verts_.size(); }
    std::size_t prev(std::size_t i) const { return (i + verts_.size() - 1) % verts_.size(); }

    double angle_at(std::size_t i) const;
    double diameter() const { return diameter_; }
    Point centroid() const;
    double area() const;
    bool contains(const Point& x, double slack = 0.0) const;
    std::optional<std::size_t> vertex_near(const Point& x, double tol) const;

private:
    std::vector<Point> verts_;
    double diameter_ = 0.0;
};

// Andrew monotone chain; collinear points dropped; ccw output
std::vector<Point> convex_hull(std::vector<Point> pts, double tol = 0.0);

// Circular arc from which chord (a, b) subtends the inscribed angle omega.
// Runs ccw from b to a; a sits under the right arm of any wedge whose apex is on it.
struct OmegaArc {
    Point center;
    double radius = 0.0;
    double start_angle = 0.0;  // normalized
    double end_angle = 0.0;    // normalized; the arc is the ccw sweep start -> end
    Point support_a;
    Point support_b;
    int support_a_index = -1;
    int support_b_index = -1;

    double span() const;
    Point point_at(double angle) const;
    Point start_point() const { return point_at(start_angle); }
    Point end_point() const { return point_at(end_angle); }
    bool covers_angle(double angle, double tol = kTauAngle) const;
};

OmegaArc omega_arc(const Point& a, const Point& b, double omega);

struct ArcHit {
    Point point;
    double t;
};

std::vector<ArcHit> line_arc_intersections(const DirectedLine& line, const OmegaArc& arc);

// convex polygon clipping; keeps the closed left side of the directed line
std::vector<Point> clip_left(const std::vector<Point>& poly, const Point& on_line, const Vec& dir, double tol);

struct Wedge {
    Point apex;
    Vec dir1;  // right arm
    Vec dir2;  // left arm, ccw from dir1
};

struct FeasibleRegion {
    std::vector<Point> boundary;  // ccw; two points when collapsed to a segment
    bool unbounded = false;
    bool degenerate = false;
    bool empty = false;

    bool contains(const Point& x, double tol) const;
    double area() const;
};

// Intersection of the answered wedges (plus optional extra half-planes given as
// left sides of directed lines), inside a square of half-width bound around the
// chain's centroid. The chain is the known ccw vertex list of Q.
FeasibleRegion feasible_region(const std::vector<Point>& chain,
                               const std::vector<Wedge>& wedges,
                               double bound,
                               const std::vector<DirectedLine>& extra = {});

// Same, clipped to the outer side of edge (chain[edge], chain[edge+1]).
FeasibleRegion feasible_edge_region(const std::vector<Point>& chain, std::size_t edge,
                                    const std::vector<Wedge>& wedges,
                                    double bound,
                                    const std::vector<DirectedLine>& extra = {});

}  // namespace omegaprobe
