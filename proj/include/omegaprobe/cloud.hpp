#pragma once

#include <vector>

#include "omegaprobe/geometry.hpp"

namespace omegaprobe {

struct OmegaCloud {
    double omega = 0.0;
    std::vector<OmegaArc> arcs;        // ccw chain
    std::vector<Point> pivots;         // pivots[k] is where arcs[k] starts
    std::vector<Point> on_polygon_pivots;
    std::vector<int> on_polygon_vertices;  // polygon indices matching on_polygon_pivots
};

void check_omega(double omega);

OmegaCloud build_cloud(const ConvexPolygon& poly, double omega);

std::vector<int> narrow_vertices(const ConvexPolygon& poly, double omega);
int count_narrow(const ConvexPolygon& poly, double omega);

// Index of the polygon vertex touched by a supporting line with direction
// angle theta that keeps the polygon on its left.
class SupportFinder {
public:
    explicit SupportFinder(const ConvexPolygon& poly);
    int operator()(double theta) const;
    const std::vector<double>& edge_angles() const { return edge_angle_; }

private:
    std::vector<double> edge_angle_;   // angle of edge i -> i+1
    std::vector<double> sorted_;
    int first_ = 0;
};

}  // namespace omegaprobe
