#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "circlepat/geometry.hpp"

namespace circlepat {

/// Chart coordinates: the Euclidean plane or the Poincare unit disk.
using Point = std::complex<double>;

/// One face developed into the chart, split at the common point of its
/// three circles into three center/center/intersection triangles.
struct PlacedFace {
    FaceId face = 0;
    std::array<VertexId, 3> vertices{};
    /// Edge on side k, running from corner k to corner k+1.
    std::array<EdgeId, 3> edges{};
    std::array<Point, 3> corners{};
    Point interstice{};
    /// Radius of the circle at each corner, in the background geometry.
    std::array<double, 3> radii{};
    /// Chart index of the face this one was attached to (-1 for the root).
    int parent = -1;
    /// Side of this face glued to the parent (-1 for the root).
    int entry_side = -1;
};

struct DevelopedLayout {
    Geometry geometry = Geometry::Euclidean;
    std::vector<PlacedFace> charts;
    /// Edges crossed by the face spanning tree.
    std::vector<EdgeId> tree_edges;
    /// Remaining edges; drawn but not identified in the chart.
    std::vector<EdgeId> seam_edges;
};

/// Distance between two chart points in the background geometry
/// (hyperbolic distance in the disk model).
[[nodiscard]] double chart_distance(Point p, Point q, Geometry geometry);

/// Breadth-first development over the face adjacency spanning tree rooted
/// at face 0. The root's first corner lands on the origin and its first
/// side along the positive real axis; hyperbolic placement uses Moebius
/// isometries of the unit disk. Throws DomainError if a triangle degenerates.
[[nodiscard]] DevelopedLayout develop(const SurfaceComplex& complex, const AngleAssignment& angles,
                                      const RadiusVector& r, Geometry geometry);

/// Result of developing all faces around one vertex in turn.
struct StarClosure {
    /// Angle between the first spoke and its image after a full turn, in (-pi, pi].
    double angle_error = 0.0;
    /// Distance the vertex itself moved over the turn.
    double vertex_drift = 0.0;
    int corners = 0;
};

/// Develops the star of v face by face (vertex at the origin) and measures
/// how far the last placement misses the first one. For K_v = 0 it closes.
[[nodiscard]] StarClosure develop_star(const SurfaceComplex& complex, const AngleAssignment& angles,
                                       const RadiusVector& r, Geometry geometry, VertexId v);

struct SvgOptions {
    double scale = 200.0;  ///< pixels per chart unit
    double stroke_width = 1.0;
    double padding = 20.0;
    bool draw_circles = true;
};

/// Standalone SVG 1.1 drawing: one <circle> per developed vertex instance,
/// face sides (seams dashed), and spokes to the intersection points.
/// Hyperbolic circles and geodesics are drawn as their exact Euclidean
/// images in the disk. Output is deterministic.
[[nodiscard]] std::string to_svg(const DevelopedLayout& layout, const SvgOptions& options = {});

}  // namespace circlepat
