#include "circlepat/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <queue>
#include <set>

namespace circlepat {

namespace {

// Orientation-preserving isometry sending a to 0 and b to the positive real axis.
struct Frame {
    Point origin;
    Point rotation;  // unit complex number
    Geometry geometry;

    static Frame through(Point a, Point b, Geometry g) {
        Frame f{a, Point(1.0, 0.0), g};
        const Point w = f.forward(b);
        if (std::abs(w) == 0.0) throw DomainError("degenerate edge while developing the layout");
        f.rotation = w / std::abs(w);
        return f;
    }

    [[nodiscard]] Point forward(Point z) const {
        const Point shifted = geometry == Geometry::Euclidean ? z - origin : (z - origin) / (1.0 - std::conj(origin) * z);
        return shifted / rotation;
    }

    [[nodiscard]] Point inverse(Point w) const {
        const Point z = w * rotation;
        return geometry == Geometry::Euclidean ? z + origin : (z + origin) / (1.0 + std::conj(origin) * z);
    }
};

// Chart distance from the origin of a point at geometric distance d.
double chart_radius(double d, Geometry g) { return g == Geometry::Euclidean ? d : std::tanh(0.5 * d); }

class Developer {
public:
    Developer(const SurfaceComplex& complex, const AngleAssignment& angles, const RadiusVector& r, Geometry g)
        : complex_(complex), angles_(angles), r_(r), g_(g) {
        if (angles.size() != static_cast<std::size_t>(complex.num_edges()))
            throw IndexError("angle assignment does not match the edge count");
        if (r.size() != complex.num_vertices()) throw IndexError("radius vector does not match the vertex count");
    }

    // Places face f given the chart positions of corners m and m+1.
    [[nodiscard]] PlacedFace place(FaceId f, int m, Point a, Point b) const {
        const Face& face = complex_.face(f);
        PlacedFace out;
        out.face = f;
        for (int k = 0; k < 3; ++k) {
            out.vertices[static_cast<std::size_t>(k)] = complex_.corner(f, k);
            out.edges[static_cast<std::size_t>(k)] = face[static_cast<std::size_t>(k)].edge;
            out.radii[static_cast<std::size_t>(k)] = r_[complex_.corner(f, k)];
        }
        const auto i0 = static_cast<std::size_t>(m);
        const auto i1 = static_cast<std::size_t>((m + 1) % 3);
        const auto i2 = static_cast<std::size_t>((m + 2) % 3);
        const double r0 = out.radii[i0];
        const double r1 = out.radii[i1];
        const double r2 = out.radii[i2];
        const double theta_entry = angles_[face[i0].edge];
        const double theta_back = angles_[face[i2].edge];

        // Angles at corner m measured from side m towards the face interior.
        const double to_interstice = center_angle(r0, r1, theta_entry, g_);
        const double to_far_corner = to_interstice + center_angle(r0, r2, theta_back, g_);
        const double far_length = edge_length(r0, r2, theta_back, g_);

        const Frame frame = Frame::through(a, b, g_);
        out.corners[i0] = a;
        out.corners[i1] = b;
        out.corners[i2] = frame.inverse(std::polar(chart_radius(far_length, g_), to_far_corner));
        out.interstice = frame.inverse(std::polar(chart_radius(r0, g_), to_interstice));
        return out;
    }

    [[nodiscard]] PlacedFace place_root(FaceId f, int m) const {
        const Face& face = complex_.face(f);
        const double l = edge_length(r_[complex_.corner(f, m)], r_[complex_.corner(f, (m + 1) % 3)],
                                     angles_[face[static_cast<std::size_t>(m)].edge], g_);
        return place(f, m, Point(0.0, 0.0), Point(chart_radius(l, g_), 0.0));
    }

    // Places the face across side k of `from`, keeping the shared side.
    [[nodiscard]] PlacedFace place_across(const PlacedFace& from, int k, SideRef& across) const {
        across = complex_.mate({from.face, k});
        // The shared edge runs the other way in the neighbor.
        const Point a = from.corners[static_cast<std::size_t>((k + 1) % 3)];
        const Point b = from.corners[static_cast<std::size_t>(k)];
        return place(across.face, across.side, a, b);
    }

private:
    const SurfaceComplex& complex_;
    const AngleAssignment& angles_;
    const RadiusVector& r_;
    Geometry g_;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    // Avoid "-0.000000" so equal drawings produce equal bytes.
    if (std::string_view(buf) == "-0.000000") return "0.000000";
    return buf;
}

struct Canvas {
    double scale;
    double min_x;
    double max_y;
    double padding;

    [[nodiscard]] std::string x(double v) const { return fmt(padding + scale * (v - min_x)); }
    [[nodiscard]] std::string y(double v) const { return fmt(padding + scale * (max_y - v)); }
    [[nodiscard]] std::string len(double v) const { return fmt(scale * v); }
};

// Euclidean image of a hyperbolic circle in the disk model.
std::pair<Point, double> disk_circle(Point center, double radius) {
    const double rho = std::abs(center);
    const double d = 2.0 * std::atanh(rho);
    const double far = std::tanh(0.5 * (d + radius));
    const double near = std::tanh(0.5 * (d - radius));
    const Point dir = rho > 0.0 ? center / rho : Point(1.0, 0.0);
    return {0.5 * (far + near) * dir, 0.5 * (far - near)};
}

std::string segment_path(const Canvas& c, Point p, Point q, Geometry g) {
    std::string d = "M " + c.x(p.real()) + " " + c.y(p.imag()) + " ";
    const double cross = p.real() * q.imag() - p.imag() * q.real();
    if (g == Geometry::Euclidean || std::abs(cross) < 1e-12) return d + "L " + c.x(q.real()) + " " + c.y(q.imag());
    // Geodesic: the circle through p and q orthogonal to the unit circle,
    // i.e. 2 Re(conj(center) z) = |z|^2 + 1 for z in {p, q}.
    const double bp = 0.5 * (std::norm(p) + 1.0);
    const double bq = 0.5 * (std::norm(q) + 1.0);
    const double det = p.real() * q.imag() - p.imag() * q.real();
    const Point center((bp * q.imag() - bq * p.imag()) / det, (p.real() * bq - q.real() * bp) / det);
    const double radius = std::sqrt(std::norm(center) - 1.0);
    const Point from = p - center;
    const Point to = q - center;
    const int sweep = (from.real() * to.imag() - from.imag() * to.real()) > 0.0 ? 1 : 0;
    return d + "A " + c.len(radius) + " " + c.len(radius) + " 0 0 " + std::to_string(sweep) + " " + c.x(q.real()) +
           " " + c.y(q.imag());
}

}  // namespace

double chart_distance(Point p, Point q, Geometry geometry) {
    if (geometry == Geometry::Euclidean) return std::abs(p - q);
    return 2.0 * std::atanh(std::abs(p - q) / std::abs(1.0 - std::conj(p) * q));
}

DevelopedLayout develop(const SurfaceComplex& complex, const AngleAssignment& angles, const RadiusVector& r,
                        Geometry geometry) {
    const Developer dev(complex, angles, r, geometry);
    DevelopedLayout layout;
    layout.geometry = geometry;
    if (complex.num_faces() == 0) return layout;

    std::vector<char> placed(static_cast<std::size_t>(complex.num_faces()), 0);
    std::vector<char> tree(static_cast<std::size_t>(complex.num_edges()), 0);
    std::queue<int> frontier;

    layout.charts.push_back(dev.place_root(0, 0));
    placed[0] = 1;
    frontier.push(0);
    while (!frontier.empty()) {
        const int index = frontier.front();
        frontier.pop();
        for (int k = 0; k < 3; ++k) {
            const SideRef across = complex.mate({layout.charts[static_cast<std::size_t>(index)].face, k});
            if (placed[static_cast<std::size_t>(across.face)]) continue;
            SideRef unused;
            PlacedFace child = dev.place_across(layout.charts[static_cast<std::size_t>(index)], k, unused);
            child.parent = index;
            child.entry_side = across.side;
            placed[static_cast<std::size_t>(across.face)] = 1;
            tree[static_cast<std::size_t>(complex.face(across.face)[static_cast<std::size_t>(across.side)].edge)] = 1;
            layout.charts.push_back(child);
            frontier.push(static_cast<int>(layout.charts.size()) - 1);
        }
    }
    for (EdgeId e = 0; e < complex.num_edges(); ++e)
        (tree[static_cast<std::size_t>(e)] ? layout.tree_edges : layout.seam_edges).push_back(e);
    return layout;
}

StarClosure develop_star(const SurfaceComplex& complex, const AngleAssignment& angles, const RadiusVector& r,
                         Geometry geometry, VertexId v) {
    if (v < 0 || v >= complex.num_vertices()) throw IndexError("vertex " + std::to_string(v) + " out of range");
    const Developer dev(complex, angles, r, geometry);

    SideRef start{-1, 0};
    for (FaceId f = 0; f < complex.num_faces() && start.face < 0; ++f)
        for (int k = 0; k < 3; ++k)
            if (complex.corner(f, k) == v) {
                start = {f, k};
                break;
            }
    if (start.face < 0) throw IndexError("vertex " + std::to_string(v) + " has no incident face");

    // Corner (f, c) leaves v along side c; turning across that side lands on
    // corner q+1 of the neighbor, where (g, q) is the mate of (f, c).
    const PlacedFace first = dev.place_root(start.face, start.side);
    const Point spoke = first.corners[static_cast<std::size_t>((start.side + 1) % 3)];
    PlacedFace current = first;
    SideRef corner = start;
    StarClosure out;
    const int limit = 3 * complex.num_faces();
    while (true) {
        SideRef across;
        PlacedFace next = dev.place_across(current, corner.side, across);
        ++out.corners;
        corner = {across.face, (across.side + 1) % 3};
        current = std::move(next);
        if (corner == start || out.corners > limit) break;
    }
    const Point image = current.corners[static_cast<std::size_t>((start.side + 1) % 3)];
    out.vertex_drift = std::abs(current.corners[static_cast<std::size_t>(start.side)]);
    out.angle_error = std::arg(image / spoke);
    return out;
}

std::string to_svg(const DevelopedLayout& layout, const SvgOptions& options) {
    const Geometry g = layout.geometry;
    double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
    if (g == Geometry::Hyperbolic) {
        min_x = min_y = -1.0;
        max_x = max_y = 1.0;
    } else if (!layout.charts.empty()) {
        min_x = min_y = std::numeric_limits<double>::infinity();
        max_x = max_y = -std::numeric_limits<double>::infinity();
        auto grow = [&](Point p, double extent) {
            min_x = std::min(min_x, p.real() - extent);
            max_x = std::max(max_x, p.real() + extent);
            min_y = std::min(min_y, p.imag() - extent);
            max_y = std::max(max_y, p.imag() + extent);
        };
        for (const PlacedFace& pf : layout.charts) {
            for (std::size_t k = 0; k < 3; ++k) grow(pf.corners[k], options.draw_circles ? pf.radii[k] : 0.0);
            grow(pf.interstice, 0.0);
        }
    }

    const Canvas c{options.scale, min_x, max_y, options.padding};
    const std::string width = fmt(2.0 * options.padding + options.scale * (max_x - min_x));
    const std::string height = fmt(2.0 * options.padding + options.scale * (max_y - min_y));
    const std::string stroke = fmt(options.stroke_width);
    const std::string thin = fmt(0.5 * options.stroke_width);

    std::set<EdgeId> seams(layout.seam_edges.begin(), layout.seam_edges.end());

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + width + "\" height=\"" + height +
           "\" viewBox=\"0 0 " + width + " " + height + "\">\n";
    svg += "<g fill=\"none\" stroke-linecap=\"round\">\n";

    if (g == Geometry::Hyperbolic && !layout.charts.empty()) {
        // Disk boundary as a path so that <circle> elements are only vertex circles.
        svg += "<path class=\"boundary\" stroke=\"#999999\" stroke-width=\"" + thin + "\" d=\"M " + c.x(-1.0) + " " +
               c.y(0.0) + " A " + c.len(1.0) + " " + c.len(1.0) + " 0 1 0 " + c.x(1.0) + " " + c.y(0.0) + " A " +
               c.len(1.0) + " " + c.len(1.0) + " 0 1 0 " + c.x(-1.0) + " " + c.y(0.0) + "\"/>\n";
    }

    for (const PlacedFace& pf : layout.charts) {
        svg += "<g class=\"face\" data-face=\"" + std::to_string(pf.face) + "\">\n";
        if (options.draw_circles) {
            for (std::size_t k = 0; k < 3; ++k) {
                Point center = pf.corners[k];
                double radius = pf.radii[k];
                if (g == Geometry::Hyperbolic) std::tie(center, radius) = disk_circle(center, radius);
                svg += "<circle cx=\"" + c.x(center.real()) + "\" cy=\"" + c.y(center.imag()) + "\" r=\"" +
                       c.len(radius) + "\" stroke=\"#3366cc\" stroke-width=\"" + thin + "\" data-vertex=\"" +
                       std::to_string(pf.vertices[k]) + "\"/>\n";
            }
        }
        for (std::size_t k = 0; k < 3; ++k)
            svg += "<path class=\"spoke\" stroke=\"#aaaaaa\" stroke-width=\"" + thin + "\" d=\"" +
                   segment_path(c, pf.interstice, pf.corners[k], g) + "\"/>\n";
        for (std::size_t k = 0; k < 3; ++k) {
            const bool seam = seams.count(pf.edges[k]) > 0;
            svg += std::string("<path class=\"") + (seam ? "seam" : "edge") + "\" stroke=\"#222222\" stroke-width=\"" +
                   stroke + "\"" + (seam ? " stroke-dasharray=\"6 4\"" : "") + " data-edge=\"" +
                   std::to_string(pf.edges[k]) + "\" d=\"" + segment_path(c, pf.corners[k], pf.corners[(k + 1) % 3], g) +
                   "\"/>\n";
        }
        svg += "</g>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace circlepat
