#include "circlepat/surface_complex.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace circlepat {

namespace {

std::string face_label(FaceId f) { return "face " + std::to_string(f); }
std::string edge_label(EdgeId e) { return "edge " + std::to_string(e); }

// Minimal union-find for the connectivity check.
struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& p = parent[static_cast<std::size_t>(x)];
            p = parent[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

SurfaceComplex::SurfaceComplex(int num_vertices, std::vector<Edge> edges, std::vector<Face> faces,
                               std::string name)
    : num_vertices_(num_vertices), edges_(std::move(edges)), faces_(std::move(faces)), name_(std::move(name)) {
    if (num_vertices_ < 1) throw IndexError("complex needs at least one vertex");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.tail < 0 || ed.tail >= num_vertices_ || ed.head < 0 || ed.head >= num_vertices_)
            throw IndexError(edge_label(static_cast<EdgeId>(e)) + " references a vertex out of range");
    }
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        for (const DirectedEdge& d : faces_[f]) {
            if (d.edge < 0 || d.edge >= num_edges())
                throw IndexError(face_label(static_cast<FaceId>(f)) + " references edge " +
                                 std::to_string(d.edge) + " out of range");
            if (d.direction != 1 && d.direction != -1)
                throw IndexError(face_label(static_cast<FaceId>(f)) + " has direction " +
                                 std::to_string(d.direction) + " (expected +1 or -1)");
        }
    }

    // Incident edge ends, grouped by vertex in edge order (tail before head).
    const auto n = static_cast<std::size_t>(num_vertices_);
    end_offsets_.assign(n + 1, 0);
    for (const Edge& ed : edges_) {
        ++end_offsets_[static_cast<std::size_t>(ed.tail) + 1];
        ++end_offsets_[static_cast<std::size_t>(ed.head) + 1];
    }
    std::partial_sum(end_offsets_.begin(), end_offsets_.end(), end_offsets_.begin());
    ends_.resize(2 * edges_.size());
    std::vector<int> fill(end_offsets_.begin(), end_offsets_.end() - 1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto id = static_cast<EdgeId>(e);
        ends_[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges_[e].tail)]++)] = {id, End::Tail};
        ends_[static_cast<std::size_t>(fill[static_cast<std::size_t>(edges_[e].head)]++)] = {id, End::Head};
    }

    side_offsets_.assign(edges_.size() + 1, 0);
    for (const Face& face : faces_)
        for (const DirectedEdge& d : face) ++side_offsets_[static_cast<std::size_t>(d.edge) + 1];
    std::partial_sum(side_offsets_.begin(), side_offsets_.end(), side_offsets_.begin());
    sides_.resize(3 * faces_.size());
    fill.assign(side_offsets_.begin(), side_offsets_.end() - 1);
    for (std::size_t f = 0; f < faces_.size(); ++f)
        for (int k = 0; k < 3; ++k) {
            const auto e = static_cast<std::size_t>(faces_[f][static_cast<std::size_t>(k)].edge);
            sides_[static_cast<std::size_t>(fill[e]++)] = {static_cast<FaceId>(f), k};
        }
}

std::span<const EdgeEnd> SurfaceComplex::incident_edge_ends(VertexId v) const {
    if (v < 0 || v >= num_vertices_) throw IndexError("vertex " + std::to_string(v) + " out of range");
    const auto b = static_cast<std::size_t>(end_offsets_[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(end_offsets_[static_cast<std::size_t>(v) + 1]);
    return std::span<const EdgeEnd>(ends_).subspan(b, e - b);
}

std::span<const SideRef> SurfaceComplex::edge_sides(EdgeId e) const {
    if (e < 0 || e >= num_edges()) throw IndexError(edge_label(e) + " out of range");
    const auto b = static_cast<std::size_t>(side_offsets_[static_cast<std::size_t>(e)]);
    const auto end = static_cast<std::size_t>(side_offsets_[static_cast<std::size_t>(e) + 1]);
    return std::span<const SideRef>(sides_).subspan(b, end - b);
}

SideRef SurfaceComplex::mate(SideRef s) const {
    const EdgeId e = face(s.face)[static_cast<std::size_t>(s.side)].edge;
    const auto sides = edge_sides(e);
    if (sides.size() != 2) throw InvalidComplexError(edge_label(e) + " is not shared by exactly two face sides", {});
    return sides[0] == s ? sides[1] : sides[0];
}

AngleAssignment::AngleAssignment(std::vector<double> theta) : theta_(std::move(theta)) {
    for (std::size_t e = 0; e < theta_.size(); ++e) {
        const double t = theta_[e];
        if (!(t > 0.0 && t < std::numbers::pi))
            throw DomainError("theta of " + edge_label(static_cast<EdgeId>(e)) + " = " + std::to_string(t) +
                              " is outside (0, pi)");
    }
}

ValidationReport validate_structure(const SurfaceComplex& complex) {
    ValidationReport report;
    report.euler_characteristic = complex.euler_characteristic();
    auto& out = report.violations;

    for (FaceId f = 0; f < complex.num_faces(); ++f) {
        const Face& face = complex.face(f);
        for (int k = 0; k < 3; ++k) {
            const auto& cur = face[static_cast<std::size_t>(k)];
            const auto& next = face[static_cast<std::size_t>((k + 1) % 3)];
            if (complex.side_head(cur) != complex.side_tail(next))
                out.push_back(face_label(f) + ": side " + std::to_string(k) + " ends at vertex " +
                              std::to_string(complex.side_head(cur)) + " but side " +
                              std::to_string((k + 1) % 3) + " starts at vertex " +
                              std::to_string(complex.side_tail(next)));
        }
    }

    for (EdgeId e = 0; e < complex.num_edges(); ++e) {
        const auto sides = complex.edge_sides(e);
        if (sides.size() != 2) {
            out.push_back(edge_label(e) + " appears in " + std::to_string(sides.size()) +
                          " face sides (a closed surface needs exactly 2)");
            continue;
        }
        const int d0 = complex.face(sides[0].face)[static_cast<std::size_t>(sides[0].side)].direction;
        const int d1 = complex.face(sides[1].face)[static_cast<std::size_t>(sides[1].side)].direction;
        if (d0 == d1)
            out.push_back(edge_label(e) + " is traversed in the same direction by " + face_label(sides[0].face) +
                          " and " + face_label(sides[1].face) + " (orientation inconsistent)");
    }

    DisjointSets components(complex.num_vertices());
    for (const Edge& ed : complex.edges()) components.unite(ed.tail, ed.head);
    const int root = components.find(0);
    for (VertexId v = 1; v < complex.num_vertices(); ++v)
        if (components.find(v) != root) out.push_back("vertex " + std::to_string(v) + " is not connected to vertex 0");

    report.ok = out.empty();
    return report;
}

ValidationReport validate(const SurfaceComplex& complex, Geometry geometry) {
    ValidationReport report = validate_structure(complex);
    const int chi = report.euler_characteristic;
    if (geometry == Geometry::Hyperbolic && chi >= 0)
        report.violations.push_back("chi must be negative for hyperbolic background geometry (chi = " +
                                    std::to_string(chi) + ")");
    if (geometry == Geometry::Euclidean && chi != 0)
        report.violations.push_back("chi must be zero for Euclidean background geometry (chi = " +
                                    std::to_string(chi) + ")");
    report.ok = report.violations.empty();
    return report;
}

std::vector<double> check_c1(const SurfaceComplex& complex, const AngleAssignment& angles) {
    if (angles.size() != static_cast<std::size_t>(complex.num_edges()))
        throw IndexError("angle assignment has " + std::to_string(angles.size()) + " entries for " +
                         std::to_string(complex.num_edges()) + " edges");
    std::vector<double> deviation;
    deviation.reserve(static_cast<std::size_t>(complex.num_faces()));
    for (const Face& face : complex.faces())
        deviation.push_back(angles[face[0].edge] + angles[face[1].edge] + angles[face[2].edge] - std::numbers::pi);
    return deviation;
}

bool satisfies_c1(std::span<const double> deviations, double tol) {
    for (double d : deviations)
        if (!(std::abs(d) < tol)) return false;
    return true;
}

MeshDocument load_complex(std::string_view document) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("mesh is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("mesh document must be a JSON object");

    try {
        const int n = doc.at("num_vertices").get<int>();

        std::vector<Edge> edges;
        for (const auto& item : doc.at("edges")) {
            if (!item.is_array() || item.size() != 2) throw ParseError("each edge must be a [tail, head] pair");
            edges.push_back({item[0].get<int>(), item[1].get<int>()});
        }

        std::vector<Face> faces;
        std::vector<std::string> shape_problems;
        for (const auto& item : doc.at("faces")) {
            if (!item.is_array()) throw ParseError("each face must be an array of [edge, direction] pairs");
            if (item.size() != 3) {
                shape_problems.push_back(face_label(static_cast<FaceId>(faces.size())) + " has " +
                                         std::to_string(item.size()) +
                                         " sides; only triangular faces are supported");
                faces.push_back({});
                continue;
            }
            Face face;
            for (std::size_t k = 0; k < 3; ++k) {
                const auto& side = item[k];
                if (!side.is_array() || side.size() != 2)
                    throw ParseError("each face side must be an [edge, direction] pair");
                face[k] = {side[0].get<int>(), side[1].get<int>()};
            }
            faces.push_back(face);
        }
        if (!shape_problems.empty()) throw InvalidComplexError("mesh is not a triangulation", shape_problems);

        std::string name = doc.value("name", std::string{});
        SurfaceComplex complex(n, std::move(edges), std::move(faces), std::move(name));

        ValidationReport report = validate_structure(complex);
        if (!report.ok)
            throw InvalidComplexError("mesh is not a closed oriented connected surface", report.violations);

        std::optional<AngleAssignment> theta;
        if (doc.contains("theta")) {
            auto values = doc.at("theta").get<std::vector<double>>();
            if (values.size() != static_cast<std::size_t>(complex.num_edges()))
                throw IndexError("theta has " + std::to_string(values.size()) + " entries for " +
                                 std::to_string(complex.num_edges()) + " edges");
            theta = AngleAssignment(std::move(values));
        }
        return {std::move(complex), std::move(theta)};
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed mesh document: ") + e.what());
    }
}

MeshDocument load_complex_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open mesh file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_complex(buf.str());
}

std::string dump_complex(const SurfaceComplex& complex, const std::optional<AngleAssignment>& theta) {
    nlohmann::ordered_json doc;
    if (!complex.name().empty()) doc["name"] = complex.name();
    doc["num_vertices"] = complex.num_vertices();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : complex.edges()) edges.push_back({e.tail, e.head});
    doc["edges"] = std::move(edges);
    auto faces = nlohmann::ordered_json::array();
    for (const Face& f : complex.faces()) {
        auto sides = nlohmann::ordered_json::array();
        for (const DirectedEdge& d : f) sides.push_back({d.edge, d.direction});
        faces.push_back(std::move(sides));
    }
    doc["faces"] = std::move(faces);
    if (theta) doc["theta"] = theta->values();
    return doc.dump(2) + "\n";
}

}  // namespace circlepat
