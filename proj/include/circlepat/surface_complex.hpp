#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circlepat/error.hpp"
#include "circlepat/types.hpp"

namespace circlepat {

using VertexId = int;
using EdgeId = int;
using FaceId = int;

struct Edge {
    VertexId tail = 0;
    VertexId head = 0;

    [[nodiscard]] bool is_loop() const noexcept { return tail == head; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// One side of a face: an edge traversed forward (+1) or backward (-1).
struct DirectedEdge {
    EdgeId edge = 0;
    int direction = 1;

    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

using Face = std::array<DirectedEdge, 3>;

enum class End { Tail, Head };

/// An edge seen from one of its endpoints. Self-loops produce two of these
/// at the same vertex.
struct EdgeEnd {
    EdgeId edge = 0;
    End end = End::Tail;

    friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

/// Position of a face side: face id and side index 0..2.
struct SideRef {
    FaceId face = 0;
    int side = 0;

    friend bool operator==(const SideRef&, const SideRef&) = default;
};

/// Structural problems in a complex, thrown by load_complex.
class InvalidComplexError : public Error {
public:
    InvalidComplexError(const std::string& what, std::vector<std::string> violations)
        : Error(what), violations_(std::move(violations)) {}
    [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Delta-complex triangulation of a closed oriented surface.
///
/// Faces are stored as cycles of directed edges rather than vertex triples,
/// so self-loops and multiple edges between a vertex pair are representable.
/// The constructor only checks that indices are in range; the surface
/// invariants are checked by validate(). Immutable after construction.
class SurfaceComplex {
public:
    SurfaceComplex(int num_vertices, std::vector<Edge> edges, std::vector<Face> faces,
                   std::string name = {});

    [[nodiscard]] int num_vertices() const noexcept { return num_vertices_; }
    [[nodiscard]] int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
    [[nodiscard]] int num_faces() const noexcept { return static_cast<int>(faces_.size()); }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<Face>& faces() const noexcept { return faces_; }
    [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    [[nodiscard]] const Face& face(FaceId f) const { return faces_.at(static_cast<std::size_t>(f)); }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

    /// N - E + F.
    [[nodiscard]] int euler_characteristic() const noexcept {
        return num_vertices() - num_edges() + num_faces();
    }

    /// Every (edge, end) pair sitting at v; a self-loop at v contributes both ends.
    [[nodiscard]] std::span<const EdgeEnd> incident_edge_ends(VertexId v) const;

    /// Face sides at which edge e appears (two on a valid closed surface).
    [[nodiscard]] std::span<const SideRef> edge_sides(EdgeId e) const;

    [[nodiscard]] VertexId side_tail(const DirectedEdge& d) const {
        const Edge& e = edge(d.edge);
        return d.direction > 0 ? e.tail : e.head;
    }
    [[nodiscard]] VertexId side_head(const DirectedEdge& d) const {
        const Edge& e = edge(d.edge);
        return d.direction > 0 ? e.head : e.tail;
    }

    /// Vertex at corner k of face f, i.e. the tail of side k.
    [[nodiscard]] VertexId corner(FaceId f, int k) const { return side_tail(face(f)[static_cast<std::size_t>(k)]); }

    /// The other occurrence of the edge on side (f, k); requires a valid complex.
    [[nodiscard]] SideRef mate(SideRef s) const;

    friend bool operator==(const SurfaceComplex& a, const SurfaceComplex& b) {
        return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_ &&
               a.faces_ == b.faces_ && a.name_ == b.name_;
    }

private:
    int num_vertices_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::string name_;
    // CSR-style incidence caches.
    std::vector<int> end_offsets_;
    std::vector<EdgeEnd> ends_;
    std::vector<int> side_offsets_;
    std::vector<SideRef> sides_;
};

/// Exterior intersection angle per edge, radians, each in (0, pi).
class AngleAssignment {
public:
    AngleAssignment() = default;
    /// Throws DomainError if any angle lies outside (0, pi).
    explicit AngleAssignment(std::vector<double> theta);

    [[nodiscard]] std::size_t size() const noexcept { return theta_.size(); }
    [[nodiscard]] double operator[](EdgeId e) const { return theta_[static_cast<std::size_t>(e)]; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return theta_; }

private:
    std::vector<double> theta_;
};

struct ValidationReport {
    bool ok = true;
    int euler_characteristic = 0;
    std::vector<std::string> violations;
};

/// Checks closedness, orientability, face walks, connectivity and the
/// genus required by the geometry (chi < 0 hyperbolic, chi == 0 Euclidean).
[[nodiscard]] ValidationReport validate(const SurfaceComplex& complex, Geometry geometry);

/// Same structural checks without the genus requirement.
[[nodiscard]] ValidationReport validate_structure(const SurfaceComplex& complex);

/// Per-face deviation of the angle sum from pi. Throws IndexError on size mismatch.
[[nodiscard]] std::vector<double> check_c1(const SurfaceComplex& complex, const AngleAssignment& angles);

inline constexpr double kC1Tolerance = 1e-12;

[[nodiscard]] bool satisfies_c1(std::span<const double> deviations, double tol = kC1Tolerance);

/// A mesh document: the complex plus the optional per-edge angles.
struct MeshDocument {
    SurfaceComplex complex;
    std::optional<AngleAssignment> theta;
};

/// Parses the JSON mesh format. Throws ParseError for malformed text,
/// IndexError for out-of-range references and InvalidComplexError when the
/// result is not a closed oriented connected triangulated surface.
[[nodiscard]] MeshDocument load_complex(std::string_view document);

/// Reads and parses a mesh file; I/O failures raise ParseError.
[[nodiscard]] MeshDocument load_complex_file(const std::string& path);

/// Serializes back to the JSON mesh format.
[[nodiscard]] std::string dump_complex(const SurfaceComplex& complex,
                                       const std::optional<AngleAssignment>& theta = std::nullopt);

}  // namespace circlepat
