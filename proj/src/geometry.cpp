#include "circlepat/geometry.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

namespace circlepat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_theta(double theta) {
    if (!(theta > 0.0 && theta < kPi))
        throw DomainError("intersection angle " + std::to_string(theta) + " is outside (0, pi)");
}

void require_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radius " + std::to_string(r) + " is not positive");
}

// sinh r and cosh r of a circle, in either geometry's meaning:
// hyperbolic stores (sinh r, cosh r); Euclidean stores (r, 1).
struct CircleData {
    double s;
    double c;
};

CircleData hyperbolic_circle(double r) { return {std::sinh(r), std::cosh(r)}; }

// From u = ln tanh(r/2): with t = e^u, sinh r = 2t/(1-t^2), cosh r = (1+t^2)/(1-t^2).
CircleData hyperbolic_circle_from_u(double u) {
    const double t = std::exp(u);
    const double one_minus_t2 = -std::expm1(2.0 * u);
    return {2.0 * t / one_minus_t2, (1.0 + t * t) / one_minus_t2};
}

double angle_hyperbolic(const CircleData& i, const CircleData& j, double theta) {
    const double x = i.s * j.c + i.c * j.s * std::cos(theta);
    const double y = j.s * std::sin(theta);
    return std::atan2(y, x);
}

double angle_euclidean(double ri, double rj, double theta) {
    return std::atan2(rj * std::sin(theta), ri + rj * std::cos(theta));
}

AngleDerivatives derivatives_hyperbolic(const CircleData& i, const CircleData& j, double theta) {
    const double cos_t = std::cos(theta);
    const double sin_t = std::sin(theta);
    const double x = i.s * j.c + i.c * j.s * cos_t;
    const double y = j.s * sin_t;
    const double sinh2_l = x * x + y * y;
    const double cosh_l = i.c * j.c + i.s * j.s * cos_t;
    const double d_other = i.s * j.s * sin_t / sinh2_l;
    return {-cosh_l * d_other, d_other};
}

AngleDerivatives derivatives_euclidean(double ri, double rj, double theta) {
    const double x = ri + rj * std::cos(theta);
    const double y = rj * std::sin(theta);
    const double d_other = ri * rj * std::sin(theta) / (x * x + y * y);
    return {-d_other, d_other};
}

void require_sizes(const SurfaceComplex& complex, const AngleAssignment& angles, Eigen::Index n) {
    if (angles.size() != static_cast<std::size_t>(complex.num_edges()))
        throw IndexError("angle assignment has " + std::to_string(angles.size()) + " entries for " +
                         std::to_string(complex.num_edges()) + " edges");
    if (n != complex.num_vertices())
        throw IndexError("coordinate vector has " + std::to_string(n) + " entries for " +
                         std::to_string(complex.num_vertices()) + " vertices");
}

std::vector<CircleData> circles_from_u(const CoordVector& u) {
    std::vector<CircleData> out(static_cast<std::size_t>(u.size()));
    for (Eigen::Index i = 0; i < u.size(); ++i)
        out[static_cast<std::size_t>(i)] = u.geometry() == Geometry::Hyperbolic
                                               ? hyperbolic_circle_from_u(u[i])
                                               : CircleData{std::exp(u[i]), 1.0};
    return out;
}

double angle_of(const CircleData& i, const CircleData& j, double theta, Geometry g) {
    return g == Geometry::Hyperbolic ? angle_hyperbolic(i, j, theta) : angle_euclidean(i.s, j.s, theta);
}

AngleDerivatives derivatives_of(const CircleData& i, const CircleData& j, double theta, Geometry g) {
    return g == Geometry::Hyperbolic ? derivatives_hyperbolic(i, j, theta) : derivatives_euclidean(i.s, j.s, theta);
}

// Center angles at the tail and head end of every edge.
struct EdgeAngles {
    std::vector<double> tail;
    std::vector<double> head;
};

EdgeAngles edge_angles(const SurfaceComplex& complex, const AngleAssignment& angles,
                       const std::vector<CircleData>& circles, Geometry g) {
    EdgeAngles out;
    const auto m = static_cast<std::size_t>(complex.num_edges());
    out.tail.resize(m);
    out.head.resize(m);
    for (EdgeId e = 0; e < complex.num_edges(); ++e) {
        const Edge& ed = complex.edge(e);
        const auto& a = circles[static_cast<std::size_t>(ed.tail)];
        const auto& b = circles[static_cast<std::size_t>(ed.head)];
        out.tail[static_cast<std::size_t>(e)] = angle_of(a, b, angles[e], g);
        out.head[static_cast<std::size_t>(e)] = angle_of(b, a, angles[e], g);
    }
    return out;
}

}  // namespace

RadiusVector::RadiusVector(Vector r) : r_(std::move(r)) {
    for (Eigen::Index i = 0; i < r_.size(); ++i) require_radius(r_[i]);
}

CoordVector::CoordVector(Vector u, Geometry geometry) : u_(std::move(u)), geometry_(geometry) {
    for (Eigen::Index i = 0; i < u_.size(); ++i) {
        if (!std::isfinite(u_[i])) throw DomainError("coordinate " + std::to_string(i) + " is not finite");
        if (geometry_ == Geometry::Hyperbolic && !(u_[i] < 0.0))
            throw DomainError("hyperbolic coordinate u[" + std::to_string(i) + "] = " + std::to_string(u_[i]) +
                              " must be negative");
    }
}

double to_coord(double r, Geometry geometry) {
    require_radius(r);
    if (geometry == Geometry::Euclidean) return std::log(r);
    // ln tanh(r/2) = log1p(-e^-r) - log1p(e^-r), accurate for large r where tanh rounds to 1.
    const double q = std::exp(-r);
    return std::log1p(-q) - std::log1p(q);
}

double from_coord(double u, Geometry geometry) {
    if (geometry == Geometry::Euclidean) return std::exp(u);
    if (!(u < 0.0)) throw DomainError("hyperbolic coordinate " + std::to_string(u) + " must be negative");
    // 2 artanh(e^u) = log1p(e^u) - log(-expm1(u)).
    return std::log1p(std::exp(u)) - std::log(-std::expm1(u));
}

CoordVector to_coords(const RadiusVector& r, Geometry geometry) {
    Vector u(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) u[i] = to_coord(r[i], geometry);
    return CoordVector(std::move(u), geometry);
}

RadiusVector from_coords(const CoordVector& u) {
    Vector r(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) r[i] = from_coord(u[i], u.geometry());
    return RadiusVector(std::move(r));
}

double edge_length(double ri, double rj, double theta, Geometry geometry) {
    require_radius(ri);
    require_radius(rj);
    require_theta(theta);
    if (geometry == Geometry::Euclidean) return std::hypot(ri + rj * std::cos(theta), rj * std::sin(theta));
    const double half_diff = std::sinh(0.5 * (ri - rj));
    const double cosh_l_minus_1 = 2.0 * half_diff * half_diff + std::sinh(ri) * std::sinh(rj) * (1.0 + std::cos(theta));
    return 2.0 * std::asinh(std::sqrt(0.5 * cosh_l_minus_1));
}

double center_angle(double ri, double rj, double theta, Geometry geometry) {
    require_radius(ri);
    require_radius(rj);
    require_theta(theta);
    if (geometry == Geometry::Euclidean) return angle_euclidean(ri, rj, theta);
    return angle_hyperbolic(hyperbolic_circle(ri), hyperbolic_circle(rj), theta);
}

AngleDerivatives center_angle_derivatives(double ri, double rj, double theta, Geometry geometry) {
    require_radius(ri);
    require_radius(rj);
    require_theta(theta);
    if (geometry == Geometry::Euclidean) return derivatives_euclidean(ri, rj, theta);
    return derivatives_hyperbolic(hyperbolic_circle(ri), hyperbolic_circle(rj), theta);
}

CurvatureVector curvatures(const SurfaceComplex& complex, const AngleAssignment& angles, const CoordVector& u) {
    require_sizes(complex, angles, u.size());
    const auto circles = circles_from_u(u);
    const EdgeAngles ea = edge_angles(complex, angles, circles, u.geometry());

    CurvatureVector K(complex.num_vertices());
    for (VertexId v = 0; v < complex.num_vertices(); ++v) {
        double sum = 0.0;
        for (const EdgeEnd& end : complex.incident_edge_ends(v))
            sum += end.end == End::Tail ? ea.tail[static_cast<std::size_t>(end.edge)]
                                        : ea.head[static_cast<std::size_t>(end.edge)];
        K[v] = 2.0 * kPi - 2.0 * sum;
    }
#ifdef CIRCLEPAT_CHECK_CURVATURE
    assert((K - curvatures_by_corners(complex, angles, u)).cwiseAbs().maxCoeff() < 1e-12);
#endif
    return K;
}

CurvatureVector curvatures_by_corners(const SurfaceComplex& complex, const AngleAssignment& angles,
                                      const CoordVector& u) {
    require_sizes(complex, angles, u.size());
    const auto circles = circles_from_u(u);
    const EdgeAngles ea = edge_angles(complex, angles, circles, u.geometry());

    auto angle_at_tail = [&](const DirectedEdge& d) {
        return d.direction > 0 ? ea.tail[static_cast<std::size_t>(d.edge)] : ea.head[static_cast<std::size_t>(d.edge)];
    };
    auto angle_at_head = [&](const DirectedEdge& d) {
        return d.direction > 0 ? ea.head[static_cast<std::size_t>(d.edge)] : ea.tail[static_cast<std::size_t>(d.edge)];
    };

    CurvatureVector K = CurvatureVector::Constant(complex.num_vertices(), 2.0 * kPi);
    for (FaceId f = 0; f < complex.num_faces(); ++f) {
        const Face& face = complex.face(f);
        for (std::size_t k = 0; k < 3; ++k) {
            // Corner k sits between side k-1 (arriving) and side k (leaving).
            const DirectedEdge& leaving = face[k];
            const DirectedEdge& arriving = face[(k + 2) % 3];
            K[complex.side_tail(leaving)] -= angle_at_tail(leaving) + angle_at_head(arriving);
        }
    }
    return K;
}

CurvatureJacobian jacobian(const SurfaceComplex& complex, const AngleAssignment& angles, const CoordVector& u) {
    require_sizes(complex, angles, u.size());
    const auto circles = circles_from_u(u);
    const Geometry g = u.geometry();

    CurvatureJacobian L = CurvatureJacobian::Zero(complex.num_vertices(), complex.num_vertices());
    for (EdgeId e = 0; e < complex.num_edges(); ++e) {
        const Edge& ed = complex.edge(e);
        const auto& a = circles[static_cast<std::size_t>(ed.tail)];
        const auto& b = circles[static_cast<std::size_t>(ed.head)];
        // Each edge end enters K of its vertex with weight -2 (one sub-triangle on each side).
        const AngleDerivatives at_tail = derivatives_of(a, b, angles[e], g);
        const AngleDerivatives at_head = derivatives_of(b, a, angles[e], g);
        L(ed.tail, ed.tail) -= 2.0 * at_tail.d_self;
        L(ed.tail, ed.head) -= 2.0 * at_tail.d_other;
        L(ed.head, ed.head) -= 2.0 * at_head.d_self;
        L(ed.head, ed.tail) -= 2.0 * at_head.d_other;
    }
    return L;
}

double total_area(const SurfaceComplex& complex, const AngleAssignment& angles, const RadiusVector& r,
                  Geometry geometry) {
    if (geometry != Geometry::Hyperbolic) throw DomainError("total_area is defined for hyperbolic geometry only");
    require_sizes(complex, angles, r.size());
    double area = 0.0;
    for (EdgeId e = 0; e < complex.num_edges(); ++e) {
        const Edge& ed = complex.edge(e);
        const auto a = hyperbolic_circle(r[ed.tail]);
        const auto b = hyperbolic_circle(r[ed.head]);
        // Angles of the sub-triangle: theta_i, theta_j and pi - Theta at the intersection point.
        const double defect = angles[e] - angle_hyperbolic(a, b, angles[e]) - angle_hyperbolic(b, a, angles[e]);
        area += 2.0 * defect;
    }
    return area;
}

}  // namespace circlepat
