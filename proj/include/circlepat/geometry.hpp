#pragma once

#include <Eigen/Dense>

#include "circlepat/surface_complex.hpp"
#include "circlepat/types.hpp"

namespace circlepat {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Per-vertex circle radii, all strictly positive.
class RadiusVector {
public:
    RadiusVector() = default;
    /// Throws DomainError unless every entry is finite and positive.
    explicit RadiusVector(Vector r);

    [[nodiscard]] Eigen::Index size() const noexcept { return r_.size(); }
    [[nodiscard]] double operator[](Eigen::Index i) const { return r_[i]; }
    [[nodiscard]] const Vector& values() const noexcept { return r_; }

private:
    Vector r_;
};

/// Radii in flow coordinates: u = ln tanh(r/2) (hyperbolic, u < 0) or
/// u = ln r (Euclidean, unrestricted).
class CoordVector {
public:
    CoordVector() = default;
    /// Throws DomainError if a hyperbolic entry is not negative or any entry is not finite.
    CoordVector(Vector u, Geometry geometry);

    [[nodiscard]] Eigen::Index size() const noexcept { return u_.size(); }
    [[nodiscard]] double operator[](Eigen::Index i) const { return u_[i]; }
    [[nodiscard]] const Vector& values() const noexcept { return u_; }
    [[nodiscard]] Geometry geometry() const noexcept { return geometry_; }

private:
    Vector u_;
    Geometry geometry_ = Geometry::Euclidean;
};

/// Discrete curvature K_i = 2 pi - (angle sum at v_i).
using CurvatureVector = Vector;
/// L(j, i) = dK_j / du_i.
using CurvatureJacobian = Matrix;

[[nodiscard]] double to_coord(double r, Geometry geometry);
[[nodiscard]] double from_coord(double u, Geometry geometry);
[[nodiscard]] CoordVector to_coords(const RadiusVector& r, Geometry geometry);
[[nodiscard]] RadiusVector from_coords(const CoordVector& u);

/// Distance between the centers of two circles of radii ri, rj meeting at
/// exterior angle theta.
///
/// The hyperbolic branch never forms cosh(l) - 1 by subtraction: it uses
///   cosh l - 1 = 2 sinh^2((ri - rj)/2) + sinh ri sinh rj (1 + cos theta),
/// whose terms are all nonnegative, then l = 2 asinh(sqrt((cosh l - 1)/2)).
/// This stays accurate when both radii are small and cosh l is near 1.
[[nodiscard]] double edge_length(double ri, double rj, double theta, Geometry geometry);

/// Inner angle at the center of circle i in the triangle spanned by the two
/// centers and one intersection point of the circles.
///
/// Evaluated in cotangent form with atan2 (no arccos, so no clamping):
///   Euclidean:  atan2(rj sin theta, ri + rj cos theta)
///   hyperbolic: atan2(sinh rj sin theta, sinh ri cosh rj + cosh ri sinh rj cos theta)
[[nodiscard]] double center_angle(double ri, double rj, double theta, Geometry geometry);

/// Partial derivatives of center_angle(ri, rj, .) with respect to u_i and u_j.
struct AngleDerivatives {
    double d_self = 0.0;   ///< d(theta_i)/d(u_i), always negative
    double d_other = 0.0;  ///< d(theta_i)/d(u_j) = d(theta_j)/d(u_i), always positive
};

/// Closed forms, obtained by differentiating the cotangent form:
///   Euclidean:  d_other = ri rj sin theta / l^2,                d_self = -d_other
///   hyperbolic: d_other = sinh ri sinh rj sin theta / sinh^2 l, d_self = -cosh l * d_other
[[nodiscard]] AngleDerivatives center_angle_derivatives(double ri, double rj, double theta, Geometry geometry);

/// Curvatures via the edge-end sum K_i = 2 pi - 2 * sum over edge ends at v_i.
/// Defines with CIRCLEPAT_CHECK_CURVATURE cross-check against curvatures_by_corners.
[[nodiscard]] CurvatureVector curvatures(const SurfaceComplex& complex, const AngleAssignment& angles,
                                         const CoordVector& u);

/// Curvatures summed face corner by face corner (reference route).
[[nodiscard]] CurvatureVector curvatures_by_corners(const SurfaceComplex& complex, const AngleAssignment& angles,
                                                    const CoordVector& u);

/// Analytic Jacobian dK/du. Symmetric; positive definite (hyperbolic) or
/// positive semidefinite with kernel spanned by (1, ..., 1) (Euclidean).
[[nodiscard]] CurvatureJacobian jacobian(const SurfaceComplex& complex, const AngleAssignment& angles,
                                         const CoordVector& u);

/// Total hyperbolic area of the 3F center/center/intersection triangles.
/// Throws DomainError for Euclidean geometry.
[[nodiscard]] double total_area(const SurfaceComplex& complex, const AngleAssignment& angles,
                                const RadiusVector& r, Geometry geometry);

}  // namespace circlepat
