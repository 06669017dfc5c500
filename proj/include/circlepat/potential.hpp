#pragma once

#include <span>

#include "circlepat/attainability.hpp"
#include "circlepat/geometry.hpp"

namespace circlepat {

/// Base point and target for the potential
///   Psi(u) = integral from u0 to u of sum_i (K_i - k_i) du_i.
/// Euclidean evaluations are restricted to the hyperplane sum(u) = sum(u0).
struct PotentialContext {
    CoordVector base_point;
    TargetCurvature target;
    double quadrature_tol = 1e-10;
};

/// Hyperbolic segments must keep every coordinate at or below -kDomainMargin.
inline constexpr double kDomainMargin = 1e-8;
/// Allowed drift of sum(u) away from sum(u0) for Euclidean evaluations.
inline constexpr double kHyperplaneTolerance = 1e-9;

/// Psi along the straight segment from the base point to u, by adaptive
/// Gauss-Kronrod quadrature with absolute error below quadrature_tol.
/// Throws DomainError for points outside the domain or off the Euclidean hyperplane.
[[nodiscard]] double psi(const PotentialContext& context, const SurfaceComplex& complex,
                         const AngleAssignment& angles, const CoordVector& u);

/// Psi along the polyline base -> waypoints[0] -> ... -> waypoints.back().
/// Each segment gets an equal share of the error budget.
[[nodiscard]] double psi_along(const PotentialContext& context, const SurfaceComplex& complex,
                               const AngleAssignment& angles, std::span<const CoordVector> waypoints);

/// Lambda(u) = Psi(u) - Psi(u_star); nonnegative with minimum 0 at the fixed point.
[[nodiscard]] double lambda_fn(const PotentialContext& context, const SurfaceComplex& complex,
                               const AngleAssignment& angles, const CoordVector& u, const CoordVector& u_star);

}  // namespace circlepat
