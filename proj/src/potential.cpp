#include "circlepat/potential.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace circlepat {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

constexpr int kMaxDepth = 30;

struct RuleResult {
    double value;
    double error;
};

// G7/K15 pair on [a, b]. Kronrod nodes with even index are the Gauss nodes.
template <class F>
RuleResult gauss_kronrod_15(const F& f, double a, double b) {
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double kronrod = f0 * wk[0];
    double gauss = f0 * wg[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double pair = f(mid + half * x[i]) + f(mid - half * x[i]);
        kronrod += pair * wk[i];
        if (i % 2 == 0) gauss += pair * wg[i / 2];
    }
    return {half * kronrod, std::abs(half * (kronrod - gauss))};
}

template <class F>
double adaptive(const F& f, double a, double b, double tol, int depth) {
    const RuleResult r = gauss_kronrod_15(f, a, b);
    if (r.error <= tol || depth >= kMaxDepth) return r.value;
    const double mid = 0.5 * (a + b);
    return adaptive(f, a, mid, 0.5 * tol, depth + 1) + adaptive(f, mid, b, 0.5 * tol, depth + 1);
}

void require_point(const PotentialContext& context, const CoordVector& u) {
    const CoordVector& base = context.base_point;
    if (u.geometry() != base.geometry()) throw DomainError("point and base point use different geometries");
    if (u.size() != base.size()) throw IndexError("point and base point differ in dimension");
    if (u.geometry() == Geometry::Hyperbolic) {
        if (u.values().maxCoeff() > -kDomainMargin)
            throw DomainError("hyperbolic point is within " + std::to_string(kDomainMargin) + " of the domain boundary");
    } else {
        const double drift = u.values().sum() - base.values().sum();
        if (std::abs(drift) > kHyperplaneTolerance)
            throw DomainError("Euclidean point leaves the hyperplane sum(u) = sum(u0) (drift " + std::to_string(drift) +
                              ")");
    }
}

// Integral of the 1-form over the segment a -> b.
double segment(const PotentialContext& context, const SurfaceComplex& complex, const AngleAssignment& angles,
               const CoordVector& a, const CoordVector& b, double tol) {
    const Vector delta = b.values() - a.values();
    if (delta.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    const Geometry g = a.geometry();
    auto integrand = [&](double s) {
        const CoordVector point(a.values() + s * delta, g);
        return (curvatures(complex, angles, point) - context.target).dot(delta);
    };
    return adaptive(integrand, 0.0, 1.0, tol, 0);
}

}  // namespace

double psi(const PotentialContext& context, const SurfaceComplex& complex, const AngleAssignment& angles,
           const CoordVector& u) {
    const CoordVector waypoint[] = {u};
    return psi_along(context, complex, angles, waypoint);
}

double psi_along(const PotentialContext& context, const SurfaceComplex& complex, const AngleAssignment& angles,
                 std::span<const CoordVector> waypoints) {
    if (context.target.size() != complex.num_vertices())
        throw IndexError("target does not match the vertex count");
    require_point(context, context.base_point);
    for (const CoordVector& w : waypoints) require_point(context, w);
    if (waypoints.empty()) return 0.0;

    const double share = context.quadrature_tol / static_cast<double>(waypoints.size());
    double total = 0.0;
    const CoordVector* from = &context.base_point;
    for (const CoordVector& w : waypoints) {
        total += segment(context, complex, angles, *from, w, share);
        from = &w;
    }
    return total;
}

double lambda_fn(const PotentialContext& context, const SurfaceComplex& complex, const AngleAssignment& angles,
                 const CoordVector& u, const CoordVector& u_star) {
    return psi(context, complex, angles, u) - psi(context, complex, angles, u_star);
}

}  // namespace circlepat
