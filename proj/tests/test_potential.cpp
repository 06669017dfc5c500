#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "circlepat/flow.hpp"
#include "circlepat/potential.hpp"
#include "oracles.hpp"

using namespace circlepat;
using namespace circlepat::testing;

namespace {

constexpr Geometry kHyp = Geometry::Hyperbolic;
constexpr Geometry kEuc = Geometry::Euclidean;

struct Instance {
    Fixture fixture;
    Geometry geometry;
    Vector target;
};

Instance genus2_instance() { return {load_fixture("genus2.json"), kHyp, Vector::Zero(2)}; }

Instance torus2_instance() {
    Vector k(2);
    k << 0.4, -0.4;
    return {load_fixture("torus2.json"), kEuc, k};
}

Vector unit(int n, int i) { return Vector::Unit(n, i); }

/// Direction in which the i-th probe moves: e_i (hyperbolic) or e_i - e_{i+1} (Euclidean, stays on the hyperplane).
Vector probe_direction(int n, int i, Geometry g) {
    if (g == kHyp) return unit(n, i);
    return unit(n, i) - unit(n, (i + 1) % n);
}

double psi_at(const PotentialContext& ctx, const Instance& inst, const Vector& u) {
    return psi(ctx, inst.fixture.complex, inst.fixture.angles, CoordVector(u, inst.geometry));
}

Vector fixed_point(const Instance& inst) {
    const int n = inst.fixture.complex.num_vertices();
    const auto report = run_newton(inst.fixture.complex, inst.fixture.angles, inst.target,
                                   RadiusVector(Vector::Ones(n)), inst.geometry);
    REQUIRE(report.converged);
    return report.final_u.values();
}

}  // namespace

TEST_CASE("psi vanishes at the base point") {
    for (const Instance& inst : {genus2_instance(), torus2_instance()}) {
        const Vector u0 = to_coords(RadiusVector(random_radii(2, 11)), inst.geometry).values();
        const PotentialContext ctx{CoordVector(u0, inst.geometry), inst.target};
        CHECK(psi_at(ctx, inst, u0) == 0.0);
    }
}

TEST_CASE("psi has gradient K - k") {
    constexpr double h = 1e-5;
    for (const Instance& inst : {genus2_instance(), torus2_instance()}) {
        const int n = inst.fixture.complex.num_vertices();
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const Vector u0 = to_coords(RadiusVector(random_radii(n, seed)), inst.geometry).values();
            const PotentialContext ctx{CoordVector(u0, inst.geometry), inst.target, 1e-13};
            Vector u = to_coords(RadiusVector(random_radii(n, seed + 100, 0.3, 3.0)), inst.geometry).values();
            if (inst.geometry == kEuc) u.array() += (u0.sum() - u.sum()) / n;
            const Vector K = curvatures(inst.fixture.complex, inst.fixture.angles, CoordVector(u, inst.geometry));
            for (int i = 0; i < n; ++i) {
                const Vector d = probe_direction(n, i, inst.geometry);
                const double fd = (psi_at(ctx, inst, u + h * d) - psi_at(ctx, inst, u - h * d)) / (2 * h);
                CHECK(fd == doctest::Approx((K - inst.target).dot(d)).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("psi is path independent") {
    for (const Instance& inst : {genus2_instance(), torus2_instance()}) {
        const int n = inst.fixture.complex.num_vertices();
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            CAPTURE(seed);
            const Vector u0 = to_coords(RadiusVector(random_radii(n, seed)), inst.geometry).values();
            Vector u1 = to_coords(RadiusVector(random_radii(n, seed + 50)), inst.geometry).values();
            Vector mid = to_coords(RadiusVector(random_radii(n, seed + 90)), inst.geometry).values();
            if (inst.geometry == kEuc) {
                u1.array() += (u0.sum() - u1.sum()) / n;
                mid.array() += (u0.sum() - mid.sum()) / n;
            }
            const PotentialContext ctx{CoordVector(u0, inst.geometry), inst.target};
            const double direct = psi_at(ctx, inst, u1);
            const std::array<CoordVector, 2> waypoints{CoordVector(mid, inst.geometry), CoordVector(u1, inst.geometry)};
            const double detour = psi_along(ctx, inst.fixture.complex, inst.fixture.angles, waypoints);
            CHECK(std::abs(direct - detour) <= 2 * ctx.quadrature_tol);
        }
    }
}

TEST_CASE("psi rejects points outside its domain") {
    const Instance hyp = genus2_instance();
    const PotentialContext hctx{CoordVector(Vector::Constant(2, -1.0), kHyp), hyp.target};
    CHECK_THROWS_AS((void)psi_at(hctx, hyp, Vector::Constant(2, -1e-9)), DomainError);
    CHECK_NOTHROW((void)psi_at(hctx, hyp, Vector::Constant(2, -1e-3)));

    const Instance euc = torus2_instance();
    const PotentialContext ectx{CoordVector(Vector::Zero(2), kEuc), euc.target};
    CHECK_THROWS_AS((void)psi_at(ectx, euc, Vector::Constant(2, 0.1)), DomainError);
    Vector on(2);
    on << 0.3, -0.3;
    CHECK_NOTHROW((void)psi_at(ectx, euc, on));
}

TEST_CASE("lambda is zero at the fixed point and positive around it") {
    for (const Instance& inst : {genus2_instance(), torus2_instance()}) {
        const int n = inst.fixture.complex.num_vertices();
        const Vector u_star = fixed_point(inst);
        const CoordVector star(u_star, inst.geometry);
        const Vector u0 = inst.geometry == kHyp ? Vector(Vector::Constant(n, -1.0)) : Vector(Vector::Zero(n));
        const PotentialContext ctx{CoordVector(u0.array() + (inst.geometry == kEuc ? u_star.mean() : 0.0), inst.geometry),
                                   inst.target};
        CHECK(std::abs(lambda_fn(ctx, inst.fixture.complex, inst.fixture.angles, star, star)) < 1e-15);

        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> box(-0.5, 0.5);
        for (int trial = 0; trial < 50; ++trial) {
            Vector u(n);
            for (int i = 0; i < n; ++i) u[i] = u_star[i] + box(rng);
            if (inst.geometry == kHyp) u = u.cwiseMin(-1e-3);
            if (inst.geometry == kEuc) u.array() -= u.mean() - u_star.mean();
            if ((u - u_star).norm() < 1e-3) continue;
            CHECK(lambda_fn(ctx, inst.fixture.complex, inst.fixture.angles, CoordVector(u, inst.geometry), star) > 0.0);
        }
    }
}

TEST_CASE("lambda is nonincreasing along a Calabi trajectory") {
    const Instance inst = genus2_instance();
    const auto report = run_calabi(inst.fixture.complex, inst.fixture.angles, inst.target,
                                   RadiusVector(Vector::Constant(2, 0.4)), inst.geometry);
    REQUIRE(report.converged);
    const CoordVector star = report.final_u;
    const PotentialContext ctx{CoordVector(report.trajectory.front().u, kHyp), inst.target};
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& s : report.trajectory) {
        const double lam = lambda_fn(ctx, inst.fixture.complex, inst.fixture.angles, CoordVector(s.u, kHyp), star);
        CHECK(lam >= -1e-9);
        CHECK(lam <= previous + 1e-9);
        previous = lam;
    }
}

TEST_CASE("Hessian of psi matches the curvature Jacobian") {
    constexpr double h = 1e-3;
    for (const Instance& inst : {genus2_instance(), torus2_instance()}) {
        const int n = inst.fixture.complex.num_vertices();
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Vector u0 = to_coords(RadiusVector(random_radii(n, seed)), inst.geometry).values();
            const PotentialContext ctx{CoordVector(u0, inst.geometry), inst.target, 1e-13};
            Vector u = to_coords(RadiusVector(random_radii(n, seed + 30, 0.3, 3.0)), inst.geometry).values();
            if (inst.geometry == kEuc) u.array() += (u0.sum() - u.sum()) / n;
            const Matrix L = jacobian(inst.fixture.complex, inst.fixture.angles, CoordVector(u, inst.geometry));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Vector a = probe_direction(n, i, inst.geometry);
                    const Vector b = probe_direction(n, j, inst.geometry);
                    const double fd = (psi_at(ctx, inst, u + h * a + h * b) - psi_at(ctx, inst, u + h * a - h * b) -
                                       psi_at(ctx, inst, u - h * a + h * b) + psi_at(ctx, inst, u - h * a - h * b)) /
                                      (4 * h * h);
                    const double exact = a.dot(L * b);
                    CAPTURE(exact);
                    CHECK(std::abs(fd - exact) <= 1e-4 * std::max(std::abs(exact), L.lpNorm<Eigen::Infinity>()));
                }
        }
    }
}

TEST_CASE("lambda grows along rays leaving the fixed point") {
    for (const Instance& inst : {genus2_instance(), torus2_instance()}) {
        const int n = inst.fixture.complex.num_vertices();
        const Vector u_star = fixed_point(inst);
        const CoordVector star(u_star, inst.geometry);
        const PotentialContext ctx{star, inst.target};
        std::mt19937_64 rng(99);
        std::normal_distribution<double> normal;
        for (int ray = 0; ray < 8; ++ray) {
            Vector d(n);
            for (int i = 0; i < n; ++i) d[i] = normal(rng);
            if (inst.geometry == kEuc) d.array() -= d.mean();
            if (inst.geometry == kHyp) d = -d.cwiseAbs();  // keep the ray inside u < 0
            d.normalize();
            double previous = 0.0;
            for (double s = 0.25; s <= 4.0; s += 0.25) {
                const double lam =
                    lambda_fn(ctx, inst.fixture.complex, inst.fixture.angles, CoordVector(u_star + s * d, inst.geometry), star);
                CHECK(lam > previous);
                previous = lam;
            }
        }
    }
}
