#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circlepat/attainability.hpp"
#include "circlepat/geometry.hpp"

namespace circlepat {

struct SolverConfig {
    double residual_tol = 1e-10;  ///< on max_i |K_i - k_i|
    long max_steps = 1'000'000;   ///< step attempts (flows) or iterations (Newton)
    double dt_init = 0.1;
    double dt_min = 1e-12;
    double dt_max = 10.0;
    int trajectory_stride = 1;
    /// Local error control of the embedded Runge-Kutta pair.
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    /// Assert attainability before solving when N permits enumeration.
    bool check_attainability = true;
    /// Evaluate Lambda along the stored trajectory once the solve converges.
    bool track_potential = false;

    /// Throws DomainError when the settings are inconsistent.
    void validate() const;
};

/// Instantaneous state of a flow integration.
struct FlowState {
    double t = 0.0;
    CoordVector u;
    CurvatureVector K;
    double energy = 0.0;
    long step_count = 0;
};

struct TrajectorySample {
    double t = 0.0;
    double residual = 0.0;
    double energy = 0.0;
    std::optional<double> lambda;
    double sum_u = 0.0;
    Vector u;
};

enum class SolveStatus { Converged, StepUnderflow, MaxSteps };

[[nodiscard]] std::string_view to_string(SolveStatus s) noexcept;

struct IntegratorStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evaluations = 0;
};

struct SolveReport {
    std::string solver;
    bool converged = false;
    SolveStatus status = SolveStatus::MaxSteps;
    RadiusVector final_r;
    CoordVector final_u;
    CurvatureVector final_K;
    double final_residual = 0.0;
    long steps = 0;
    std::vector<TrajectorySample> trajectory;
    IntegratorStats integrator_stats;
};

/// du/dt = -L (K - k), the Calabi flow in u-coordinates.
[[nodiscard]] Vector calabi_velocity(const SurfaceComplex& complex, const AngleAssignment& angles,
                                     const TargetCurvature& target, const CoordVector& u);

/// C(u) = sum_i (K_i - k_i)^2.
[[nodiscard]] double energy(const SurfaceComplex& complex, const AngleAssignment& angles,
                            const TargetCurvature& target, const CoordVector& u);

/// Integrates the Calabi flow from r0 until max |K - k| <= residual_tol.
///
/// Steps come from an adaptive Dormand-Prince 5(4) pair and are accepted only
/// when the local error passes, the energy does not increase and (hyperbolic)
/// every coordinate stays negative; otherwise the step shrinks.
/// Throws PreconditionError if the complex does not fit the geometry, the
/// angles violate the face sum condition, or (N <= 25) the target is not
/// attainable.
[[nodiscard]] SolveReport run_calabi(const SurfaceComplex& complex, const AngleAssignment& angles,
                                     const TargetCurvature& target, const RadiusVector& r0, Geometry geometry,
                                     const SolverConfig& config = {});

/// Same integrator on the Ricci flow du/dt = -(K - k).
[[nodiscard]] SolveReport run_ricci(const SurfaceComplex& complex, const AngleAssignment& angles,
                                    const TargetCurvature& target, const RadiusVector& r0, Geometry geometry,
                                    const SolverConfig& config = {});

/// Damped Newton iteration on K(u) = k using the analytic Jacobian. The
/// Euclidean system is solved on the zero-sum subspace, so sum(u) is kept.
/// Throws SolverError if the restricted Jacobian fails to factor.
[[nodiscard]] SolveReport run_newton(const SurfaceComplex& complex, const AngleAssignment& angles,
                                     const TargetCurvature& target, const RadiusVector& r0, Geometry geometry,
                                     const SolverConfig& config = {});

/// Solver selection by name ("calabi", "ricci", "newton").
enum class SolverKind { Calabi, Ricci, Newton };

[[nodiscard]] SolverKind parse_solver(std::string_view name);
[[nodiscard]] std::string_view to_string(SolverKind kind) noexcept;

[[nodiscard]] SolveReport run_solver(SolverKind kind, const SurfaceComplex& complex, const AngleAssignment& angles,
                                     const TargetCurvature& target, const RadiusVector& r0, Geometry geometry,
                                     const SolverConfig& config = {});

}  // namespace circlepat
