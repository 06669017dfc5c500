#include "circlepat/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "circlepat/potential.hpp"

namespace circlepat {

namespace {

struct Evaluation {
    CurvatureVector K;
    Vector velocity;
};

using VelocityField = std::function<Evaluation(const CoordVector&)>;

double max_residual(const CurvatureVector& K, const TargetCurvature& k) { return (K - k).cwiseAbs().maxCoeff(); }

bool in_domain(const Vector& u, Geometry g) {
    if (!u.allFinite()) return false;
    return g == Geometry::Euclidean || u.maxCoeff() < 0.0;
}

void check_preconditions(const SurfaceComplex& complex, const AngleAssignment& angles, const TargetCurvature& target,
                         const RadiusVector& r0, Geometry geometry, const SolverConfig& config) {
    config.validate();
    if (target.size() != complex.num_vertices()) throw IndexError("target does not match the vertex count");
    if (r0.size() != complex.num_vertices()) throw IndexError("initial radii do not match the vertex count");
    const ValidationReport report = validate(complex, geometry);
    if (!report.ok) throw PreconditionError("complex is not valid for the geometry: " + report.violations.front());
    if (!satisfies_c1(check_c1(complex, angles)))
        throw PreconditionError("intersection angles do not sum to pi on every face");
    if (config.check_attainability && complex.num_vertices() <= kMaxEnumerationVertices) {
        const AttainabilityReport a = check_target(complex, angles, target, geometry);
        if (!a.attainable)
            throw PreconditionError("target curvature is not attainable (" + std::string(to_string(a.failed_condition)) +
                                    ")");
    }
}

TrajectorySample sample_of(double t, const Vector& u, const CurvatureVector& K, const TargetCurvature& k) {
    TrajectorySample s;
    s.t = t;
    s.residual = max_residual(K, k);
    s.energy = (K - k).squaredNorm();
    s.sum_u = u.sum();
    s.u = u;
    return s;
}

void fill_potential(SolveReport& report, const SurfaceComplex& complex, const AngleAssignment& angles,
                    const TargetCurvature& target, Geometry geometry) {
    if (report.trajectory.empty()) return;
    PotentialContext context{CoordVector(report.trajectory.front().u, geometry), target};
    const double at_star = psi(context, complex, angles, report.final_u);
    for (TrajectorySample& s : report.trajectory)
        s.lambda = psi(context, complex, angles, CoordVector(s.u, geometry)) - at_star;
}

void finish(SolveReport& report, const Vector& u, const CurvatureVector& K, const TargetCurvature& target,
            Geometry geometry) {
    report.final_u = CoordVector(u, geometry);
    report.final_r = from_coords(report.final_u);
    report.final_K = K;
    report.final_residual = max_residual(K, target);
}

// Dormand-Prince 5(4) tableau.
constexpr std::array<std::array<double, 6>, 6> kA = {{
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
}};
constexpr std::array<double, 7> kB5 = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
constexpr std::array<double, 7> kB4 = {5179.0 / 57600, 0,          7571.0 / 16695, 393.0 / 640,
                                       -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

SolveReport integrate_flow(std::string solver, const VelocityField& field, const TargetCurvature& target,
                           const RadiusVector& r0, Geometry geometry, const SolverConfig& config) {
    SolveReport report;
    report.solver = std::move(solver);
    IntegratorStats& stats = report.integrator_stats;

    FlowState state;
    state.u = to_coords(r0, geometry);
    Evaluation current = field(state.u);
    ++stats.rhs_evaluations;
    state.K = current.K;
    state.energy = (state.K - target).squaredNorm();

    Vector u = state.u.values();
    report.trajectory.push_back(sample_of(0.0, u, state.K, target));

    double residual = max_residual(state.K, target);
    double dt = config.dt_init;
    const Eigen::Index n = u.size();
    std::array<Vector, 7> k;
    report.status = SolveStatus::MaxSteps;

    while (true) {
        if (residual <= config.residual_tol) {
            report.status = SolveStatus::Converged;
            break;
        }
        if (stats.accepted + stats.rejected >= config.max_steps) break;
        if (dt < config.dt_min) {
            report.status = SolveStatus::StepUnderflow;
            break;
        }

        k[0] = current.velocity;
        bool stages_ok = true;
        for (std::size_t s = 1; s < 6 && stages_ok; ++s) {
            Vector stage = u;
            for (std::size_t j = 0; j < s; ++j)
                if (kA[s - 1][j] != 0.0) stage += dt * kA[s - 1][j] * k[j];
            if (!in_domain(stage, geometry)) {
                stages_ok = false;
                break;
            }
            k[s] = field(CoordVector(stage, geometry)).velocity;
            ++stats.rhs_evaluations;
        }
        Vector next = u;
        if (stages_ok) {
            for (std::size_t j = 0; j < 6; ++j)
                if (kB5[j] != 0.0) next += dt * kB5[j] * k[j];
            stages_ok = in_domain(next, geometry);
        }
        if (!stages_ok) {
            ++stats.rejected;
            dt *= 0.5;
            continue;
        }

        const Evaluation at_next = field(CoordVector(next, geometry));
        ++stats.rhs_evaluations;
        k[6] = at_next.velocity;

        double err = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double e = 0.0;
            for (std::size_t j = 0; j < 7; ++j) e += (kB5[j] - kB4[j]) * k[j][i];
            const double scale = config.abs_tol + config.rel_tol * std::max(std::abs(u[i]), std::abs(next[i]));
            err = std::max(err, std::abs(dt * e) / scale);
        }
        if (err > 1.0) {
            ++stats.rejected;
            dt *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        const double next_energy = (at_next.K - target).squaredNorm();
        if (next_energy > state.energy) {
            ++stats.rejected;
            dt *= 0.5;
            continue;
        }

        ++stats.accepted;
        state.t += dt;
        state.step_count = stats.accepted;
        state.K = at_next.K;
        state.energy = next_energy;
        u = std::move(next);
        current = at_next;
        residual = max_residual(state.K, target);

        const bool done = residual <= config.residual_tol;
        if (done || stats.accepted % config.trajectory_stride == 0)
            report.trajectory.push_back(sample_of(state.t, u, state.K, target));

        const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        dt = std::min(config.dt_max, dt * std::clamp(grow, 0.2, 5.0));
    }

    if (report.status != SolveStatus::Converged && report.trajectory.back().t != state.t)
        report.trajectory.push_back(sample_of(state.t, u, state.K, target));

    report.steps = stats.accepted;
    report.converged = report.status == SolveStatus::Converged;
    finish(report, u, state.K, target, geometry);
    return report;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(residual_tol > 0.0)) throw DomainError("residual_tol must be positive");
    if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max))
        throw DomainError("step sizes must satisfy 0 < dt_min <= dt_init <= dt_max");
    if (max_steps < 0) throw DomainError("max_steps must be nonnegative");
    if (trajectory_stride < 1) throw DomainError("trajectory_stride must be at least 1");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("integrator tolerances must be positive");
}

std::string_view to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::StepUnderflow: return "step-underflow";
        case SolveStatus::MaxSteps: return "max-steps";
    }
    return "max-steps";
}

Vector calabi_velocity(const SurfaceComplex& complex, const AngleAssignment& angles, const TargetCurvature& target,
                       const CoordVector& u) {
    if (target.size() != u.size()) throw IndexError("target does not match the coordinate vector");
    const CurvatureVector K = curvatures(complex, angles, u);
    return -(jacobian(complex, angles, u) * (K - target));
}

double energy(const SurfaceComplex& complex, const AngleAssignment& angles, const TargetCurvature& target,
              const CoordVector& u) {
    if (target.size() != u.size()) throw IndexError("target does not match the coordinate vector");
    return (curvatures(complex, angles, u) - target).squaredNorm();
}

SolveReport run_calabi(const SurfaceComplex& complex, const AngleAssignment& angles, const TargetCurvature& target,
                       const RadiusVector& r0, Geometry geometry, const SolverConfig& config) {
    check_preconditions(complex, angles, target, r0, geometry, config);
    VelocityField field = [&](const CoordVector& u) {
        Evaluation e;
        e.K = curvatures(complex, angles, u);
        e.velocity = -(jacobian(complex, angles, u) * (e.K - target));
        return e;
    };
    SolveReport report = integrate_flow("calabi", field, target, r0, geometry, config);
    if (config.track_potential && report.converged) fill_potential(report, complex, angles, target, geometry);
    return report;
}

SolveReport run_ricci(const SurfaceComplex& complex, const AngleAssignment& angles, const TargetCurvature& target,
                      const RadiusVector& r0, Geometry geometry, const SolverConfig& config) {
    check_preconditions(complex, angles, target, r0, geometry, config);
    VelocityField field = [&](const CoordVector& u) {
        Evaluation e;
        e.K = curvatures(complex, angles, u);
        e.velocity = -(e.K - target);
        return e;
    };
    SolveReport report = integrate_flow("ricci", field, target, r0, geometry, config);
    if (config.track_potential && report.converged) fill_potential(report, complex, angles, target, geometry);
    return report;
}

SolveReport run_newton(const SurfaceComplex& complex, const AngleAssignment& angles, const TargetCurvature& target,
                       const RadiusVector& r0, Geometry geometry, const SolverConfig& config) {
    check_preconditions(complex, angles, target, r0, geometry, config);

    SolveReport report;
    report.solver = "newton";
    IntegratorStats& stats = report.integrator_stats;

    Vector u = to_coords(r0, geometry).values();
    const auto n = static_cast<double>(u.size());
    CurvatureVector K = curvatures(complex, angles, CoordVector(u, geometry));
    ++stats.rhs_evaluations;
    double C = (K - target).squaredNorm();
    double residual = max_residual(K, target);
    report.trajectory.push_back(sample_of(0.0, u, K, target));
    report.status = SolveStatus::MaxSteps;

    long iteration = 0;
    while (true) {
        if (residual <= config.residual_tol) {
            report.status = SolveStatus::Converged;
            break;
        }
        if (iteration >= config.max_steps) break;

        Matrix L = jacobian(complex, angles, CoordVector(u, geometry));
        Vector rhs = K - target;
        if (geometry == Geometry::Euclidean) {
            // Restrict to sum(x) = 0: L + (1/n) 11^T is definite there and
            // leaves the zero-sum solution of L x = rhs unchanged.
            rhs.array() -= rhs.mean();
            L.array() += 1.0 / n;
        }
        const Eigen::LLT<Matrix> factor(L);
        if (factor.info() != Eigen::Success) throw SolverError("Newton system is not positive definite");
        Vector step = factor.solve(rhs);
        if (geometry == Geometry::Euclidean) step.array() -= step.mean();

        double alpha = 1.0;
        bool accepted = false;
        while (alpha >= config.dt_min) {
            const Vector trial = u - alpha * step;
            if (in_domain(trial, geometry)) {
                const CurvatureVector K_trial = curvatures(complex, angles, CoordVector(trial, geometry));
                ++stats.rhs_evaluations;
                const double C_trial = (K_trial - target).squaredNorm();
                if (C_trial < C || max_residual(K_trial, target) <= config.residual_tol) {
                    u = trial;
                    K = K_trial;
                    C = C_trial;
                    accepted = true;
                    break;
                }
            }
            ++stats.rejected;
            alpha *= 0.5;
        }
        if (!accepted) {
            report.status = SolveStatus::StepUnderflow;
            break;
        }
        ++iteration;
        ++stats.accepted;
        residual = max_residual(K, target);
        if (residual <= config.residual_tol || iteration % config.trajectory_stride == 0)
            report.trajectory.push_back(sample_of(static_cast<double>(iteration), u, K, target));
    }

    if (report.status != SolveStatus::Converged && report.trajectory.back().t != static_cast<double>(iteration))
        report.trajectory.push_back(sample_of(static_cast<double>(iteration), u, K, target));

    report.steps = iteration;
    report.converged = report.status == SolveStatus::Converged;
    finish(report, u, K, target, geometry);
    if (config.track_potential && report.converged) fill_potential(report, complex, angles, target, geometry);
    return report;
}

SolverKind parse_solver(std::string_view name) {
    if (name == "calabi") return SolverKind::Calabi;
    if (name == "ricci") return SolverKind::Ricci;
    if (name == "newton") return SolverKind::Newton;
    throw ParseError("unknown solver '" + std::string(name) + "' (expected calabi, ricci or newton)");
}

std::string_view to_string(SolverKind kind) noexcept {
    switch (kind) {
        case SolverKind::Calabi: return "calabi";
        case SolverKind::Ricci: return "ricci";
        case SolverKind::Newton: return "newton";
    }
    return "calabi";
}

SolveReport run_solver(SolverKind kind, const SurfaceComplex& complex, const AngleAssignment& angles,
                       const TargetCurvature& target, const RadiusVector& r0, Geometry geometry,
                       const SolverConfig& config) {
    switch (kind) {
        case SolverKind::Calabi: return run_calabi(complex, angles, target, r0, geometry, config);
        case SolverKind::Ricci: return run_ricci(complex, angles, target, r0, geometry, config);
        case SolverKind::Newton: return run_newton(complex, angles, target, r0, geometry, config);
    }
    throw ParseError("unknown solver");
}

}  // namespace circlepat
