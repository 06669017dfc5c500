#include "circlepat/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "circlepat/attainability.hpp"
#include "circlepat/flow.hpp"
#include "circlepat/layout.hpp"

#ifndef CIRCLEPAT_VERSION
#define CIRCLEPAT_VERSION "0.0.0"
#endif

namespace circlepat::cli {

namespace {

using nlohmann::json;

constexpr double kAgreementTolerance = 1e-8;
constexpr double kGaussBonnetTolerance = 1e-9;

// Raised inside a command to leave with a specific exit code.
struct Exit {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Exit{kIoFailure, "cannot read '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Exit{kIoFailure, "cannot write '" + path + "'"};
    out << content;
    if (!out) throw Exit{kIoFailure, "failed writing '" + path + "'"};
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return hex.str();
}

json to_json(const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

std::string sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

// Reproducibility record embedded in every output.
struct Manifest {
    json data = json::object();

    void input(const std::string& role, const std::string& path, const std::string& content) {
        data["inputs"][role] = {{"path", path}, {"sha256", sha256_hex(content)}};
    }
};

struct LoadedMesh {
    SurfaceComplex complex;
    AngleAssignment angles;
};

// Loads the mesh for a solving command; structural problems are precondition failures.
LoadedMesh load_mesh_for_solving(const std::string& path, Manifest& manifest) {
    const std::string text = read_file(path);
    manifest.input("mesh", path, text);
    try {
        MeshDocument doc = load_complex(text);
        if (!doc.theta) throw Exit{kIoFailure, "mesh '" + path + "' has no theta array"};
        return {std::move(doc.complex), std::move(*doc.theta)};
    } catch (const InvalidComplexError& e) {
        std::string msg = e.what();
        for (const auto& v : e.violations()) msg += "\n  " + v;
        throw Exit{kPrecondition, msg};
    } catch (const Error& e) {
        throw Exit{kIoFailure, e.what()};
    }
}

TargetCurvature load_target(const std::string& spec, int n, Manifest& manifest) {
    if (spec == "zero") return TargetCurvature::Zero(n);
    const std::string text = read_file(spec);
    manifest.input("target", spec, text);
    std::vector<double> values;
    try {
        values = json::parse(text).get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw Exit{kIoFailure, "target file '" + spec + "' is not a JSON array of numbers"};
    }
    if (values.size() != static_cast<std::size_t>(n))
        throw Exit{kIoFailure, "target has " + std::to_string(values.size()) + " entries for " + std::to_string(n) +
                                   " vertices"};
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Radii from a JSON array or from a solve report's "final_r".
Vector load_radii(const std::string& path, int n, Manifest& manifest) {
    const std::string text = read_file(path);
    manifest.input("radii", path, text);
    std::vector<double> values;
    try {
        const json doc = json::parse(text);
        values = (doc.is_object() ? doc.at("final_r") : doc).get<std::vector<double>>();
    } catch (const json::exception&) {
        throw Exit{kIoFailure, "radii file '" + path + "' holds neither an array nor a report with final_r"};
    }
    if (values.size() != static_cast<std::size_t>(n))
        throw Exit{kIoFailure, "radii file has " + std::to_string(values.size()) + " entries for " +
                                   std::to_string(n) + " vertices"};
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Log-uniform radii in [0.1, 10] from a 64-bit Mersenne Twister. The double
// is built from the top 53 bits so the draw is identical across platforms.
Vector random_radii(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Vector r(n);
    for (int i = 0; i < n; ++i) {
        const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        r[i] = std::pow(10.0, -1.0 + 2.0 * unit);
    }
    return r;
}

std::optional<double> residual_tol_from_env() {
    const char* value = std::getenv(kResidualTolEnv);
    if (value == nullptr || *value == '\0') return std::nullopt;
    char* end = nullptr;
    const double tol = std::strtod(value, &end);
    if (end == value || *end != '\0' || !(tol > 0.0))
        throw Exit{kIoFailure, std::string(kResidualTolEnv) + " must be a positive number"};
    return tol;
}

json config_json(const SolverConfig& c) {
    return {{"residual_tol", c.residual_tol}, {"max_steps", c.max_steps},      {"dt_init", c.dt_init},
            {"dt_min", c.dt_min},             {"dt_max", c.dt_max},            {"trajectory_stride", c.trajectory_stride},
            {"rel_tol", c.rel_tol},           {"abs_tol", c.abs_tol},          {"check_attainability", c.check_attainability},
            {"track_potential", c.track_potential}};
}

json attainability_json(const AttainabilityReport& a) {
    json j = {{"attainable", a.attainable},
              {"failed_condition", std::string(to_string(a.failed_condition))},
              {"margin", a.margin}};
    j["witness_subset"] = a.witness_subset ? json(*a.witness_subset) : json(nullptr);
    return j;
}

json report_json(const SolveReport& r) {
    return {{"solver", r.solver},
            {"converged", r.converged},
            {"status", std::string(to_string(r.status))},
            {"final_r", to_json(r.final_r.values())},
            {"final_u", to_json(r.final_u.values())},
            {"final_K", to_json(r.final_K)},
            {"final_residual", r.final_residual},
            {"steps", r.steps},
            {"trajectory_samples", r.trajectory.size()},
            {"integrator_stats",
             {{"accepted", r.integrator_stats.accepted},
              {"rejected", r.integrator_stats.rejected},
              {"rhs_evaluations", r.integrator_stats.rhs_evaluations}}}};
}

std::string trajectory_csv(const SolveReport& r, const Manifest& manifest) {
    const bool lambda = !r.trajectory.empty() && r.trajectory.front().lambda.has_value();
    std::string csv = "# " + json{{"manifest", manifest.data}}.dump() + "\n";
    csv += lambda ? "t,residual,energy,sum_u,lambda\n" : "t,residual,energy,sum_u\n";
    for (const TrajectorySample& s : r.trajectory) {
        csv += sci(s.t) + "," + sci(s.residual) + "," + sci(s.energy) + "," + sci(s.sum_u);
        if (lambda) csv += "," + sci(*s.lambda);
        csv += "\n";
    }
    return csv;
}

void emit(std::ostream& out, const std::optional<std::string>& path, const json& doc) {
    const std::string text = doc.dump(2) + "\n";
    if (path) {
        write_file(*path, text);
    } else {
        out << text;
    }
}

// Radii normalized to mean(u) = 0 so Euclidean solutions compare up to scale.
Vector normalized_radii(const SolveReport& r, Geometry g) {
    if (g == Geometry::Hyperbolic) return r.final_r.values();
    const Vector u = r.final_u.values();
    return (u.array() - u.mean()).exp().matrix();
}

struct SolveOptions {
    std::string mesh;
    std::string target = "zero";
    std::string geometry;
    std::string solver = "calabi";
    double r0 = 1.0;
    std::optional<std::string> radii;
    bool random_init = false;
    std::uint64_t seed = 0;
    bool skip_attainability = false;
    bool potential = false;
    std::optional<std::string> report_path;
    std::optional<std::string> trajectory_path;
    SolverConfig config;
};

void add_config_flags(CLI::App& cmd, SolveOptions& o) {
    cmd.add_option("--residual-tol", o.config.residual_tol, "Stop when max |K - k| is at most this");
    cmd.add_option("--max-steps", o.config.max_steps, "Step attempts (flows) or iterations (Newton)");
    cmd.add_option("--dt-init", o.config.dt_init, "Initial flow time step");
    cmd.add_option("--dt-min", o.config.dt_min, "Smallest flow time step before giving up");
    cmd.add_option("--dt-max", o.config.dt_max, "Largest flow time step");
    cmd.add_option("--stride", o.config.trajectory_stride, "Record every n-th accepted step");
    cmd.add_flag("--skip-attainability", o.skip_attainability, "Do not enumerate vertex subsets before solving");
}

void add_init_flags(CLI::App& cmd, SolveOptions& o) {
    cmd.add_option("--r0", o.r0, "Uniform initial radius");
    cmd.add_option("--radii", o.radii, "Initial radii (JSON array or solve report)");
    cmd.add_flag("--random-init", o.random_init, "Draw initial radii log-uniformly in [0.1, 10]");
    cmd.add_option("--seed", o.seed, "Seed for --random-init");
}

struct Problem {
    LoadedMesh mesh;
    Geometry geometry;
    TargetCurvature target;
    RadiusVector r0;
};

// Shared setup and precondition gate of solve and compare.
Problem prepare(const SolveOptions& o, Manifest& manifest) {
    Geometry geometry;
    try {
        geometry = parse_geometry(o.geometry);
    } catch (const Error& e) {
        throw Exit{kIoFailure, e.what()};
    }
    LoadedMesh mesh = load_mesh_for_solving(o.mesh, manifest);
    const int n = mesh.complex.num_vertices();
    TargetCurvature target = load_target(o.target, n, manifest);

    Vector r0;
    if (o.radii) {
        r0 = load_radii(*o.radii, n, manifest);
    } else if (o.random_init) {
        r0 = random_radii(n, o.seed);
    } else {
        r0 = Vector::Constant(n, o.r0);
    }
    manifest.data["seed"] = o.random_init ? json(o.seed) : json(nullptr);

    const ValidationReport report = validate(mesh.complex, geometry);
    if (!report.ok) throw Exit{kPrecondition, "complex is not valid for the geometry: " + report.violations.front()};
    if (!satisfies_c1(check_c1(mesh.complex, mesh.angles)))
        throw Exit{kPrecondition, "intersection angles do not sum to pi on every face"};
    if (o.target == "zero" && geometry == Geometry::Euclidean) {
        const double gauss_bonnet = 2.0 * std::numbers::pi * report.euler_characteristic;
        if (std::abs(target.sum() - gauss_bonnet) > kGaussBonnetTolerance)
            throw Exit{kPrecondition, "zero target violates sum K = 2 pi chi"};
    }
    if (!o.skip_attainability) {
        if (n > kMaxEnumerationVertices)
            throw Exit{kScaleGuard, "attainability check needs N <= " + std::to_string(kMaxEnumerationVertices) +
                                        "; pass --skip-attainability to run unguarded"};
        const AttainabilityReport a = check_target(mesh.complex, mesh.angles, target, geometry);
        if (!a.attainable)
            throw Exit{kPrecondition,
                       "target curvature is not attainable (" + std::string(to_string(a.failed_condition)) + ")"};
    }
    try {
        return {std::move(mesh), geometry, std::move(target), RadiusVector(std::move(r0))};
    } catch (const DomainError& e) {
        throw Exit{kIoFailure, e.what()};
    }
}

SolverConfig effective_config(const SolveOptions& o) {
    SolverConfig c = o.config;
    c.check_attainability = !o.skip_attainability;
    c.track_potential = o.potential;
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw Exit{kIoFailure, e.what()};
    }
    return c;
}

int cmd_validate(const std::string& mesh_path, const std::string& geometry_name, Manifest& manifest,
                 std::ostream& out) {
    Geometry geometry;
    try {
        geometry = parse_geometry(geometry_name);
    } catch (const Error& e) {
        throw Exit{kIoFailure, e.what()};
    }
    manifest.data["geometry"] = geometry_name;
    const std::string text = read_file(mesh_path);
    manifest.input("mesh", mesh_path, text);

    json doc = {{"manifest", manifest.data}};
    try {
        MeshDocument mesh = load_complex(text);
        ValidationReport report = validate(mesh.complex, geometry);
        if (mesh.theta) {
            const auto deviations = check_c1(mesh.complex, *mesh.theta);
            for (std::size_t f = 0; f < deviations.size(); ++f)
                if (!(std::abs(deviations[f]) < kC1Tolerance))
                    report.violations.push_back("face " + std::to_string(f) + ": angle sum deviates from pi by " +
                                                sci(deviations[f]));
            doc["c1_deviations"] = deviations;
        }
        report.ok = report.violations.empty();
        doc["ok"] = report.ok;
        doc["euler_characteristic"] = report.euler_characteristic;
        doc["violations"] = report.violations;
        doc["num_vertices"] = mesh.complex.num_vertices();
        doc["num_edges"] = mesh.complex.num_edges();
        doc["num_faces"] = mesh.complex.num_faces();
        out << doc.dump(2) << "\n";
        return report.ok ? kSuccess : kMathFailure;
    } catch (const InvalidComplexError& e) {
        doc["ok"] = false;
        doc["violations"] = e.violations();
        doc["error"] = e.what();
        out << doc.dump(2) << "\n";
        return kMathFailure;
    } catch (const Error& e) {
        throw Exit{kIoFailure, e.what()};
    }
}

int cmd_check(const std::string& mesh_path, const std::string& target_spec, const std::string& geometry_name,
              Manifest& manifest, std::ostream& out) {
    Geometry geometry;
    try {
        geometry = parse_geometry(geometry_name);
    } catch (const Error& e) {
        throw Exit{kIoFailure, e.what()};
    }
    manifest.data["geometry"] = geometry_name;
    LoadedMesh mesh = load_mesh_for_solving(mesh_path, manifest);
    const TargetCurvature target = load_target(target_spec, mesh.complex.num_vertices(), manifest);
    if (mesh.complex.num_vertices() > kMaxEnumerationVertices)
        throw Exit{kScaleGuard, "attainability check needs N <= " + std::to_string(kMaxEnumerationVertices)};
    const AttainabilityReport a = check_target(mesh.complex, mesh.angles, target, geometry);
    json doc = attainability_json(a);
    doc["manifest"] = manifest.data;
    doc["c1_satisfied"] = satisfies_c1(check_c1(mesh.complex, mesh.angles));
    out << doc.dump(2) << "\n";
    return a.attainable ? kSuccess : kMathFailure;
}

int cmd_solve(const SolveOptions& o, Manifest& manifest, std::ostream& out) {
    SolverKind kind;
    try {
        kind = parse_solver(o.solver);
    } catch (const Error& e) {
        throw Exit{kIoFailure, e.what()};
    }
    const SolverConfig config = effective_config(o);
    manifest.data["geometry"] = o.geometry;
    manifest.data["solver"] = o.solver;
    manifest.data["config"] = config_json(config);
    Problem p = prepare(o, manifest);

    SolveReport report;
    try {
        report = run_solver(kind, p.mesh.complex, p.mesh.angles, p.target, p.r0, p.geometry, config);
    } catch (const PreconditionError& e) {
        throw Exit{kPrecondition, e.what()};
    } catch (const SolverError& e) {
        throw Exit{kMathFailure, e.what()};
    }

    if (o.trajectory_path) write_file(*o.trajectory_path, trajectory_csv(report, manifest));
    json doc = report_json(report);
    doc["manifest"] = manifest.data;
    doc["geometry"] = o.geometry;
    emit(out, o.report_path, doc);
    return report.converged ? kSuccess : kMathFailure;
}

int cmd_compare(const SolveOptions& o, Manifest& manifest, std::ostream& out) {
    const SolverConfig config = effective_config(o);
    manifest.data["geometry"] = o.geometry;
    manifest.data["solver"] = "calabi,ricci,newton";
    manifest.data["config"] = config_json(config);
    Problem p = prepare(o, manifest);

    std::map<std::string, SolveReport> reports;
    try {
        for (SolverKind kind : {SolverKind::Calabi, SolverKind::Ricci, SolverKind::Newton})
            reports[std::string(to_string(kind))] =
                run_solver(kind, p.mesh.complex, p.mesh.angles, p.target, p.r0, p.geometry, config);
    } catch (const PreconditionError& e) {
        throw Exit{kPrecondition, e.what()};
    } catch (const SolverError& e) {
        throw Exit{kMathFailure, e.what()};
    }

    json doc = {{"manifest", manifest.data}, {"geometry", o.geometry}, {"tolerance", kAgreementTolerance}};
    bool ok = true;
    for (const auto& [name, r] : reports) {
        doc["solvers"][name] = {{"converged", r.converged},
                                {"status", std::string(to_string(r.status))},
                                {"steps", r.steps},
                                {"final_residual", r.final_residual},
                                {"final_r", to_json(r.final_r.values())}};
        ok = ok && r.converged;
    }
    const std::pair<const char*, const char*> pairs[] = {{"calabi", "newton"}, {"calabi", "ricci"}, {"newton", "ricci"}};
    for (const auto& [a, b] : pairs) {
        const double distance =
            (normalized_radii(reports[a], p.geometry) - normalized_radii(reports[b], p.geometry)).cwiseAbs().maxCoeff();
        doc["distances"][std::string(a) + "-" + b] = distance;
        ok = ok && distance <= kAgreementTolerance;
    }
    doc["agree"] = ok;
    emit(out, o.report_path, doc);
    return ok ? kSuccess : kMathFailure;
}

struct LayoutOptions {
    std::string mesh;
    std::string geometry;
    std::optional<std::string> radii;
    double uniform = 1.0;
    std::string output;
    SvgOptions svg;
    bool no_circles = false;
};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

int cmd_layout(const LayoutOptions& o, Manifest& manifest) {
    Geometry geometry;
    try {
        geometry = parse_geometry(o.geometry);
    } catch (const Error& e) {
        throw Exit{kIoFailure, e.what()};
    }
    manifest.data["geometry"] = o.geometry;
    const std::string text = read_file(o.mesh);
    manifest.input("mesh", o.mesh, text);
    std::optional<MeshDocument> loaded;
    try {
        loaded = load_complex(text);
    } catch (const Error& e) {
        throw Exit{kIoFailure, e.what()};
    }
    MeshDocument& doc = *loaded;
    if (!doc.theta) throw Exit{kIoFailure, "mesh '" + o.mesh + "' has no theta array"};
    const int n = doc.complex.num_vertices();
    Vector r = o.radii ? load_radii(*o.radii, n, manifest) : Vector::Constant(n, o.uniform);

    std::string svg;
    try {
        const DevelopedLayout layout = develop(doc.complex, *doc.theta, RadiusVector(std::move(r)), geometry);
        SvgOptions svg_options = o.svg;
        svg_options.draw_circles = !o.no_circles;
        svg = to_svg(layout, svg_options);
    } catch (const DomainError& e) {
        throw Exit{kIoFailure, e.what()};
    }
    // Manifest goes into <metadata>, right after the root element opens.
    const auto pos = svg.find(">\n", svg.find("<svg")) + 2;
    svg.insert(pos, "<metadata>" + xml_escape(json{{"manifest", manifest.data}}.dump()) + "</metadata>\n");
    write_file(o.output, svg);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ideal circle pattern metrics via combinatorial curvature flows", "circlepat"};
    app.require_subcommand(1);

    std::string command_echo;
    for (std::size_t i = 0; i < args.size(); ++i) command_echo += (i ? " " : "") + args[i];
    Manifest manifest;
    manifest.data["command"] = command_echo;
    manifest.data["version"] = CIRCLEPAT_VERSION;
    manifest.data["inputs"] = json::object();

    std::string mesh_path, geometry, target = "zero";
    auto* validate_cmd = app.add_subcommand("validate", "Check the mesh structure and face angle sums");
    validate_cmd->add_option("mesh", mesh_path, "Mesh JSON file")->required();
    validate_cmd->add_option("--geometry", geometry, "hyperbolic or euclidean")->required();

    auto* check_cmd = app.add_subcommand("check", "Decide whether a target curvature is attainable");
    check_cmd->add_option("mesh", mesh_path, "Mesh JSON file")->required();
    check_cmd->add_option("--target", target, "JSON array file or 'zero'");
    check_cmd->add_option("--geometry", geometry, "hyperbolic or euclidean")->required();

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Flow to the prescribed curvature");
    solve_cmd->add_option("mesh", solve.mesh, "Mesh JSON file")->required();
    solve_cmd->add_option("--target", solve.target, "JSON array file or 'zero'");
    solve_cmd->add_option("--geometry", solve.geometry, "hyperbolic or euclidean")->required();
    solve_cmd->add_option("--solver", solve.solver, "calabi, ricci or newton");
    solve_cmd->add_option("--report", solve.report_path, "Write the JSON report here instead of stdout");
    solve_cmd->add_option("--trajectory", solve.trajectory_path, "Write the trajectory CSV here");
    solve_cmd->add_flag("--potential", solve.potential, "Add the Lyapunov function to the trajectory");
    add_init_flags(*solve_cmd, solve);
    add_config_flags(*solve_cmd, solve);

    SolveOptions compare;
    auto* compare_cmd = app.add_subcommand("compare", "Run all three solvers and compare their limits");
    compare_cmd->add_option("mesh", compare.mesh, "Mesh JSON file")->required();
    compare_cmd->add_option("--target", compare.target, "JSON array file or 'zero'");
    compare_cmd->add_option("--geometry", compare.geometry, "hyperbolic or euclidean")->required();
    compare_cmd->add_option("--report", compare.report_path, "Write the JSON comparison here instead of stdout");
    add_init_flags(*compare_cmd, compare);
    add_config_flags(*compare_cmd, compare);

    LayoutOptions layout;
    auto* layout_cmd = app.add_subcommand("layout", "Develop the metric and draw it as SVG");
    layout_cmd->add_option("mesh", layout.mesh, "Mesh JSON file")->required();
    layout_cmd->add_option("--geometry", layout.geometry, "hyperbolic or euclidean")->required();
    layout_cmd->add_option("--radii", layout.radii, "Radii (JSON array or solve report)");
    layout_cmd->add_option("--uniform", layout.uniform, "Uniform radius when --radii is absent");
    layout_cmd->add_option("--output,-o", layout.output, "SVG output path")->required();
    layout_cmd->add_option("--scale", layout.svg.scale, "Pixels per chart unit");
    layout_cmd->add_option("--stroke-width", layout.svg.stroke_width, "Stroke width in pixels");
    layout_cmd->add_option("--padding", layout.svg.padding, "Margin in pixels");
    layout_cmd->add_flag("--no-circles", layout.no_circles, "Omit the vertex circles");

    try {
        if (const auto tol = residual_tol_from_env()) solve.config.residual_tol = compare.config.residual_tol = *tol;

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();  // program name
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kSuccess;
        } catch (const CLI::ParseError& e) {
            err << e.what() << "\n";
            return kIoFailure;
        }

        if (validate_cmd->parsed()) return cmd_validate(mesh_path, geometry, manifest, out);
        if (check_cmd->parsed()) return cmd_check(mesh_path, target, geometry, manifest, out);
        if (solve_cmd->parsed()) return cmd_solve(solve, manifest, out);
        if (compare_cmd->parsed()) return cmd_compare(compare, manifest, out);
        if (layout_cmd->parsed()) return cmd_layout(layout, manifest);
        return kIoFailure;
    } catch (const Exit& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    }
}

}  // namespace circlepat::cli
