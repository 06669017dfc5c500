#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "circlepat/cli.hpp"
#include "circlepat/surface_complex.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace circlepat;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "circlepat");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CIRCLEPAT_DATA_DIR) + "/" + name; }

fs::path scratch() {
    const fs::path dir = fs::current_path() / "cli_scratch";
    fs::create_directories(dir);
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string genus2_file(double spoke, double boundary, const std::string& name) {
    const auto f = testing::genus2_with(spoke, boundary);
    return write(name, dump_complex(f.complex, f.angles));
}

/// Triangulated m x n torus grid, every theta = pi/3, so uniform radii are flat.
std::string grid_torus_file(int m, int n, const std::string& name) {
    const auto vid = [&](int i, int j) { return ((i % m + m) % m) + m * ((j % n + n) % n); };
    json edges = json::array(), faces = json::array();
    const auto h = [&](int i, int j) { return 3 * vid(i, j); };
    const auto v = [&](int i, int j) { return 3 * vid(i, j) + 1; };
    const auto d = [&](int i, int j) { return 3 * vid(i, j) + 2; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) {
            edges.push_back({vid(i, j), vid(i + 1, j)});
            edges.push_back({vid(i, j), vid(i, j + 1)});
            edges.push_back({vid(i, j), vid(i + 1, j + 1)});
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) {
            faces.push_back({{h(i, j), 1}, {v(i + 1, j), 1}, {d(i, j), -1}});
            faces.push_back({{d(i, j), 1}, {h(i, j + 1), -1}, {v(i, j), -1}});
        }
    json doc = {{"num_vertices", m * n}, {"edges", edges}, {"faces", faces},
                {"theta", std::vector<double>(edges.size(), kPi / 3)}};
    return write(name, doc.dump());
}

std::vector<std::vector<double>> read_csv(const std::string& path, std::vector<std::string>& header) {
    std::ifstream in(path);
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        if (header.empty()) {
            while (std::getline(ss, cell, ',')) header.push_back(cell);
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("validate") {
    CHECK(invoke({"validate", data("torus1.json"), "--geometry", "euclidean"}).code == 0);
    const Result hyp = invoke({"validate", data("torus1.json"), "--geometry", "hyperbolic"});
    CHECK(hyp.code == 1);
    const json doc = json::parse(hyp.out);
    CHECK(doc["ok"] == false);
    CHECK(doc["euler_characteristic"] == 0);
    CHECK(invoke({"validate", data("genus2.json"), "--geometry", "hyperbolic"}).code == 0);
    CHECK(invoke({"validate", "no/such/file.json", "--geometry", "euclidean"}).code == 2);
    CHECK(invoke({"validate", data("torus1.json"), "--geometry", "spherical"}).code == 2);

    const std::string broken = write("three_faces.json", R"({
      "num_vertices": 1, "edges": [[0, 0], [0, 0], [0, 0]],
      "faces": [[[0, 1], [1, 1], [2, -1]], [[2, 1], [0, -1], [1, -1]], [[0, 1], [1, 1], [2, -1]]]})");
    CHECK(invoke({"validate", broken, "--geometry", "euclidean"}).code == 1);
    CHECK(invoke({"validate", write("garbage.json", "{"), "--geometry", "euclidean"}).code == 2);

    // Angles that break the face sum condition fail validation.
    const Result bent = invoke({"validate", genus2_file(kPi / 5, kPi / 2, "genus2_bent.json"), "--geometry", "hyperbolic"});
    CHECK(bent.code == 1);
    CHECK(json::parse(bent.out)["violations"].size() == 8);
}

TEST_CASE("check") {
    const Result ok = invoke({"check", data("genus2.json"), "--geometry", "hyperbolic"});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["attainable"] == true);

    const Result edge = invoke({"check", genus2_file(kPi / 8, 3 * kPi / 4, "genus2_edge.json"), "--geometry", "hyperbolic"});
    CHECK(edge.code == 1);
    const json e = json::parse(edge.out);
    CHECK(e["failed_condition"] == "subset-inequality");
    CHECK(e["witness_subset"] == json::array({0}));

    const Result high = invoke({"check", data("genus2.json"), "--geometry", "hyperbolic", "--target",
                             write("target_high.json", "[0.0, 7.0]")});
    CHECK(high.code == 1);
    CHECK(json::parse(high.out)["failed_condition"] == "upper-bound");

    CHECK(invoke({"check", data("genus2.json"), "--geometry", "hyperbolic", "--target", write("target_short.json", "[0.0]")})
              .code == 2);
    CHECK(invoke({"check", grid_torus_file(6, 5, "grid30.json"), "--geometry", "euclidean"}).code == 3);
}

TEST_CASE("solve") {
    const std::string report = (scratch() / "calabi.json").string();
    const Result calabi = invoke({"solve", data("genus2.json"), "--geometry", "hyperbolic", "--report", report});
    CHECK(calabi.code == 0);
    const json a = json::parse(slurp(report));
    CHECK(a["converged"] == true);
    CHECK(a["final_residual"].get<double>() <= 1e-10);
    CHECK(a["manifest"]["inputs"]["mesh"]["sha256"].get<std::string>().size() == 64);
    CHECK(a["manifest"]["solver"] == "calabi");

    const Result ricci = invoke({"solve", data("genus2.json"), "--geometry", "hyperbolic", "--solver", "ricci"});
    CHECK(ricci.code == 0);
    const json b = json::parse(ricci.out);
    for (int i = 0; i < 2; ++i)
        CHECK(std::abs(a["final_r"][i].get<double>() - b["final_r"][i].get<double>()) < 1e-8);

    // Reports are pretty-printed with sorted keys.
    CHECK(ricci.out.find("{\n  \"converged\"") == 0);
}

TEST_CASE("solve: Euclidean trajectory conserves sum_u") {
    const std::string csv = (scratch() / "torus2.csv").string();
    const std::string target = write("torus2_target.json", "[0.4, -0.4]");
    const Result r = invoke({"solve", data("torus2.json"), "--geometry", "euclidean", "--target", target, "--random-init",
                          "--seed", "5", "--trajectory", csv, "--potential"});
    CHECK(r.code == 0);
    std::vector<std::string> header;
    const auto rows = read_csv(csv, header);
    REQUIRE(header == std::vector<std::string>{"t", "residual", "energy", "sum_u", "lambda"});
    REQUIRE(rows.size() >= 2);
    for (const auto& row : rows) CHECK(std::abs(row[3] - rows.front()[3]) < 1e-9);
    CHECK(slurp(csv).rfind("# {\"manifest\"", 0) == 0);
    CHECK(json::parse(r.out)["manifest"]["seed"] == 5);
}

TEST_CASE("solve: error mapping") {
    // Wrong geometry for chi and non-attainable targets are precondition failures.
    CHECK(invoke({"solve", data("genus2.json"), "--geometry", "euclidean"}).code == 4);
    CHECK(invoke({"solve", genus2_file(kPi / 8, 3 * kPi / 4, "genus2_edge2.json"), "--geometry", "hyperbolic"}).code == 4);
    CHECK(invoke({"solve", data("genus2.json"), "--geometry", "hyperbolic", "--solver", "euler"}).code == 2);
    CHECK(invoke({"solve", data("genus2.json"), "--geometry", "hyperbolic", "--max-steps", "2"}).code == 1);
    CHECK(invoke({"solve", grid_torus_file(6, 5, "grid30b.json"), "--geometry", "euclidean"}).code == 3);
    CHECK(invoke({"solve", data("genus2.json")}).code == 2);
}

TEST_CASE("solve: residual tolerance from the environment") {
    ::setenv(cli::kResidualTolEnv, "1e-6", 1);
    const Result r = invoke({"solve", data("genus2.json"), "--geometry", "hyperbolic"});
    ::unsetenv(cli::kResidualTolEnv);
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["manifest"]["config"]["residual_tol"] == 1e-6);

    ::setenv(cli::kResidualTolEnv, "-3", 1);
    CHECK(invoke({"solve", data("genus2.json"), "--geometry", "hyperbolic"}).code == 2);
    ::unsetenv(cli::kResidualTolEnv);
}

TEST_CASE("layout") {
    // The manifest echoes the command line, so repeat the exact same invocation.
    const std::string svg = (scratch() / "torus.svg").string();
    CHECK(invoke({"layout", data("torus1.json"), "--geometry", "euclidean", "--uniform", "1", "-o", svg}).code == 0);
    const std::string text = slurp(svg);
    CHECK(invoke({"layout", data("torus1.json"), "--geometry", "euclidean", "--uniform", "1", "-o", svg}).code == 0);
    CHECK(text == slurp(svg));
    CHECK(text.find("<metadata>") != std::string::npos);

    CHECK(invoke({"layout", data("torus1.json"), "--geometry", "euclidean", "--radii", write("bad_radii.json", "[1, 2]"),
               "-o", (scratch() / "bad.svg").string()})
              .code == 2);

    // A solve report is accepted as the radii source.
    const std::string report = (scratch() / "for_layout.json").string();
    REQUIRE(invoke({"solve", data("genus2.json"), "--geometry", "hyperbolic", "--solver", "newton", "--report", report}).code ==
            0);
    const std::string disk = (scratch() / "genus2.svg").string();
    CHECK(invoke({"layout", data("genus2.json"), "--geometry", "hyperbolic", "--radii", report, "-o", disk}).code == 0);
    CHECK(slurp(disk).find("<circle") != std::string::npos);
}

TEST_CASE("compare") {
    const Result r = invoke({"compare", data("genus2.json"), "--geometry", "hyperbolic"});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["agree"] == true);
    CHECK(doc["solvers"].size() == 3);
    for (const auto& [name, s] : doc["solvers"].items()) CHECK(s["converged"] == true);

    CHECK(invoke({"compare", genus2_file(kPi / 8, 3 * kPi / 4, "genus2_edge3.json"), "--geometry", "hyperbolic"}).code == 4);

    const std::string grid = grid_torus_file(6, 5, "grid30c.json");
    CHECK(invoke({"compare", grid, "--geometry", "euclidean"}).code == 3);
    const Result unguarded = invoke({"compare", grid, "--geometry", "euclidean", "--skip-attainability"});
    CHECK(unguarded.code == 0);
    CHECK(json::parse(unguarded.out)["manifest"]["config"]["check_attainability"] == false);
}

TEST_CASE("usage errors") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}
