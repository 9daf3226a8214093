#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cheeger/io.hpp"
#include "cheeger/pipeline.hpp"

using namespace cheeger;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(CLI_BIN) + " " + args + " 2>&1";
    std::array<char, 256> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path make_temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("cheeger_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

const char* kSmallDisk =
    R"({"kind": "disk", "center": [0, 0], "r": 1.0, "resolution": 48})";

}  // namespace

TEST_CASE("domain spec JSON parsing") {
    DomainSpec d = parse_domain_spec(kSmallDisk);
    CHECK(d.kind == DomainSpec::Kind::disk);
    CHECK(d.r == 1.0);
    CHECK(d.resolution == 48);

    DomainSpec l = parse_domain_spec(
        R"({"kind": "l_shape", "w": 2, "h": 2, "notch": 1, "resolution": 64})");
    CHECK(l.to_polygon().area() == doctest::Approx(3.0));

    DomainSpec p = parse_domain_spec(
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]], "resolution": 32})");
    CHECK(p.to_polygon().area() == doctest::Approx(0.5));

    CHECK_THROWS_AS(parse_domain_spec("{nope"), parse_error);
    CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "blob", "resolution": 32})"), parse_error);
    CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "disk", "r": 1})"), parse_error);

    // round trip
    DomainSpec back = parse_domain_spec(domain_spec_to_json(l));
    CHECK(back.kind == DomainSpec::Kind::l_shape);
    CHECK(back.notch == doctest::Approx(1.0));
}

TEST_CASE("DIMACS round trip") {
    Network net{4, 0, 3, {{0, 1, 3}, {0, 2, 2}, {1, 3, 2}, {2, 3, 3}, {1, 2, 1}}};
    std::ostringstream out;
    write_dimacs(out, net);
    std::istringstream in(out.str());
    Network back = parse_dimacs(in);
    CHECK(back.node_count == 4);
    CHECK(back.source == 0);
    CHECK(back.sink == 3);
    REQUIRE(back.arcs.size() == 5);
    CHECK(back.arcs[4].capacity == doctest::Approx(1.0));

    std::istringstream bad("p max 2 1\nn 1 s\nn 2 t\n");
    CHECK_THROWS_AS(parse_dimacs(bad), parse_error);
}

TEST_CASE("vector field CSV round trip and dimension mismatch") {
    DomainSpec spec = parse_domain_spec(kSmallDisk);
    GridDomain g = rasterize(spec);
    const auto& geom = g.geom();
    VectorField v{geom, std::vector<double>(geom.cells(), 0.0),
                  std::vector<double>(geom.cells(), 0.0)};
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i)
            if (g.inside(i, j)) {
                Point c = geom.center(i, j);
                v.vx[geom.index(i, j)] = c.x;
                v.vy[geom.index(i, j)] = -c.y;
            }
    std::ostringstream out;
    write_vector_csv(out, v, g);
    std::istringstream in(out.str());
    VectorField back = read_vector_csv(in, g);
    for (std::size_t k = 0; k < v.vx.size(); ++k) {
        CHECK(back.vx[k] == doctest::Approx(v.vx[k]).epsilon(1e-14));
        CHECK(back.vy[k] == doctest::Approx(v.vy[k]).epsilon(1e-14));
    }

    DomainSpec other = spec;
    other.resolution = 32;
    GridDomain g2 = rasterize(other);
    std::istringstream in2(out.str());
    CHECK_THROWS_AS(read_vector_csv(in2, g2), dimension_mismatch_error);
}

TEST_CASE("analysis report JSON round-trips and is deterministic") {
    DomainSpec spec = parse_domain_spec(kSmallDisk);
    AnalyzeOptions opt;
    opt.tol_h = 0.02;
    opt.levels = 24;
    AnalysisReport a = analyze_domain(spec, opt);
    AnalysisReport b = analyze_domain(spec, opt);

    json ja = json::parse(report_to_json(a));
    json jb = json::parse(report_to_json(b));
    CHECK(json::parse(ja.dump()) == ja);  // parse(serialize(r)) == r
    ja.erase("timings");
    jb.erase("timings");
    CHECK(ja == jb);

    CHECK(ja["cheeger"].contains("h_lower"));
    CHECK(ja["cheeger"].contains("h_upper"));
    CHECK(ja["cheeger"]["stencil"]["neighborhood"] == 8);
    CHECK(ja["cheeger"]["certificate_stats"].contains("max_speed"));
    CHECK(ja["cheeger"]["certificate_stats"].contains("min_div"));
    CHECK(ja["spectral"].contains("lambda"));
    for (const auto& c : ja["checks"]) {
        CHECK(c.contains("lhs"));
        CHECK(c.contains("rhs"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
}

TEST_CASE("cli analyze") {
    fs::path dir = make_temp_dir("analyze");
    write_file(dir / "disk.json", kSmallDisk);
    fs::path out = dir / "out";
    auto r = run_cli("analyze " + (dir / "disk.json").string() + " --out " + out.string() +
                     " --tol-h 0.02 --levels 24");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "analysis.svg"));
    CHECK(fs::exists(out / "certificate.csv"));
    CHECK(fs::exists(out / "eigenfunction.csv"));

    std::ifstream in(out / "report.json");
    std::stringstream ss;
    ss << in.rdbuf();
    json rep = json::parse(ss.str());
    double h_lo = rep["cheeger"]["h_lower"].get<double>();
    double h_hi = rep["cheeger"]["h_upper"].get<double>();
    CHECK(h_lo > 1.7);
    CHECK(h_hi < 2.3);
    CHECK(h_lo <= h_hi);

    // nothing written outside the output directory
    int entries = 0;
    for (auto const& e : fs::directory_iterator(dir)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 2);  // disk.json + out/
}

TEST_CASE("cli analyze rejects malformed input") {
    fs::path dir = make_temp_dir("badspec");
    write_file(dir / "bad.json", "{not json");
    auto r = run_cli("analyze " + (dir / "bad.json").string() + " --out " +
                     (dir / "out").string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli maxflow") {
    auto five = run_cli(std::string("maxflow ") + FIXTURES_DIR + "/example5.dimacs");
    CHECK(five.exit_code == 0);
    CHECK(five.output.find("value 5") != std::string::npos);
    CHECK(five.output.find("cut 1") != std::string::npos);

    auto single = run_cli(std::string("maxflow ") + FIXTURES_DIR + "/single_arc.dimacs");
    CHECK(single.exit_code == 0);
    CHECK(single.output.find("value 7") != std::string::npos);

    auto disc = run_cli(std::string("maxflow ") + FIXTURES_DIR + "/disconnected.dimacs");
    CHECK(disc.exit_code == 0);
    CHECK(disc.output.find("value 0") != std::string::npos);

    auto bad = run_cli(std::string("maxflow ") + FIXTURES_DIR + "/malformed.dimacs");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli certify") {
    fs::path dir = make_temp_dir("certify");
    write_file(dir / "disk.json", kSmallDisk);

    DomainSpec spec = parse_domain_spec(kSmallDisk);
    GridDomain g = rasterize(spec);
    const auto& geom = g.geom();
    VectorField radial{geom, std::vector<double>(geom.cells(), 0.0),
                       std::vector<double>(geom.cells(), 0.0)};
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i)
            if (g.inside(i, j)) {
                Point c = geom.center(i, j);
                radial.vx[geom.index(i, j)] = c.x;
                radial.vy[geom.index(i, j)] = c.y;
            }
    {
        std::ofstream out(dir / "field.csv");
        write_vector_csv(out, radial, g);
    }

    std::string base = "certify " + (dir / "field.csv").string() + " --spec " +
                       (dir / "disk.json").string();
    auto pass = run_cli(base + " --h 2.0");
    CHECK(pass.exit_code == 0);
    CHECK(pass.output.find("verdict pass") != std::string::npos);

    auto fail = run_cli(base + " --h 2.5");
    CHECK(fail.exit_code == 1);
    CHECK(fail.output.find("verdict fail") != std::string::npos);

    auto mismatch = run_cli(base + " --h 2.0 --resolution 32");
    CHECK(mismatch.exit_code == 2);
}

TEST_CASE("cli suite") {
    fs::path dir = make_temp_dir("suite");
    fs::path corpus = dir / "corpus";
    fs::create_directories(corpus);
    write_file(corpus / "disk.json", kSmallDisk);
    auto r = run_cli("suite " + corpus.string() + " --out " + (dir / "out").string() +
                     " --tol-h 0.02 --levels 24");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("domain,check,lhs,rhs,tolerance,verdict") != std::string::npos);
    CHECK(r.output.find("disk,cheeger_inequality") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "suite.csv"));

    fs::path empty = dir / "empty";
    fs::create_directories(empty);
    auto warn = run_cli("suite " + empty.string());
    CHECK(warn.exit_code == 0);
    CHECK(warn.output.find("warning") != std::string::npos);

    write_file(corpus / "broken.json", "{oops");
    auto bad = run_cli("suite " + corpus.string() + " --tol-h 0.02 --levels 24");
    CHECK(bad.exit_code != 0);
}

TEST_CASE("cheeger result JSON shape") {
    DomainSpec spec = parse_domain_spec(kSmallDisk);
    GridDomain g = rasterize(spec);
    CheegerResult r = cheeger_constant(g, CutMetricStencil::eight(), 0.02);
    json j = json::parse(cheeger_result_to_json(r, 48, CutMetricStencil::eight()));
    CHECK(j["h_lower"].is_number());
    CHECK(j["h_upper"].is_number());
    CHECK(j["resolution"] == 48);
    CHECK(j["cheeger_set"].is_array());
    CHECK(j["cheeger_set"].size() >= 3);
    CHECK(j["certificate_stats"]["max_speed"].is_number());
}
