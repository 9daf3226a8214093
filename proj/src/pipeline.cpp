#include "cheeger/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace cheeger {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

bool AnalysisReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

AnalysisReport analyze_domain(const DomainSpec& spec, const AnalyzeOptions& opt) {
    auto t_total = std::chrono::steady_clock::now();
    AnalysisReport rep;
    rep.spec = spec;
    rep.resolution = opt.resolution > 0 ? opt.resolution : spec.resolution;
    rep.stencil = opt.stencil;

    DomainSpec run = spec;
    run.resolution = rep.resolution;

    auto t0 = std::chrono::steady_clock::now();
    Polygon poly = run.to_polygon();
    GridDomain grid = rasterize(run);
    rep.timings_sec["rasterize"] = seconds_since(t0);

    rep.area = poly.area();
    rep.perimeter = poly.perimeter();
    rep.rho = polygon_inradius(poly);
    rep.rho_tilde = reduced_inradius(rep.rho, rep.area);

    t0 = std::chrono::steady_clock::now();
    ScalarField phi = distance_to_boundary(poly, grid);
    VectorField makai = makai_field(phi, grid, rep.rho);
    rep.makai_divergence = divergence_integral(makai, grid);
    rep.coarea_defect = coarea_check(phi, grid, opt.levels);
    rep.finalest = finalest_check(phi, grid, poly, rep.rho, opt.levels);
    rep.bonnesen = bonnesen_check(poly);
    rep.timings_sec["distance_field"] = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    rep.cheeger = cheeger_constant(grid, opt.stencil, opt.tol_h);
    rep.subdomains = subdomain_bound_suite(grid, 24, rep.rho);
    rep.timings_sec["cheeger"] = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    rep.eigen = smallest_eigenvalue(assemble(grid));
    rep.timings_sec["spectral"] = seconds_since(t0);

    // Inequality suite; every entry carries both sides and its slack.
    auto add = [&](const std::string& name, double lhs, double rhs, double tol,
                   bool pass) {
        rep.checks.push_back({name, lhs, rhs, tol, pass});
    };

    auto ci = check_cheeger_inequality(rep.eigen.lambda, rep.cheeger.h_lower);
    add("cheeger_inequality", ci.lhs, ci.rhs, 1e-12, ci.holds);

    auto mk = check_makai(rep.eigen.lambda, rep.rho_tilde);
    add("makai_osserman", mk.lhs, mk.rhs, 1e-12, mk.holds);

    add("bonnesen", rep.bonnesen.lhs, rep.bonnesen.rhs, 1e-9 * rep.bonnesen.rhs,
        rep.bonnesen.holds);

    double coarea_bound = opt.coarea_bound > 0.0
                              ? opt.coarea_bound
                              : std::max(0.03, 2.0 * grid.dx() / rep.rho);
    add("coarea_identity", rep.coarea_defect, 0.0, coarea_bound,
        rep.coarea_defect <= coarea_bound);

    double slack_fin = default_slack(rep.finalest.bound, grid.dx(), rep.perimeter / 10.0);
    add("distance_laplacian_bound", rep.finalest.value, rep.finalest.bound, slack_fin,
        rep.finalest.holds);

    double div_rhs = rep.area / rep.rho_tilde;
    add("divergence_integral", rep.makai_divergence.interior_sum, div_rhs,
        opt.divergence_slack * div_rhs,
        rep.makai_divergence.interior_sum >= div_rhs * (1.0 - opt.divergence_slack));

    const auto& cert = rep.cheeger.certificate_report;
    add("certificate_speed", cert.max_speed, 1.0, cert.tolerance,
        cert.max_speed <= 1.0 + cert.tolerance);
    add("certificate_divergence", cert.min_div, rep.cheeger.h_lower, cert.tolerance,
        cert.min_div >= rep.cheeger.h_lower - cert.tolerance);

    add("subdomain_quotient_bound", rep.subdomains.bound + rep.subdomains.min_margin,
        rep.subdomains.bound, rep.subdomains.tolerance, rep.subdomains.all_hold);

    add("bracketing", rep.cheeger.h_lower, rep.cheeger.h_upper, 1e-12,
        rep.cheeger.h_lower <= rep.cheeger.h_upper + 1e-12);

    rep.timings_sec["total"] = seconds_since(t_total);
    return rep;
}

std::string report_to_json(const AnalysisReport& rep) {
    json j;
    j["domain"] = json::parse(domain_spec_to_json(rep.spec));
    j["resolution"] = rep.resolution;
    j["stencil"] = {{"neighborhood", rep.stencil.neighborhood},
                    {"axis_weight", rep.stencil.axis_weight},
                    {"diag_weight", rep.stencil.diag_weight}};
    j["geometry"] = {{"area", rep.area},
                     {"perimeter", rep.perimeter},
                     {"inradius", rep.rho},
                     {"reduced_inradius", rep.rho_tilde}};
    j["cheeger"] = json::parse(cheeger_result_to_json(rep.cheeger, rep.resolution, rep.stencil));
    j["spectral"] = {{"lambda", rep.eigen.lambda},
                     {"residual", rep.eigen.residual},
                     {"iterations", rep.eigen.iterations}};
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    j["checks"] = checks;
    json timings;
    for (const auto& [k, v] : rep.timings_sec) timings[k] = v;
    j["timings"] = timings;
    return j.dump(2);
}

// ── CLI commands ────────────────────────────────────────────────────

int cmd_analyze(const std::string& spec_path, const std::string& out_dir,
                const AnalyzeOptions& opt) {
    DomainSpec spec = load_domain_spec(spec_path);
    AnalysisReport rep = analyze_domain(spec, opt);

    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "report.json");
        out << report_to_json(rep) << '\n';
    }
    {
        DomainSpec run = spec;
        run.resolution = rep.resolution;
        GridDomain grid = rasterize(run);
        std::ofstream svg(fs::path(out_dir) / "analysis.svg");
        svg << render_svg(grid, run.to_polygon(), rep.cheeger.cheeger_set,
                          rep.cheeger.certificate, rep.eigen.eigenfunction);
        std::ofstream cert(fs::path(out_dir) / "certificate.csv");
        write_vector_csv(cert, rep.cheeger.certificate, grid);
        std::ofstream eig(fs::path(out_dir) / "eigenfunction.csv");
        write_scalar_csv(eig, rep.eigen.eigenfunction, grid);
    }

    std::cout << "h_lower=" << rep.cheeger.h_lower << " h_upper=" << rep.cheeger.h_upper
              << " lambda=" << rep.eigen.lambda << '\n';
    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << " lhs=" << c.lhs
                  << " rhs=" << c.rhs << " tol=" << c.tolerance << '\n';
    return rep.all_pass() ? 0 : 1;
}

int cmd_maxflow(const std::string& dimacs_path) {
    Network net = load_dimacs(dimacs_path);
    MaxFlowResult r = max_flow(net);
    Cut cut = min_cut(net, r.flow);
    std::cout << "value " << r.value << '\n' << "cut";
    for (int v = 0; v < net.node_count; ++v)
        if (cut.contains(v)) std::cout << ' ' << v + 1;
    std::cout << '\n';
    return 0;
}

int cmd_certify(const std::string& field_csv, double h, const std::string& spec_path,
                const AnalyzeOptions& opt) {
    DomainSpec spec = load_domain_spec(spec_path);
    if (opt.resolution > 0) spec.resolution = opt.resolution;
    GridDomain grid = rasterize(spec);
    std::ifstream in(field_csv);
    if (!in) throw parse_error("cannot open field CSV '" + field_csv + "'");
    VectorField v = read_vector_csv(in, grid);
    CertificateReport rep =
        certify_lower_bound(v, grid, h, default_certificate_tolerance(grid.dx()));
    std::cout << "h_claimed " << rep.h_claimed << '\n'
              << "max_speed " << rep.max_speed << " (limit 1 + " << rep.tolerance << ")\n"
              << "min_div " << rep.min_div << " (required >= " << rep.h_claimed << " - "
              << rep.tolerance << ")\n"
              << "verdict " << (rep.pass ? "pass" : "fail") << '\n';
    if (!rep.pass && rep.min_div < rep.h_claimed - rep.tolerance)
        std::cout << "note: pointwise divergence drops below the claimed rate\n";
    return rep.pass ? 0 : 1;
}

int cmd_suite(const std::string& corpus_dir, const std::string& out_dir,
              const AnalyzeOptions& opt) {
    std::vector<fs::path> specs;
    if (fs::exists(corpus_dir))
        for (const auto& e : fs::directory_iterator(corpus_dir))
            if (e.path().extension() == ".json") specs.push_back(e.path());
    std::sort(specs.begin(), specs.end());
    if (specs.empty()) {
        std::cerr << "warning: no domain specs found in '" << corpus_dir << "'\n";
        return 0;
    }

    std::ostringstream csv;
    csv << "domain,check,lhs,rhs,tolerance,verdict\n";
    bool any_fail = false;
    for (const auto& path : specs) {
        DomainSpec spec = load_domain_spec(path.string());
        AnalysisReport rep = analyze_domain(spec, opt);
        for (const auto& c : rep.checks) {
            csv << path.stem().string() << ',' << c.name << ',' << c.lhs << ',' << c.rhs
                << ',' << c.tolerance << ',' << (c.pass ? "pass" : "fail") << '\n';
            if (!c.pass) any_fail = true;
        }
    }
    std::cout << csv.str();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "suite.csv");
        out << csv.str();
    }
    return any_fail ? 1 : 0;
}

}  // namespace cheeger
