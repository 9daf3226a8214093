#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cheeger/pipeline.hpp"

namespace {

cheeger::CutMetricStencil stencil_from_flag(int n) {
    return n == 4 ? cheeger::CutMetricStencil::four() : cheeger::CutMetricStencil::eight();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isoperimetric and spectral analysis of planar domains"};
    app.require_subcommand(1);

    std::string spec_path, out_dir = "out", dimacs_path, field_csv, corpus_dir;
    int resolution = 0;
    int stencil = 8;
    double tol_h = 0.005;
    int levels = 64;
    double h_claimed = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--resolution", resolution, "cells across the longer bbox side");
        cmd->add_option("--stencil", stencil, "cut-metric neighborhood (4 or 8)")
            ->check(CLI::IsMember({4, 8}));
        cmd->add_option("--tol-h", tol_h, "bisection tolerance for the Cheeger bracket");
        cmd->add_option("--levels", levels, "level count for coarea/threshold sweeps");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "run the full pipeline on one domain");
    analyze->add_option("spec", spec_path, "domain spec JSON")->required();
    analyze->add_option("--out", out_dir, "output directory");
    add_common(analyze);

    CLI::App* maxflow = app.add_subcommand("maxflow", "solve a DIMACS max-flow instance");
    maxflow->add_option("dimacs", dimacs_path, "DIMACS max-flow file")->required();

    CLI::App* certify = app.add_subcommand("certify", "check a divergence certificate field");
    certify->set_help_flag("--help", "print help");
    certify->add_option("field", field_csv, "vector field CSV (x,y,vx,vy)")->required();
    certify->add_option("--h", h_claimed, "claimed lower bound")->required();
    certify->add_option("--spec", spec_path, "domain spec JSON")->required();
    add_common(certify);

    CLI::App* suite = app.add_subcommand("suite", "run all checks over a corpus directory");
    suite->add_option("corpus", corpus_dir, "directory of domain spec JSON files")->required();
    suite->add_option("--out", out_dir, "output directory for the CSV table");
    add_common(suite);

    CLI11_PARSE(app, argc, argv);

    cheeger::AnalyzeOptions opt;
    opt.resolution = resolution;
    opt.stencil = stencil_from_flag(stencil);
    opt.tol_h = tol_h;
    opt.levels = levels;

    try {
        if (analyze->parsed()) return cheeger::cmd_analyze(spec_path, out_dir, opt);
        if (maxflow->parsed()) return cheeger::cmd_maxflow(dimacs_path);
        if (certify->parsed())
            return cheeger::cmd_certify(field_csv, h_claimed, spec_path, opt);
        if (suite->parsed()) return cheeger::cmd_suite(corpus_dir, out_dir, opt);
    } catch (const cheeger::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cheeger::dimension_mismatch_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cheeger::invalid_domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cheeger::resolution_too_coarse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cheeger::convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
