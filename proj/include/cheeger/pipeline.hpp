#pragma once

#include <map>
#include <string>
#include <vector>

#include "cheeger/cheeger_solver.hpp"
#include "cheeger/distance_field.hpp"
#include "cheeger/geometry.hpp"
#include "cheeger/io.hpp"
#include "cheeger/spectral.hpp"

namespace cheeger {

/// One inequality verdict: the compared sides, the slack that was
/// granted, and the outcome. Reports never carry bare booleans.
struct CheckEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct AnalysisReport {
    DomainSpec spec;
    int resolution = 0;
    CutMetricStencil stencil;

    double area = 0.0;       // exact polygon area
    double perimeter = 0.0;  // exact polygon perimeter
    double rho = 0.0;        // polished polygon inradius
    double rho_tilde = 0.0;

    CheegerResult cheeger;
    EigenResult eigen;
    double coarea_defect = 0.0;
    DivergenceIntegral makai_divergence;
    FinalestCheck finalest;
    BonnesenCheck bonnesen;
    SubdomainSuiteReport subdomains;

    std::vector<CheckEntry> checks;
    std::map<std::string, double> timings_sec;

    bool all_pass() const;
};

struct AnalyzeOptions {
    int resolution = 0;  // 0 = take the spec's resolution
    CutMetricStencil stencil = CutMetricStencil::eight();
    double tol_h = 0.005;
    int levels = 64;
    double coarea_bound = 0.0;       // <= 0: max(0.03, 2 dx / inradius)
    double divergence_slack = 0.05;  // relative
};

/// Full pipeline on one domain: geometry, distance field, Cheeger
/// bracketing, eigenvalue, and the inequality suite.
AnalysisReport analyze_domain(const DomainSpec& spec, const AnalyzeOptions& opt = {});

/// Report JSON (stable field order; timings under "timings").
std::string report_to_json(const AnalysisReport& report);

// CLI entry points. Exit codes: 0 success / all checks pass,
// 1 checks failed, 2 parse or input error, 3 solver non-convergence.
int cmd_analyze(const std::string& spec_path, const std::string& out_dir,
                const AnalyzeOptions& opt);
int cmd_maxflow(const std::string& dimacs_path);
int cmd_certify(const std::string& field_csv, double h, const std::string& spec_path,
                const AnalyzeOptions& opt);
int cmd_suite(const std::string& corpus_dir, const std::string& out_dir,
              const AnalyzeOptions& opt);

}  // namespace cheeger
