#include "cheeger/cheeger_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cheeger {

namespace {

// Direction table: 4 axis directions first, then diagonals.
constexpr int kDi[8] = {1, 0, -1, 0, 1, -1, -1, 1};
constexpr int kDj[8] = {0, 1, 0, -1, 1, 1, -1, -1};

}  // namespace

CutMetricStencil CutMetricStencil::four() { return {4, 1.0, 0.0}; }

CutMetricStencil CutMetricStencil::eight() {
    return {8, std::numbers::pi / 8.0, std::numbers::pi / (8.0 * std::numbers::sqrt2)};
}

void CutMetricStencil::validate() const {
    if (neighborhood != 4 && neighborhood != 8)
        throw std::invalid_argument("stencil neighborhood must be 4 or 8");
    if (axis_weight <= 0.0)
        throw std::invalid_argument("axis weight must be positive");
    if (neighborhood == 8 && diag_weight <= 0.0)
        throw std::invalid_argument("diagonal weight must be positive");
}

GridNetwork build_grid_network(const GridDomain& g, double h,
                               const CutMetricStencil& stencil) {
    stencil.validate();
    if (h < 0.0) throw std::domain_error("production rate h must be nonnegative");
    const auto& geom = g.geom();
    const double dx = geom.dx;

    GridNetwork gn;
    gn.node_of_cell.assign(geom.cells(), -1);
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i)
            if (g.inside(i, j)) {
                gn.node_of_cell[geom.index(i, j)] =
                    static_cast<std::int32_t>(gn.cell_of_node.size());
                gn.cell_of_node.push_back({i, j});
            }

    const int n = static_cast<int>(gn.cell_of_node.size());
    gn.net.node_count = n + 2;
    gn.net.source = n;
    gn.net.sink = n + 1;

    const int ndirs = stencil.neighborhood;
    gn.net.arcs.reserve(static_cast<std::size_t>(n) * (ndirs + 1));
    gn.arc_dir.reserve(gn.net.arcs.capacity());

    for (int v = 0; v < n; ++v) {
        auto [i, j] = gn.cell_of_node[v];
        gn.net.arcs.push_back({gn.net.source, v, h * dx * dx});
        gn.arc_dir.push_back(-1);
        for (int d = 0; d < ndirs; ++d) {
            double w = (d < 4 ? stencil.axis_weight : stencil.diag_weight) * dx;
            int i2 = i + kDi[d], j2 = j + kDj[d];
            std::int32_t nb =
                (i2 >= 0 && j2 >= 0 && i2 < geom.nx && j2 < geom.ny)
                    ? gn.node_of_cell[geom.index(i2, j2)]
                    : -1;
            gn.net.arcs.push_back({v, nb >= 0 ? nb : gn.net.sink, w});
            gn.arc_dir.push_back(static_cast<std::int8_t>(d));
        }
    }
    gn.supply = h * g.area();
    return gn;
}

bool feasible(const GridDomain& g, double h, const CutMetricStencil& stencil) {
    if (h == 0.0) return true;
    GridNetwork gn = build_grid_network(g, h, stencil);
    MaxFlowResult r = max_flow(gn.net);
    return r.value >= gn.supply * (1.0 - 1e-9);
}

double default_certificate_tolerance(double dx) {
    return std::max(0.05, 10.0 * dx);
}

CertificateReport certify_lower_bound(const VectorField& v, const GridDomain& g,
                                      double h_claimed, double tol) {
    const auto& geom = v.geom;
    CertificateReport rep;
    rep.h_claimed = h_claimed;
    rep.tolerance = tol;
    rep.max_speed = v.max_speed(g);

    ScalarField div = divergence(v, g);
    double min_div = std::numeric_limits<double>::infinity();
    for (int bj = 0; bj * 2 < geom.ny; ++bj) {
        for (int bi = 0; bi * 2 < geom.nx; ++bi) {
            double sum = 0.0;
            int count = 0;
            for (int dj = 0; dj < 2; ++dj)
                for (int di = 0; di < 2; ++di) {
                    int i = 2 * bi + di, j = 2 * bj + dj;
                    if (i < geom.nx && j < geom.ny && g.inside(i, j)) {
                        sum += div.at(i, j);
                        ++count;
                    }
                }
            if (count > 0) min_div = std::min(min_div, sum / count);
        }
    }
    rep.min_div = min_div;
    rep.pass = rep.max_speed <= 1.0 + tol && rep.min_div >= h_claimed - tol;
    return rep;
}

CertificateReport certify_saturating_flow(const GridNetwork& gn, const Flow& f,
                                          const GridDomain& g, double h_claimed,
                                          double tol) {
    const auto& geom = g.geom();
    CertificateReport rep;
    rep.h_claimed = h_claimed;
    rep.tolerance = tol;
    rep.max_speed = flow_to_vector_field(gn, f, g).max_speed(g);

    // Net outflow per cell through neighbor and boundary arcs; the
    // source arc replenishes exactly this amount.
    std::vector<double> outflow(geom.cells(), 0.0);
    for (std::size_t k = 0; k < gn.net.arcs.size(); ++k) {
        if (gn.arc_dir[k] < 0) continue;
        const auto& arc = gn.net.arcs[k];
        double fk = f.arc_flow[k];
        auto [i, j] = gn.cell_of_node[arc.from];
        outflow[geom.index(i, j)] += fk;
        if (arc.to != gn.net.sink) {
            auto [i2, j2] = gn.cell_of_node[arc.to];
            outflow[geom.index(i2, j2)] -= fk;
        }
    }
    const double inv_area = 1.0 / (geom.dx * geom.dx);
    double min_div = std::numeric_limits<double>::infinity();
    for (int bj = 0; bj * 2 < geom.ny; ++bj) {
        for (int bi = 0; bi * 2 < geom.nx; ++bi) {
            double sum = 0.0;
            int count = 0;
            for (int dj = 0; dj < 2; ++dj)
                for (int di = 0; di < 2; ++di) {
                    int i = 2 * bi + di, j = 2 * bj + dj;
                    if (i < geom.nx && j < geom.ny && g.inside(i, j)) {
                        sum += outflow[geom.index(i, j)] * inv_area;
                        ++count;
                    }
                }
            if (count > 0) min_div = std::min(min_div, sum / count);
        }
    }
    rep.min_div = min_div;
    rep.pass = rep.max_speed <= 1.0 + tol && rep.min_div >= h_claimed - tol;
    return rep;
}

VectorField flow_to_vector_field(const GridNetwork& gn, const Flow& f,
                                 const GridDomain& g) {
    const auto& geom = g.geom();
    const double dx = geom.dx;
    VectorField v{geom, std::vector<double>(geom.cells(), 0.0),
                  std::vector<double>(geom.cells(), 0.0)};
    if (f.arc_flow.size() != gn.net.arcs.size())
        throw std::invalid_argument("flow does not match grid network");

    // Each arc carries momentum flow * displacement; half is deposited
    // at each endpoint cell (boundary arcs have one interior endpoint).
    const double scale = 1.0 / (2.0 * dx);  // (flow * d * dx) / (2 dx^2)
    for (std::size_t k = 0; k < gn.net.arcs.size(); ++k) {
        int d = gn.arc_dir[k];
        if (d < 0) continue;  // source arc
        double fk = f.arc_flow[k];
        if (fk == 0.0) continue;
        const auto& arc = gn.net.arcs[k];
        auto [i, j] = gn.cell_of_node[arc.from];
        double mx = fk * kDi[d] * scale;
        double my = fk * kDj[d] * scale;
        v.vx[geom.index(i, j)] += mx;
        v.vy[geom.index(i, j)] += my;
        if (arc.to != gn.net.sink) {
            auto [i2, j2] = gn.cell_of_node[arc.to];
            v.vx[geom.index(i2, j2)] += mx;
            v.vy[geom.index(i2, j2)] += my;
        }
    }
    return v;
}

double cut_metric_capacity(const GridDomain& g, const std::vector<std::uint8_t>& cells,
                           const CutMetricStencil& stencil) {
    stencil.validate();
    const auto& geom = g.geom();
    if (cells.size() != geom.cells())
        throw std::invalid_argument("cell set size does not match grid");
    double cap = 0.0;
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            if (!cells[geom.index(i, j)]) continue;
            for (int d = 0; d < stencil.neighborhood; ++d) {
                int i2 = i + kDi[d], j2 = j + kDj[d];
                bool in_set = i2 >= 0 && j2 >= 0 && i2 < geom.nx && j2 < geom.ny &&
                              cells[geom.index(i2, j2)];
                if (!in_set)
                    cap += (d < 4 ? stencil.axis_weight : stencil.diag_weight) * geom.dx;
            }
        }
    }
    return cap;
}

CheegerResult cheeger_constant(const GridDomain& g, const CutMetricStencil& stencil,
                               double tol_h) {
    if (tol_h <= 0.0) throw std::domain_error("tol_h must be positive");
    stencil.validate();
    const auto& geom = g.geom();

    double rho = g.chamfer_inradius();
    double hi = 4.0 / rho;
    double lo = 0.0;
    if (feasible(g, hi, stencil)) {
        hi *= 2.0;
        if (feasible(g, hi, stencil))
            throw std::runtime_error("cheeger bisection bracket failed: upper rate feasible");
    }

    CheegerResult out;
    while (hi - lo > tol_h) {
        double mid = 0.5 * (lo + hi);
        if (feasible(g, mid, stencil))
            lo = mid;
        else
            hi = mid;
        ++out.iterations;
    }
    out.h_lower = lo;

    // Cut extraction at the smallest infeasible rate.
    std::vector<std::uint8_t> selected(geom.cells(), 0);
    for (double h_cut = hi;; h_cut *= 1.05) {
        GridNetwork gn = build_grid_network(g, h_cut, stencil);
        MaxFlowResult r = max_flow(gn.net);
        Cut cut = min_cut(gn.net, r.flow);
        std::size_t count = 0;
        for (std::size_t v = 0; v < gn.cell_of_node.size(); ++v) {
            if (cut.contains(static_cast<int>(v))) {
                auto [i, j] = gn.cell_of_node[v];
                selected[geom.index(i, j)] = 1;
                ++count;
            }
        }
        if (count > 0) break;
        if (h_cut > 16.0 / rho)
            throw std::runtime_error("cheeger cut extraction found no deficient set");
    }
    out.cut_cells = fill_holes(g, selected);
    out.cheeger_set = cut_set_to_polygons(g, selected);
    out.h_upper = aggregate_quotient(out.cheeger_set);

    // Certificate field from the saturating flow at h_lower.
    GridNetwork gn = build_grid_network(g, out.h_lower, stencil);
    MaxFlowResult r = max_flow(gn.net);
    out.certificate = flow_to_vector_field(gn, r.flow, g);
    out.certificate_report = certify_saturating_flow(
        gn, r.flow, g, out.h_lower, default_certificate_tolerance(geom.dx));
    return out;
}

QuotientCandidate quotient_of_candidate(const ScalarField& phi, const GridDomain& g,
                                        int n_levels) {
    if (n_levels < 1) throw std::domain_error("n_levels must be positive");
    const auto& geom = g.geom();
    double top = 0.0, l1 = 0.0;
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            double v = phi.at(i, j);
            if (v < 0.0) throw std::domain_error("candidate function must be nonnegative");
            top = std::max(top, v);
            l1 += v;
        }
    l1 *= geom.dx * geom.dx;
    if (top <= 0.0) throw std::domain_error("candidate function is identically zero");

    std::vector<double> levels(n_levels);
    for (int k = 0; k < n_levels; ++k) levels[k] = (k + 0.5) * top / n_levels;
    auto curves = level_set_lengths(phi, levels);

    QuotientCandidate out;
    double tv = 0.0;
    for (const auto& c : curves) tv += c.length * top / n_levels;
    out.q_value = tv / l1;

    out.best_quotient = std::numeric_limits<double>::infinity();
    for (double t : levels) {
        std::vector<std::uint8_t> sel(geom.cells(), 0);
        std::size_t count = 0;
        for (int j = 0; j < geom.ny; ++j)
            for (int i = 0; i < geom.nx; ++i)
                if (g.inside(i, j) && phi.at(i, j) > t) {
                    sel[geom.index(i, j)] = 1;
                    ++count;
                }
        if (count == 0) continue;
        double q = aggregate_quotient(cut_set_to_polygons(g, sel));
        if (q < out.best_quotient) {
            out.best_quotient = q;
            out.best_threshold = t;
        }
    }
    double slack = default_slack(out.q_value, geom.dx);
    if (out.best_quotient > out.q_value + slack)
        throw std::logic_error("threshold sweep exceeded the total-variation quotient");
    return out;
}

double mask_inradius(const GridDomain& g) {
    const auto& geom = g.geom();
    // Exterior cells adjacent to the interior.
    std::vector<Point> rim;
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i) {
            if (g.inside(i, j)) continue;
            bool touches = g.inside(i + 1, j) || g.inside(i - 1, j) ||
                           g.inside(i, j + 1) || g.inside(i, j - 1) ||
                           g.inside(i + 1, j + 1) || g.inside(i - 1, j + 1) ||
                           g.inside(i + 1, j - 1) || g.inside(i - 1, j - 1);
            if (touches) rim.push_back(geom.center(i, j));
        }
    double best = 0.0;
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            Point c = geom.center(i, j);
            double d = std::numeric_limits<double>::infinity();
            for (const Point& p : rim) {
                double dxp = c.x - p.x, dyp = c.y - p.y;
                d = std::min(d, dxp * dxp + dyp * dyp);
            }
            best = std::max(best, d);
        }
    return std::max(0.5 * geom.dx, std::sqrt(best) - 0.5 * geom.dx);
}

SubdomainSuiteReport subdomain_bound_suite(const GridDomain& g, int samples, double rho,
                                           std::uint64_t seed) {
    const auto& geom = g.geom();
    if (rho <= 0.0) rho = mask_inradius(g);
    SubdomainSuiteReport rep;
    rep.samples = samples;
    rep.bound = 1.0 / reduced_inradius(rho, g.area());
    rep.tolerance = default_slack(rep.bound, geom.dx);
    rep.min_margin = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double w = geom.nx * geom.dx, h = geom.ny * geom.dx;

    auto measure = [&](const std::vector<std::uint8_t>& sel) {
        auto polys = cut_set_to_polygons(g, sel);
        if (polys.empty()) return;
        double q = aggregate_quotient(polys);
        rep.min_margin = std::min(rep.min_margin, q - rep.bound);
        ++rep.evaluated;
    };

    measure(g.mask());  // the domain itself is always sampled

    for (int s = 1; s < samples; ++s) {
        int ndisks = 1 + static_cast<int>(unif(rng) * 3.0);
        std::vector<Point> centers(ndisks);
        std::vector<double> radii(ndisks);
        for (int k = 0; k < ndisks; ++k) {
            centers[k] = {geom.origin.x + unif(rng) * w, geom.origin.y + unif(rng) * h};
            radii[k] = (0.10 + 0.35 * unif(rng)) * 0.5 * std::min(w, h);
        }
        std::vector<std::uint8_t> sel(geom.cells(), 0);
        std::size_t count = 0;
        for (int j = 0; j < geom.ny; ++j)
            for (int i = 0; i < geom.nx; ++i) {
                if (!g.inside(i, j)) continue;
                Point c = geom.center(i, j);
                for (int k = 0; k < ndisks; ++k) {
                    if (norm(c - centers[k]) <= radii[k]) {
                        sel[geom.index(i, j)] = 1;
                        ++count;
                        break;
                    }
                }
            }
        if (count == 0) continue;
        measure(sel);
    }
    rep.all_hold = rep.min_margin >= -rep.tolerance;
    return rep;
}

}  // namespace cheeger
