#include "cheeger/distance_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cheeger/contour.hpp"

namespace cheeger {

double ScalarField::max() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
}

double VectorField::max_speed(const GridDomain& g) const {
    double m = 0.0;
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i)
            if (g.inside(i, j)) m = std::max(m, norm(at(i, j)));
    return m;
}

ScalarField distance_to_boundary(const Polygon& p, const GridDomain& g) {
    const auto& geom = g.geom();
    ScalarField phi{geom, std::vector<double>(geom.cells(), 0.0)};
    const auto& verts = p.vertices();
    const std::size_t n = verts.size();
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            Point c = geom.center(i, j);
            double d = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < n; ++k)
                d = std::min(d, point_segment_distance(c, verts[k], verts[(k + 1) % n]));
            phi.at(i, j) = d;
        }
    }
    return phi;
}

double inradius(const ScalarField& phi, const GridDomain& g) {
    double m = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (g.inside(i, j)) m = std::max(m, phi.at(i, j));
    return m;
}

double reduced_inradius(double rho, double area) {
    if (rho <= 0.0 || area <= 0.0)
        throw std::domain_error("reduced_inradius needs positive inradius and area");
    return rho / (1.0 + std::numbers::pi * rho * rho / area);
}

namespace {

// One component of grad(phi): central where both neighbors are
// interior, one-sided otherwise, 0 if isolated in this direction.
double gradient_component(const ScalarField& phi, const GridDomain& g, int i, int j,
                          int di, int dj) {
    bool fwd = g.inside(i + di, j + dj);
    bool bwd = g.inside(i - di, j - dj);
    double dx = phi.geom.dx;
    if (fwd && bwd)
        return (phi.at(i + di, j + dj) - phi.at(i - di, j - dj)) / (2.0 * dx);
    if (fwd) return (phi.at(i + di, j + dj) - phi.at(i, j)) / dx;
    if (bwd) return (phi.at(i, j) - phi.at(i - di, j - dj)) / dx;
    return 0.0;
}

}  // namespace

VectorField makai_field(const ScalarField& phi, const GridDomain& g, double rho) {
    if (rho <= 0.0) throw std::domain_error("makai_field needs a positive inradius");
    const auto& geom = phi.geom;
    VectorField v{geom, std::vector<double>(geom.cells(), 0.0),
                  std::vector<double>(geom.cells(), 0.0)};
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            double gx = gradient_component(phi, g, i, j, 1, 0);
            double gy = gradient_component(phi, g, i, j, 0, 1);
            double s = -(1.0 - phi.at(i, j) / rho);
            v.vx[geom.index(i, j)] = s * gx;
            v.vy[geom.index(i, j)] = s * gy;
        }
    }
    return v;
}

ScalarField divergence(const VectorField& v, const GridDomain& g) {
    const auto& geom = v.geom;
    ScalarField div{geom, std::vector<double>(geom.cells(), 0.0)};
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            double dvx, dvy;
            double dx = geom.dx;
            bool e = g.inside(i + 1, j), w = g.inside(i - 1, j);
            if (e && w)
                dvx = (v.vx[geom.index(i + 1, j)] - v.vx[geom.index(i - 1, j)]) / (2 * dx);
            else if (e)
                dvx = (v.vx[geom.index(i + 1, j)] - v.vx[geom.index(i, j)]) / dx;
            else if (w)
                dvx = (v.vx[geom.index(i, j)] - v.vx[geom.index(i - 1, j)]) / dx;
            else
                dvx = 0.0;
            bool nn = g.inside(i, j + 1), ss = g.inside(i, j - 1);
            if (nn && ss)
                dvy = (v.vy[geom.index(i, j + 1)] - v.vy[geom.index(i, j - 1)]) / (2 * dx);
            else if (nn)
                dvy = (v.vy[geom.index(i, j + 1)] - v.vy[geom.index(i, j)]) / dx;
            else if (ss)
                dvy = (v.vy[geom.index(i, j)] - v.vy[geom.index(i, j - 1)]) / dx;
            else
                dvy = 0.0;
            div.at(i, j) = dvx + dvy;
        }
    }
    return div;
}

DivergenceIntegral divergence_integral(const VectorField& v, const GridDomain& g) {
    const auto& geom = v.geom;
    DivergenceIntegral out;
    ScalarField div = divergence(v, g);
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i)
            if (g.inside(i, j)) out.interior_sum += div.at(i, j);
    out.interior_sum *= geom.dx * geom.dx;

    // Outward flux through exposed cell faces.
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            Point vc = v.at(i, j);
            if (!g.inside(i + 1, j)) out.boundary_flux += vc.x * geom.dx;
            if (!g.inside(i - 1, j)) out.boundary_flux -= vc.x * geom.dx;
            if (!g.inside(i, j + 1)) out.boundary_flux += vc.y * geom.dx;
            if (!g.inside(i, j - 1)) out.boundary_flux -= vc.y * geom.dx;
        }
    }
    return out;
}

std::vector<LevelSetCurve> level_set_lengths(const ScalarField& phi,
                                             const std::vector<double>& levels) {
    double top = phi.max();
    std::vector<LevelSetCurve> out;
    out.reserve(levels.size());
    for (double t : levels) {
        LevelSetCurve c;
        c.level = t;
        if (t <= 0.0 || t >= top) {
            c.skipped = true;
            out.push_back(c);
            continue;
        }
        auto loops = marching_squares(phi.geom, phi.values, t);
        c.components = static_cast<int>(loops.size());
        for (const Contour& loop : loops)
            c.length += contour_length(relax_contour(loop, 0.49 * phi.geom.dx));
        out.push_back(c);
    }
    return out;
}

namespace {

// Integral of the level-set lengths over (0, cap). Marching squares
// handles the range below the medial ridge; the band near the field
// maximum is folded in as the superlevel-set area at the split level
// (the two are equal by the coarea identity). Linear interpolation
// between near-equal samples flattens the distance cone across the
// ridge, so level lengths inside that band lose a dx-wide strip; the
// split contour itself sits below the flattened zone and its enclosed
// area is sub-cell accurate. Superlevel sets of a distance field have
// no holes (no interior local minima), so the areas add up plainly.
double level_length_integral(const ScalarField& phi, const GridDomain& g, double cap,
                             int n_levels) {
    const auto& geom = phi.geom;
    double split = std::min(cap, phi.max() - 1.75 * geom.dx);
    if (split <= 0.0) return g.area();
    double integral = 0.0;
    std::vector<double> levels(n_levels);
    for (int k = 0; k < n_levels; ++k) levels[k] = (k + 0.5) * split / n_levels;
    for (const auto& c : level_set_lengths(phi, levels))
        integral += c.length * split / n_levels;
    for (const Contour& loop : marching_squares(geom, phi.values, split))
        integral += std::abs(contour_signed_area(relax_contour(loop, 0.49 * geom.dx)));
    return integral;
}

}  // namespace

double coarea_check(const ScalarField& phi, const GridDomain& g, int n_levels) {
    if (n_levels < 16) throw std::domain_error("coarea_check needs at least 16 levels");
    double integral = level_length_integral(phi, g, phi.max(), n_levels);
    double area = g.area();
    return std::abs(integral - area) / area;
}

BonnesenCheck bonnesen_check(const Polygon& p) {
    double rho = polygon_inradius(p);
    BonnesenCheck out;
    out.lhs = rho * p.perimeter();
    out.rhs = p.area() + std::numbers::pi * rho * rho;
    out.holds = out.lhs >= out.rhs - 1e-9 * std::abs(out.rhs);
    return out;
}

FinalestCheck finalest_check(const ScalarField& phi, const GridDomain& g,
                             const Polygon& p, double rho, int n_levels) {
    if (rho <= 0.0) throw std::domain_error("finalest_check needs a positive inradius");
    double l0 = p.perimeter();
    double integral = level_length_integral(phi, g, rho, n_levels) - rho * l0;
    FinalestCheck out;
    out.value = integral / rho;
    out.bound = -std::numbers::pi * rho;
    out.holds = out.value <= out.bound + default_slack(out.bound, g.dx(), l0 / 10.0);
    return out;
}

double default_slack(double magnitude, double dx, double scale) {
    return std::max(0.05 * std::abs(magnitude), 10.0 * dx * scale);
}

}  // namespace cheeger
