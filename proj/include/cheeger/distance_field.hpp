#pragma once

#include <vector>

#include "cheeger/geometry.hpp"

namespace cheeger {

/// Grid function defined on the interior cells of a GridDomain;
/// exterior cells hold 0.
struct ScalarField {
    GridGeometry geom;
    std::vector<double> values;

    double at(int i, int j) const { return values[geom.index(i, j)]; }
    double& at(int i, int j) { return values[geom.index(i, j)]; }
    double max() const;
};

/// Cell-centered vector field; exterior cells hold (0, 0).
struct VectorField {
    GridGeometry geom;
    std::vector<double> vx;
    std::vector<double> vy;

    Point at(int i, int j) const {
        return {vx[geom.index(i, j)], vy[geom.index(i, j)]};
    }
    double max_speed(const GridDomain& g) const;
};

struct LevelSetCurve {
    double level = 0.0;
    double length = 0.0;
    int components = 0;
    bool skipped = false;  // level outside (0, max)
};

/// Exact Euclidean distance from each interior cell center to the
/// polygon boundary. `g` must rasterize `p`.
ScalarField distance_to_boundary(const Polygon& p, const GridDomain& g);

/// Max of the distance field over interior cells.
double inradius(const ScalarField& phi, const GridDomain& g);

/// rho / (1 + pi rho^2 / area). Lies strictly between rho/2 and rho.
double reduced_inradius(double rho, double area);

/// V = -(1 - phi/rho) grad(phi), the distance-function test field.
/// Gradient by central differences, one-sided where a neighbor is
/// missing. Satisfies |V| <= 1 + O(dx) and, on a disk of inradius rho,
/// approximates x/|x| * |x|/rho scaling, i.e. V(x) ~ x for rho = 1.
VectorField makai_field(const ScalarField& phi, const GridDomain& g, double rho);

struct DivergenceIntegral {
    double interior_sum = 0.0;   // dx^2 * sum of discrete divergence
    double boundary_flux = 0.0;  // outward flux through boundary faces
};

/// Discrete divergence integral of V over the domain, both as the cell
/// sum and as the outward boundary flux.
DivergenceIntegral divergence_integral(const VectorField& v, const GridDomain& g);

/// Per-cell discrete divergence (central differences, one-sided at the
/// boundary fringe).
ScalarField divergence(const VectorField& v, const GridDomain& g);

/// Marching-squares length of the level sets {phi = t} for each
/// requested level. Levels outside (0, max phi) are flagged skipped.
std::vector<LevelSetCurve> level_set_lengths(const ScalarField& phi,
                                             const std::vector<double>& levels);

/// Relative defect of the level-length integral against the grid area:
/// | integral of L_t dt - area | / area, midpoint rule on n_levels.
double coarea_check(const ScalarField& phi, const GridDomain& g, int n_levels);

struct BonnesenCheck {
    double lhs = 0.0;  // rho * perimeter
    double rhs = 0.0;  // area + pi rho^2
    bool holds = false;
};

/// rho |dS| >= |S| + pi rho^2 for a simply connected polygon, with the
/// inradius computed exactly from the polygon.
BonnesenCheck bonnesen_check(const Polygon& p);

struct FinalestCheck {
    double value = 0.0;  // (1/rho) * integral of (L_t - L_0) dt
    double bound = 0.0;  // -pi * rho
    bool holds = false;
};

/// Level-set route for the weighted Laplacian integral of the distance
/// function: value = (1/rho) int_0^rho (L_t - L_0) dt with L_0 the
/// polygon perimeter; checks value <= -pi rho + slack.
FinalestCheck finalest_check(const ScalarField& phi, const GridDomain& g,
                             const Polygon& p, double rho, int n_levels = 64);

/// Default inequality slack: max(5% of magnitude, 10 dx * scale).
double default_slack(double magnitude, double dx, double scale = 1.0);

}  // namespace cheeger
