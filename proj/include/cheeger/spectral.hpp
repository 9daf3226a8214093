#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cheeger/distance_field.hpp"
#include "cheeger/geometry.hpp"

namespace cheeger {

class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Five-point Dirichlet Laplacian on the interior cells. The zero
/// boundary sits on the cell faces: a missing neighbor is mirrored,
/// adding 1/dx^2 to the diagonal. Symmetric positive definite.
class DirichletLaplacian {
public:
    explicit DirichletLaplacian(const GridDomain& g);

    int unknowns() const { return n_; }
    const GridGeometry& geom() const { return geom_; }

    /// y = A x on the packed interior vector.
    void apply(const std::vector<double>& x, std::vector<double>& y) const;

    std::vector<double> pack(const ScalarField& u) const;
    ScalarField unpack(const std::vector<double>& x) const;

    /// <Ax, y> for packed vectors.
    double bilinear(const std::vector<double>& x, const std::vector<double>& y) const;

private:
    GridGeometry geom_;
    int n_ = 0;
    std::vector<std::int32_t> index_;              // -1 outside
    std::vector<std::array<std::int32_t, 4>> nbr_; // neighbor unknown ids or -1
    std::vector<double> diag_;
    double inv_dx2_ = 0.0;
};

DirichletLaplacian assemble(const GridDomain& g);

struct EigenResult {
    double lambda = 0.0;
    ScalarField eigenfunction;  // unit discrete L2 norm, positive
    double residual = 0.0;      // ||A u - lambda u||
    int iterations = 0;         // inverse-power steps
    int cg_iterations = 0;      // total inner CG steps
};

/// Smallest eigenvalue by inverse power iteration with matrix-free CG
/// inner solves (relative tolerance 1e-10), started from the all-ones
/// vector. Converged when ||Au - lambda u|| <= 1e-8 lambda.
EigenResult smallest_eigenvalue(const DirichletLaplacian& L);

/// <Lu, u> / <u, u> for a grid function vanishing outside the mask.
double rayleigh_quotient(const DirichletLaplacian& L, const ScalarField& u);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool holds = false;
};

/// lambda >= h^2 / 4 for a certified lower bound h.
InequalityCheck check_cheeger_inequality(double lambda, double h_lower);

/// lambda >= 1 / (4 rho_tilde^2).
InequalityCheck check_makai(double lambda, double rho_tilde);

}  // namespace cheeger
