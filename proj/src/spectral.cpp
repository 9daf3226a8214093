#include "cheeger/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace cheeger {

DirichletLaplacian::DirichletLaplacian(const GridDomain& g) : geom_(g.geom()) {
    inv_dx2_ = 1.0 / (geom_.dx * geom_.dx);
    index_.assign(geom_.cells(), -1);
    for (int j = 0; j < geom_.ny; ++j)
        for (int i = 0; i < geom_.nx; ++i)
            if (g.inside(i, j)) index_[geom_.index(i, j)] = n_++;

    nbr_.resize(n_);
    diag_.resize(n_);
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int j = 0; j < geom_.ny; ++j) {
        for (int i = 0; i < geom_.nx; ++i) {
            std::int32_t row = index_[geom_.index(i, j)];
            if (row < 0) continue;
            int missing = 0;
            for (int d = 0; d < 4; ++d) {
                std::int32_t nb = -1;
                int i2 = i + di[d], j2 = j + dj[d];
                if (i2 >= 0 && j2 >= 0 && i2 < geom_.nx && j2 < geom_.ny)
                    nb = index_[geom_.index(i2, j2)];
                nbr_[row][d] = nb;
                if (nb < 0) ++missing;
            }
            // Mirror condition: the wall lies on the cell face, so a
            // missing neighbor contributes +1/dx^2 to the diagonal.
            diag_[row] = (4.0 + missing) * inv_dx2_;
        }
    }

    // Symmetry spot check with two random vectors.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> x(n_), y(n_);
    for (int k = 0; k < n_; ++k) {
        x[k] = unif(rng);
        y[k] = unif(rng);
    }
    double axy = bilinear(x, y), ayx = bilinear(y, x);
    double scale = std::max({std::abs(axy), std::abs(ayx), 1.0});
    if (std::abs(axy - ayx) > 1e-12 * scale)
        throw std::logic_error("laplacian assembly lost symmetry");
}

DirichletLaplacian assemble(const GridDomain& g) { return DirichletLaplacian(g); }

void DirichletLaplacian::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.resize(n_);
    for (int r = 0; r < n_; ++r) {
        double acc = diag_[r] * x[r];
        for (int d = 0; d < 4; ++d) {
            std::int32_t nb = nbr_[r][d];
            if (nb >= 0) acc -= inv_dx2_ * x[nb];
        }
        y[r] = acc;
    }
}

std::vector<double> DirichletLaplacian::pack(const ScalarField& u) const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t k = 0; k < index_.size(); ++k)
        if (index_[k] >= 0) x[index_[k]] = u.values[k];
    return x;
}

ScalarField DirichletLaplacian::unpack(const std::vector<double>& x) const {
    ScalarField u{geom_, std::vector<double>(geom_.cells(), 0.0)};
    for (std::size_t k = 0; k < index_.size(); ++k)
        if (index_[k] >= 0) u.values[k] = x[index_[k]];
    return u;
}

double DirichletLaplacian::bilinear(const std::vector<double>& x,
                                    const std::vector<double>& y) const {
    std::vector<double> ax;
    apply(x, ax);
    double s = 0.0;
    for (int k = 0; k < n_; ++k) s += ax[k] * y[k];
    return s;
}

namespace {

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

// Plain conjugate gradient; returns iteration count, -1 on stall.
int conjugate_gradient(const DirichletLaplacian& L, const std::vector<double>& b,
                       std::vector<double>& x, double rel_tol, int max_iter) {
    const int n = static_cast<int>(b.size());
    x.assign(n, 0.0);
    std::vector<double> r = b, p = b, ap;
    double rr = dot_vec(r, r);
    double target = rel_tol * rel_tol * rr;
    if (rr == 0.0) return 0;
    for (int it = 1; it <= max_iter; ++it) {
        L.apply(p, ap);
        double alpha = rr / dot_vec(p, ap);
        for (int k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        double rr_new = dot_vec(r, r);
        if (rr_new <= target) return it;
        double beta = rr_new / rr;
        rr = rr_new;
        for (int k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
    }
    return -1;
}

}  // namespace

EigenResult smallest_eigenvalue(const DirichletLaplacian& L) {
    const int n = L.unknowns();
    const int max_outer = 200;
    const int max_inner = 10000;

    std::vector<double> x(n, 1.0), y, ax;
    double nx = std::sqrt(dot_vec(x, x));
    for (double& v : x) v /= nx;

    EigenResult out;
    double lambda = 0.0;
    for (int outer = 1; outer <= max_outer; ++outer) {
        int cg = conjugate_gradient(L, x, y, 1e-10, max_inner);
        if (cg < 0)
            throw convergence_error("inner CG stalled after " + std::to_string(max_inner) +
                                    " iterations (outer step " + std::to_string(outer) + ")");
        out.cg_iterations += cg;
        double ny = std::sqrt(dot_vec(y, y));
        for (double& v : y) v /= ny;
        x.swap(y);

        L.apply(x, ax);
        lambda = dot_vec(ax, x);
        double res2 = 0.0;
        for (int k = 0; k < n; ++k) {
            double rk = ax[k] - lambda * x[k];
            res2 += rk * rk;
        }
        out.iterations = outer;
        out.residual = std::sqrt(res2);
        if (out.residual <= 1e-8 * lambda) break;
        if (outer == max_outer)
            throw convergence_error("inverse power iteration did not converge: residual " +
                                    std::to_string(out.residual) + " at lambda " +
                                    std::to_string(lambda));
    }

    // Ground state has a single sign; normalize to positive.
    double pos = 0.0, neg = 0.0;
    for (double v : x) (v >= 0.0 ? pos : neg) += std::abs(v);
    if (neg > pos)
        for (double& v : x) v = -v;
    out.lambda = lambda;
    out.eigenfunction = L.unpack(x);
    return out;
}

double rayleigh_quotient(const DirichletLaplacian& L, const ScalarField& u) {
    std::vector<double> x = L.pack(u);
    double uu = dot_vec(x, x);
    if (uu <= 0.0) throw std::domain_error("rayleigh quotient of a zero function");
    return L.bilinear(x, x) / uu;
}

InequalityCheck check_cheeger_inequality(double lambda, double h_lower) {
    InequalityCheck c;
    c.lhs = lambda;
    c.rhs = 0.25 * h_lower * h_lower;
    c.margin = c.lhs - c.rhs;
    c.holds = c.margin >= -1e-12 * std::max(1.0, std::abs(c.rhs));
    return c;
}

InequalityCheck check_makai(double lambda, double rho_tilde) {
    if (rho_tilde <= 0.0) throw std::domain_error("reduced inradius must be positive");
    InequalityCheck c;
    c.lhs = lambda;
    c.rhs = 1.0 / (4.0 * rho_tilde * rho_tilde);
    c.margin = c.lhs - c.rhs;
    c.holds = c.margin >= -1e-12 * std::max(1.0, std::abs(c.rhs));
    return c;
}

}  // namespace cheeger
