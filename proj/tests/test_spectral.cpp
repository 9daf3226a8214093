#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cheeger/distance_field.hpp"
#include "cheeger/geometry.hpp"
#include "cheeger/spectral.hpp"

using namespace cheeger;

namespace {

constexpr double kPi = std::numbers::pi;

DomainSpec rect_spec(double w, double h, int res) {
    DomainSpec s;
    s.kind = DomainSpec::Kind::rectangle;
    s.w = w;
    s.h = h;
    s.resolution = res;
    return s;
}

DomainSpec disk_spec(double r, int res) {
    DomainSpec s;
    s.kind = DomainSpec::Kind::disk;
    s.r = r;
    s.resolution = res;
    return s;
}

// First zero of the Bessel J0 series, by bisection. Independent of the
// eigensolver path.
double bessel_j0_first_zero() {
    auto j0 = [](double x) {
        double term = 1.0, sum = 1.0;
        double q = 0.25 * x * x;
        for (int k = 1; k <= 60; ++k) {
            term *= -q / (k * k);
            sum += term;
        }
        return sum;
    };
    double lo = 2.0, hi = 3.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (j0(lo) * j0(mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

GridDomain tiny_grid(int cols, double dx) {
    GridGeometry geom{dx, {0, 0}, cols + 2, 3};
    std::vector<std::uint8_t> mask(geom.cells(), 0);
    for (int i = 1; i <= cols; ++i) mask[geom.index(i, 1)] = 1;
    return GridDomain(geom, std::move(mask));
}

}  // namespace

TEST_CASE("assembly on tiny domains") {
    double dx = 0.5;
    GridDomain g1 = tiny_grid(1, dx);
    DirichletLaplacian L1 = assemble(g1);
    REQUIRE(L1.unknowns() == 1);
    std::vector<double> x{1.0}, y;
    L1.apply(x, y);
    // all four walls mirrored onto the diagonal
    CHECK(y[0] == doctest::Approx(8.0 / (dx * dx)));

    GridDomain g2 = tiny_grid(2, dx);
    DirichletLaplacian L2 = assemble(g2);
    REQUIRE(L2.unknowns() == 2);
    std::vector<double> e0{1.0, 0.0}, e1{0.0, 1.0};
    L2.apply(e0, y);
    CHECK(y[0] == doctest::Approx(7.0 / (dx * dx)));
    CHECK(y[1] == doctest::Approx(-1.0 / (dx * dx)));
    L2.apply(e1, y);
    CHECK(y[0] == doctest::Approx(-1.0 / (dx * dx)));
    CHECK(y[1] == doctest::Approx(7.0 / (dx * dx)));
}

TEST_CASE("operator symmetry on random vectors") {
    GridDomain g = rasterize(disk_spec(1.0, 48));
    DirichletLaplacian L = assemble(g);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        std::vector<double> x(L.unknowns()), y(L.unknowns());
        for (auto& v : x) v = unif(rng);
        for (auto& v : y) v = unif(rng);
        double axy = L.bilinear(x, y);
        double ayx = L.bilinear(y, x);
        CHECK(axy == doctest::Approx(ayx).epsilon(1e-12));
    }
}

TEST_CASE("smallest eigenvalue: unit square") {
    GridDomain g = rasterize(rect_spec(1, 1, 128));
    EigenResult r = smallest_eigenvalue(assemble(g));
    CHECK(std::abs(r.lambda - 2.0 * kPi * kPi) / (2.0 * kPi * kPi) < 0.01);
    // exact discrete eigenvalue of the five-point stencil
    double dx = g.dx();
    double discrete = 4.0 / (dx * dx) * (1.0 - std::cos(kPi * dx));
    CHECK(r.lambda == doctest::Approx(discrete).epsilon(1e-7));
    CHECK(r.residual <= 1e-8 * r.lambda);
}

TEST_CASE("smallest eigenvalue: unit disk vs Bessel oracle") {
    double j01 = bessel_j0_first_zero();
    CHECK(j01 == doctest::Approx(2.404825557695773).epsilon(1e-9));
    GridDomain g = rasterize(disk_spec(1.0, 256));
    EigenResult r = smallest_eigenvalue(assemble(g));
    CHECK(std::abs(r.lambda - j01 * j01) / (j01 * j01) < 0.01);
}

TEST_CASE("smallest eigenvalue: 2x1 rectangle") {
    GridDomain g = rasterize(rect_spec(2, 1, 128));
    EigenResult r = smallest_eigenvalue(assemble(g));
    double exact = kPi * kPi * 1.25;
    CHECK(std::abs(r.lambda - exact) / exact < 0.01);
}

TEST_CASE("ground state has one sign") {
    GridDomain g = rasterize(rect_spec(2, 1, 64));
    EigenResult r = smallest_eigenvalue(assemble(g));
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (g.inside(i, j)) CHECK(r.eigenfunction.at(i, j) > 0.0);
}

TEST_CASE("rayleigh quotient identities") {
    GridDomain g = rasterize(rect_spec(1, 1, 96));
    DirichletLaplacian L = assemble(g);
    EigenResult r = smallest_eigenvalue(L);

    CHECK(rayleigh_quotient(L, r.eigenfunction) == doctest::Approx(r.lambda).epsilon(1e-8));

    // distance field as a test function: only the variational bound holds
    ScalarField phi = distance_to_boundary(rect_spec(1, 1, 96).to_polygon(), g);
    CHECK(rayleigh_quotient(L, phi) >= r.lambda - 1e-8);

    // first excited product mode
    const auto& geom = g.geom();
    ScalarField mode{geom, std::vector<double>(geom.cells(), 0.0)};
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            Point c = geom.center(i, j);
            mode.at(i, j) = std::sin(kPi * c.x) * std::sin(2.0 * kPi * c.y);
        }
    CHECK(rayleigh_quotient(L, mode) == doctest::Approx(5.0 * kPi * kPi).epsilon(0.02));

    ScalarField zero{geom, std::vector<double>(geom.cells(), 0.0)};
    CHECK_THROWS_AS(rayleigh_quotient(L, zero), std::domain_error);
}

TEST_CASE("variational principle on random nonnegative vectors") {
    GridDomain g = rasterize(rect_spec(1, 1, 48));
    DirichletLaplacian L = assemble(g);
    EigenResult r = smallest_eigenvalue(L);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto& geom = g.geom();
    for (int t = 0; t < 100; ++t) {
        ScalarField u{geom, std::vector<double>(geom.cells(), 0.0)};
        for (int j = 0; j < geom.ny; ++j)
            for (int i = 0; i < geom.nx; ++i)
                if (g.inside(i, j)) u.at(i, j) = unif(rng);
        CHECK(rayleigh_quotient(L, u) >= r.lambda - 1e-8);
    }
}

TEST_CASE("domain monotonicity of the eigenvalue") {
    EigenResult small = smallest_eigenvalue(assemble(rasterize(rect_spec(1, 1, 96))));
    EigenResult big = smallest_eigenvalue(assemble(rasterize(rect_spec(2, 1, 96))));
    CHECK(small.lambda >= big.lambda);
}

TEST_CASE("eigenvalue scaling law") {
    double base = smallest_eigenvalue(assemble(rasterize(rect_spec(1, 1, 96)))).lambda;
    double doubled = smallest_eigenvalue(assemble(rasterize(rect_spec(2, 2, 96)))).lambda;
    double halved = smallest_eigenvalue(assemble(rasterize(rect_spec(0.5, 0.5, 96)))).lambda;
    CHECK(doubled == doctest::Approx(base / 4.0).epsilon(0.01));
    CHECK(halved == doctest::Approx(base * 4.0).epsilon(0.01));
}

TEST_CASE("inequality checks") {
    auto ci = check_cheeger_inequality(5.7832, 2.0);
    CHECK(ci.holds);
    CHECK(ci.margin == doctest::Approx(4.7832).epsilon(1e-6));

    auto bad = check_cheeger_inequality(0.9, 2.0);
    CHECK(!bad.holds);

    auto mk = check_makai(5.7832, 0.5);
    CHECK(mk.holds);
    CHECK(mk.rhs == doctest::Approx(1.0));

    double rt_square = reduced_inradius(0.5, 1.0);
    auto mks = check_makai(19.739, rt_square);
    CHECK(mks.holds);
    CHECK(mks.rhs == doctest::Approx(3.1877).epsilon(1e-3));
    CHECK_THROWS_AS(check_makai(1.0, 0.0), std::domain_error);
}
