#include "cheeger/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "cheeger/contour.hpp"

namespace cheeger {

double norm(Point p) { return std::sqrt(p.x * p.x + p.y * p.y); }
double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

// ── Polygon ─────────────────────────────────────────────────────────

namespace {

double shoelace(const std::vector<Point>& v) {
    // Anchored at v[0] for conditioning far from the origin.
    double a = 0.0;
    for (std::size_t k = 1; k + 1 < v.size(); ++k)
        a += cross(v[k] - v[0], v[k + 1] - v[0]);
    return 0.5 * a;
}

// Proper or improper intersection of segments [a,b] and [c,d].
bool segments_intersect(Point a, Point b, Point c, Point d) {
    auto orient = [](Point p, Point q, Point r) {
        double v = cross(q - p, r - p);
        double scale = std::abs(q.x - p.x) + std::abs(q.y - p.y) +
                       std::abs(r.x - p.x) + std::abs(r.y - p.y);
        double eps = 1e-14 * scale * scale;
        if (v > eps) return 1;
        if (v < -eps) return -1;
        return 0;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 * o2 != 0 && o3 * o4 != 0) return true;
    auto on = [&](Point p, Point q, Point r) {
        return orient(p, q, r) == 0 && r.x >= std::min(p.x, q.x) - 1e-14 &&
               r.x <= std::max(p.x, q.x) + 1e-14 && r.y >= std::min(p.y, q.y) - 1e-14 &&
               r.y <= std::max(p.y, q.y) + 1e-14;
    };
    if (o1 == 0 && on(a, b, c)) return true;
    if (o2 == 0 && on(a, b, d)) return true;
    if (o3 == 0 && on(c, d, a)) return true;
    if (o4 == 0 && on(c, d, b)) return true;
    return false;
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices) : verts_(std::move(vertices)) {
    check_basic();
    if (shoelace(verts_) < 0.0)
        throw invalid_domain_error("polygon must be counterclockwise");
    // Simplicity: no two non-adjacent edges may intersect.
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(verts_[i], verts_[(i + 1) % n], verts_[j],
                                   verts_[(j + 1) % n]))
                throw invalid_domain_error("polygon is self-intersecting");
        }
    }
}

Polygon Polygon::from_contour(std::vector<Point> loop) {
    // Drop near-duplicate consecutive vertices.
    std::vector<Point> v;
    v.reserve(loop.size());
    for (const Point& p : loop) {
        if (v.empty() || norm(p - v.back()) > 1e-12) v.push_back(p);
    }
    while (v.size() > 1 && norm(v.front() - v.back()) <= 1e-12) v.pop_back();
    if (shoelace(v) < 0.0) std::reverse(v.begin(), v.end());
    Polygon p;
    p.verts_ = std::move(v);
    p.check_basic();
    return p;
}

void Polygon::check_basic() const {
    if (verts_.size() < 3)
        throw invalid_domain_error("polygon needs at least 3 vertices");
    double a = std::abs(shoelace(verts_));
    double scale = 0.0;
    for (const Point& p : verts_) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    if (a <= 1e-14 * scale * scale + 1e-300)
        throw invalid_domain_error("polygon is degenerate (zero area)");
}

double Polygon::area() const { return shoelace(verts_); }

double Polygon::perimeter() const {
    double len = 0.0;
    const std::size_t n = verts_.size();
    for (std::size_t k = 0; k < n; ++k) len += norm(verts_[(k + 1) % n] - verts_[k]);
    return len;
}

double Polygon::quotient() const {
    double a = area();
    if (a <= 0.0) throw invalid_domain_error("quotient of zero-area polygon");
    return perimeter() / a;
}

bool Polygon::contains(Point p) const {
    const std::size_t n = verts_.size();
    double scale = std::abs(p.x) + std::abs(p.y) + 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (point_segment_distance(p, verts_[k], verts_[(k + 1) % n]) <= 1e-13 * scale)
            return false;  // boundary counts as outside
    }
    bool inside = false;
    for (std::size_t k = 0; k < n; ++k) {
        const Point& a = verts_[k];
        const Point& b = verts_[(k + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (xi > p.x) inside = !inside;
        }
    }
    return inside;
}

double Polygon::boundary_distance(Point p) const {
    double d = std::numeric_limits<double>::infinity();
    const std::size_t n = verts_.size();
    for (std::size_t k = 0; k < n; ++k)
        d = std::min(d, point_segment_distance(p, verts_[k], verts_[(k + 1) % n]));
    return d;
}

std::pair<Point, Point> Polygon::bounding_box() const {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi{-lo.x, -lo.y};
    for (const Point& p : verts_) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    return {lo, hi};
}

Polygon Polygon::translated(Point d) const {
    std::vector<Point> v = verts_;
    for (Point& p : v) p = p + d;
    return Polygon(std::move(v));
}

Polygon Polygon::rotated(double angle) const {
    double c = std::cos(angle), s = std::sin(angle);
    std::vector<Point> v = verts_;
    for (Point& p : v) p = {c * p.x - s * p.y, s * p.x + c * p.y};
    return Polygon(std::move(v));
}

Polygon Polygon::scaled(double factor) const {
    if (factor <= 0.0) throw invalid_domain_error("scale factor must be positive");
    std::vector<Point> v = verts_;
    for (Point& p : v) p = factor * p;
    return Polygon(std::move(v));
}

double polygon_inradius(const Polygon& poly) {
    auto [lo, hi] = poly.bounding_box();
    double w = hi.x - lo.x, h = hi.y - lo.y;

    auto score = [&](Point p) {
        double d = poly.boundary_distance(p);
        return poly.contains(p) ? d : -d;
    };

    // Coarse scan for a seed.
    const int n = 96;
    Point best{lo.x + 0.5 * w, lo.y + 0.5 * h};
    double best_val = score(best);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            Point p{lo.x + (i + 0.5) * w / n, lo.y + (j + 0.5) * h / n};
            double v = score(p);
            if (v > best_val) {
                best_val = v;
                best = p;
            }
        }
    }

    // Nelder-Mead polish.
    double step = std::max(w, h) / n;
    std::array<Point, 3> simplex{best, best + Point{step, 0.0}, best + Point{0.0, step}};
    std::array<double, 3> f{score(simplex[0]), score(simplex[1]), score(simplex[2])};
    for (int it = 0; it < 240; ++it) {
        std::array<int, 3> ord{0, 1, 2};
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return f[a] > f[b]; });
        Point xb = simplex[ord[0]], xm = simplex[ord[1]], xw = simplex[ord[2]];
        double fb = f[ord[0]], fm = f[ord[1]], fw = f[ord[2]];
        Point centroid = 0.5 * (xb + xm);
        Point refl = centroid + (centroid - xw);
        double fr = score(refl);
        Point xn;
        double fn;
        if (fr > fb) {
            Point exp = centroid + 2.0 * (centroid - xw);
            double fe = score(exp);
            if (fe > fr) { xn = exp; fn = fe; } else { xn = refl; fn = fr; }
        } else if (fr > fm) {
            xn = refl; fn = fr;
        } else {
            Point con = centroid + 0.5 * (xw - centroid);
            double fc = score(con);
            if (fc > fw) { xn = con; fn = fc; }
            else {
                // shrink toward best
                simplex = {xb, xb + 0.5 * (xm - xb), xb + 0.5 * (xw - xb)};
                f = {fb, score(simplex[1]), score(simplex[2])};
                continue;
            }
        }
        simplex = {xb, xm, xn};
        f = {fb, fm, fn};
        if (norm(simplex[0] - simplex[2]) + norm(simplex[0] - simplex[1]) < 1e-12 * std::max(w, h))
            break;
    }
    return std::max({f[0], f[1], f[2]});
}

// ── GridDomain ──────────────────────────────────────────────────────

GridDomain::GridDomain(GridGeometry geom, std::vector<std::uint8_t> mask)
    : geom_(geom), mask_(std::move(mask)) {
    if (geom_.dx <= 0.0) throw invalid_domain_error("grid cell size must be positive");
    if (mask_.size() != geom_.cells())
        throw invalid_domain_error("mask size does not match grid dimensions");
    for (int i = 0; i < geom_.nx; ++i) {
        if (mask_[geom_.index(i, 0)] || mask_[geom_.index(i, geom_.ny - 1)])
            throw invalid_domain_error("grid mask must have an empty one-cell border");
    }
    for (int j = 0; j < geom_.ny; ++j) {
        if (mask_[geom_.index(0, j)] || mask_[geom_.index(geom_.nx - 1, j)])
            throw invalid_domain_error("grid mask must have an empty one-cell border");
    }
    for (std::uint8_t m : mask_) interior_count_ += m ? 1 : 0;
    if (interior_count_ == 0)
        throw invalid_domain_error("grid mask has no interior cell");
}

double GridDomain::area() const {
    return static_cast<double>(interior_count_) * geom_.dx * geom_.dx;
}

double GridDomain::chamfer_inradius() const {
    // Dijkstra-flavored two-pass chamfer with weights 1 / sqrt(2),
    // measuring distance from each interior cell to the nearest
    // exterior cell center.
    const double INF = std::numeric_limits<double>::infinity();
    const double diag = std::numbers::sqrt2;
    std::vector<double> d(geom_.cells(), 0.0);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = mask_[k] ? INF : 0.0;
    auto relax = [&](int i, int j, int di, int dj, double w) {
        int i2 = i + di, j2 = j + dj;
        if (i2 < 0 || j2 < 0 || i2 >= geom_.nx || j2 >= geom_.ny) return;
        double cand = d[geom_.index(i2, j2)] + w;
        double& cur = d[geom_.index(i, j)];
        if (cand < cur) cur = cand;
    };
    for (int j = 0; j < geom_.ny; ++j)
        for (int i = 0; i < geom_.nx; ++i) {
            relax(i, j, -1, 0, 1.0);
            relax(i, j, 0, -1, 1.0);
            relax(i, j, -1, -1, diag);
            relax(i, j, 1, -1, diag);
        }
    for (int j = geom_.ny - 1; j >= 0; --j)
        for (int i = geom_.nx - 1; i >= 0; --i) {
            relax(i, j, 1, 0, 1.0);
            relax(i, j, 0, 1, 1.0);
            relax(i, j, 1, 1, diag);
            relax(i, j, -1, 1, diag);
        }
    double m = 0.0;
    for (double v : d)
        if (v != INF) m = std::max(m, v);
    return std::max(0.5 * geom_.dx, (m - 0.5) * geom_.dx);
}

// ── DomainSpec / rasterization ──────────────────────────────────────

Polygon DomainSpec::to_polygon() const {
    switch (kind) {
        case Kind::polygon:
            return Polygon(vertices);
        case Kind::disk: {
            if (r <= 0.0) throw invalid_domain_error("disk radius must be positive");
            std::vector<Point> v;
            v.reserve(kDiskPolygonEdges);
            for (int k = 0; k < kDiskPolygonEdges; ++k) {
                double a = 2.0 * std::numbers::pi * k / kDiskPolygonEdges;
                v.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
            }
            return Polygon(std::move(v));
        }
        case Kind::rectangle: {
            if (w <= 0.0 || h <= 0.0)
                throw invalid_domain_error("rectangle sides must be positive");
            return Polygon({{0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}});
        }
        case Kind::l_shape: {
            if (w <= 0.0 || h <= 0.0)
                throw invalid_domain_error("l_shape sides must be positive");
            double nt = notch > 0.0 ? notch : 0.5 * std::min(w, h);
            if (nt >= w || nt >= h)
                throw invalid_domain_error("l_shape notch must be smaller than both sides");
            return Polygon({{0.0, 0.0}, {w, 0.0}, {w, h - nt}, {w - nt, h - nt},
                            {w - nt, h}, {0.0, h}});
        }
    }
    throw invalid_domain_error("unknown domain kind");
}

GridDomain rasterize(const DomainSpec& spec) {
    if (spec.resolution < 16)
        throw invalid_domain_error("resolution must be at least 16");
    return rasterize(spec.to_polygon(), spec.resolution);
}

GridDomain rasterize(const Polygon& p, int resolution) {
    if (resolution < 16)
        throw invalid_domain_error("resolution must be at least 16");
    auto [lo, hi] = p.bounding_box();
    double w = hi.x - lo.x, h = hi.y - lo.y;
    double dx = std::max(w, h) / resolution;
    int cols = static_cast<int>(std::ceil(w / dx - 1e-9));
    int rows = static_cast<int>(std::ceil(h / dx - 1e-9));
    GridGeometry geom;
    geom.dx = dx;
    geom.origin = {lo.x - dx, lo.y - dx};
    geom.nx = cols + 2;
    geom.ny = rows + 2;

    std::vector<std::uint8_t> mask(geom.cells(), 0);
    std::size_t count = 0;
    for (int j = 1; j < geom.ny - 1; ++j) {
        for (int i = 1; i < geom.nx - 1; ++i) {
            if (p.contains(geom.center(i, j))) {
                mask[geom.index(i, j)] = 1;
                ++count;
            }
        }
    }
    if (count == 0)
        throw resolution_too_coarse_error("no cell center falls inside the domain");
    return GridDomain(geom, std::move(mask));
}

// ── Cut-set polygonization ──────────────────────────────────────────

std::vector<std::uint8_t> fill_holes(const GridDomain& g,
                                     const std::vector<std::uint8_t>& selected) {
    const auto& geom = g.geom();
    if (selected.size() != geom.cells())
        throw std::invalid_argument("selection size does not match grid");
    std::vector<std::uint8_t> out = selected;
    std::vector<std::uint8_t> seen(geom.cells(), 0);
    std::deque<std::pair<int, int>> queue;
    auto push = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= geom.nx || j >= geom.ny) return;
        std::size_t k = geom.index(i, j);
        if (seen[k] || out[k]) return;
        seen[k] = 1;
        queue.push_back({i, j});
    };
    for (int i = 0; i < geom.nx; ++i) {
        push(i, 0);
        push(i, geom.ny - 1);
    }
    for (int j = 0; j < geom.ny; ++j) {
        push(0, j);
        push(geom.nx - 1, j);
    }
    while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        push(i + 1, j);
        push(i - 1, j);
        push(i, j + 1);
        push(i, j - 1);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (!out[k] && !seen[k]) out[k] = 1;  // enclosed pocket
    }
    return out;
}

std::vector<Polygon> cut_set_to_polygons(const GridDomain& g,
                                         const std::vector<std::uint8_t>& selected) {
    const auto& geom = g.geom();
    if (selected.size() != geom.cells())
        throw std::invalid_argument("selection size does not match grid");
    std::size_t count = 0;
    for (std::size_t k = 0; k < selected.size(); ++k) {
        if (selected[k]) {
            if (!g.mask()[k])
                throw std::invalid_argument("selection contains cells outside the domain mask");
            ++count;
        }
    }
    if (count == 0) return {};

    std::vector<std::uint8_t> filled = fill_holes(g, selected);
    std::vector<double> values(geom.cells(), 0.0);
    for (std::size_t k = 0; k < filled.size(); ++k) values[k] = filled[k] ? 1.0 : 0.0;

    std::vector<Polygon> polys;
    for (const Contour& loop : marching_squares(geom, values, 0.5)) {
        Contour relaxed = relax_contour(loop, 0.49 * geom.dx);
        polys.push_back(Polygon::from_contour(relaxed));
    }
    return polys;
}

double aggregate_quotient(const std::vector<Polygon>& polys) {
    if (polys.empty()) throw invalid_domain_error("quotient of an empty polygon set");
    double p = 0.0, a = 0.0;
    for (const Polygon& poly : polys) {
        p += poly.perimeter();
        a += poly.area();
    }
    return p / a;
}

}  // namespace cheeger
