#include "cheeger/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace cheeger {

namespace {

// Lattice edge between adjacent samples. orient 0: (i,j)-(i+1,j),
// orient 1: (i,j)-(i,j+1).
std::uint64_t edge_key(int i, int j, int orient, int nx) {
    return (static_cast<std::uint64_t>(j) * nx + i) * 2 + orient;
}

struct Segment {
    std::uint64_t a;
    std::uint64_t b;
};

}  // namespace

std::vector<Contour> marching_squares(const GridGeometry& geom,
                                      const std::vector<double>& values,
                                      double level) {
    const int nx = geom.nx;
    const int ny = geom.ny;
    if (values.size() != geom.cells())
        throw std::invalid_argument("marching_squares: value array does not match grid");

    auto val = [&](int i, int j) { return values[geom.index(i, j)]; };
    auto in = [&](int i, int j) { return val(i, j) > level; };

    // Crossing point on a lattice edge, linearly interpolated.
    std::unordered_map<std::uint64_t, Point> crossing;
    auto cross_point = [&](int i, int j, int orient) {
        std::uint64_t key = edge_key(i, j, orient, nx);
        auto it = crossing.find(key);
        if (it != crossing.end()) return key;
        int i2 = orient == 0 ? i + 1 : i;
        int j2 = orient == 0 ? j : j + 1;
        double v0 = val(i, j), v1 = val(i2, j2);
        double t = (level - v0) / (v1 - v0);
        t = std::clamp(t, 0.0, 1.0);
        Point p0 = geom.center(i, j), p1 = geom.center(i2, j2);
        crossing.emplace(key, p0 + t * (p1 - p0));
        return key;
    };

    // Per dual cell: up to two segments joining crossed edges.
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, int>>> edge_users;
    std::vector<Segment> segments;
    std::vector<std::uint32_t> cell_of_segment;

    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            int config = (in(i, j) ? 1 : 0) | (in(i + 1, j) ? 2 : 0) |
                         (in(i + 1, j + 1) ? 4 : 0) | (in(i, j + 1) ? 8 : 0);
            if (config == 0 || config == 15) continue;

            // Evaluated lazily: only crossed edges get interpolation.
            auto B = [&] { return cross_point(i, j, 0); };
            auto R = [&] { return cross_point(i + 1, j, 1); };
            auto T = [&] { return cross_point(i, j + 1, 0); };
            auto L = [&] { return cross_point(i, j, 1); };

            auto add = [&](std::uint64_t a, std::uint64_t b) {
                std::uint32_t cell = static_cast<std::uint32_t>(j) * nx + i;
                int idx = static_cast<int>(segments.size());
                segments.push_back({a, b});
                cell_of_segment.push_back(cell);
                edge_users[a].push_back({cell, idx});
                edge_users[b].push_back({cell, idx});
            };

            switch (config) {
                case 1:  add(L(), B()); break;
                case 2:  add(B(), R()); break;
                case 3:  add(L(), R()); break;
                case 4:  add(R(), T()); break;
                case 6:  add(B(), T()); break;
                case 7:  add(L(), T()); break;
                case 8:  add(T(), L()); break;
                case 9:  add(B(), T()); break;
                case 11: add(R(), T()); break;
                case 12: add(L(), R()); break;
                case 13: add(B(), R()); break;
                case 14: add(L(), B()); break;
                case 5: {  // saddle: corners 0 and 2 inside
                    double c = 0.25 * (val(i, j) + val(i + 1, j) + val(i + 1, j + 1) +
                                       val(i, j + 1));
                    if (c > level) {
                        add(T(), L());
                        add(B(), R());
                    } else {
                        add(L(), B());
                        add(R(), T());
                    }
                    break;
                }
                case 10: {  // saddle: corners 1 and 3 inside
                    double c = 0.25 * (val(i, j) + val(i + 1, j) + val(i + 1, j + 1) +
                                       val(i, j + 1));
                    if (c > level) {
                        add(L(), B());
                        add(R(), T());
                    } else {
                        add(T(), L());
                        add(B(), R());
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // Each crossed lattice edge is used by exactly two segments (one
    // per adjacent dual cell); walk edge-to-edge to close loops.
    std::vector<bool> used(segments.size(), false);
    std::vector<Contour> loops;

    for (std::size_t start = 0; start < segments.size(); ++start) {
        if (used[start]) continue;
        Contour loop;
        int cur = static_cast<int>(start);
        std::uint64_t enter = segments[start].a;
        while (true) {
            used[cur] = true;
            std::uint64_t exit =
                segments[cur].a == enter ? segments[cur].b : segments[cur].a;
            loop.push_back(crossing.at(exit));
            const auto& users = edge_users.at(exit);
            int next = -1;
            for (auto [cell, idx] : users) {
                if (idx != cur) next = idx;
            }
            if (next < 0 || users.size() != 2)
                throw std::runtime_error("marching_squares: open contour (level touches grid border)");
            if (used[next]) break;  // closed the loop
            enter = exit;
            cur = next;
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

Contour relax_contour(const Contour& c, double max_dev, int iterations) {
    const std::size_t n = c.size();
    if (n < 8) return c;
    Contour cur = c;
    Contour next(n);
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t k = 0; k < n; ++k) {
            const Point& prev = cur[(k + n - 1) % n];
            const Point& nxt = cur[(k + 1) % n];
            Point cand{0.5 * (prev.x + nxt.x), 0.5 * (prev.y + nxt.y)};
            Point d = cand - c[k];
            double dist = norm(d);
            if (dist > max_dev) cand = c[k] + (max_dev / dist) * d;
            next[k] = cand;
        }
        cur.swap(next);
    }
    return cur;
}

double contour_length(const Contour& c) {
    double len = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        len += norm(c[(k + 1) % c.size()] - c[k]);
    return len;
}

double contour_signed_area(const Contour& c) {
    double a = 0.0;
    if (c.empty()) return a;
    Point o = c[0];
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        a += cross(c[k] - o, c[k + 1] - o);
    }
    return 0.5 * a;
}

}  // namespace cheeger
