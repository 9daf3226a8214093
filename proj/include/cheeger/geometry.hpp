#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheeger {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
double norm(Point p);
double dot(Point a, Point b);
double cross(Point a, Point b);

/// Distance from point `p` to the segment [a, b].
double point_segment_distance(Point p, Point a, Point b);

class invalid_domain_error : public std::runtime_error {
public:
    explicit invalid_domain_error(const std::string& what) : std::runtime_error(what) {}
};

class resolution_too_coarse_error : public std::runtime_error {
public:
    explicit resolution_too_coarse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Simple closed polygon, counterclockwise, at least 3 vertices,
/// positive area. The last vertex connects back to the first.
class Polygon {
public:
    explicit Polygon(std::vector<Point> vertices);

    /// Builds a polygon from a machine-generated closed contour:
    /// deduplicates, orients counterclockwise, checks area only.
    /// Skips the O(n^2) simplicity test.
    static Polygon from_contour(std::vector<Point> loop);

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    double area() const;       // shoelace, > 0
    double perimeter() const;  // sum of edge lengths
    double quotient() const;   // perimeter / area

    /// Strict interior test; points on the boundary count as outside.
    bool contains(Point p) const;

    /// Euclidean distance from `p` to the polygon boundary.
    double boundary_distance(Point p) const;

    /// Axis-aligned bounding box as (min, max).
    std::pair<Point, Point> bounding_box() const;

    Polygon translated(Point d) const;
    Polygon rotated(double angle) const;
    Polygon scaled(double factor) const;

private:
    Polygon() = default;
    void check_basic() const;  // vertex count, area
    std::vector<Point> verts_;
};

/// Inradius of the polygon: radius of the largest inscribed disk.
/// Grid seeded, then polished by Nelder-Mead on the exact
/// point-to-edge distance. Accurate to ~1e-9 on corpus shapes.
double polygon_inradius(const Polygon& p);

struct GridGeometry {
    double dx = 0.0;   // cell size
    Point origin;      // lower-left corner of cell (0,0)
    int nx = 0;
    int ny = 0;

    std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    Point center(int i, int j) const {
        return {origin.x + (i + 0.5) * dx, origin.y + (j + 0.5) * dx};
    }
};

/// Rasterized domain: boolean mask over a uniform grid, true where the
/// cell center lies strictly inside the domain. Carries a one-cell
/// all-false border.
class GridDomain {
public:
    GridDomain(GridGeometry geom, std::vector<std::uint8_t> mask);

    const GridGeometry& geom() const { return geom_; }
    double dx() const { return geom_.dx; }
    int nx() const { return geom_.nx; }
    int ny() const { return geom_.ny; }
    bool inside(int i, int j) const {
        return i >= 0 && j >= 0 && i < geom_.nx && j < geom_.ny &&
               mask_[geom_.index(i, j)] != 0;
    }
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    std::size_t interior_count() const { return interior_count_; }

    /// (#true cells) * dx^2
    double area() const;

    /// Largest inscribed-disk radius estimate from the mask alone
    /// (8-neighbor chamfer distance to the exterior). Within ~8% of
    /// the true grid inradius; used for solver brackets.
    double chamfer_inradius() const;

private:
    GridGeometry geom_;
    std::vector<std::uint8_t> mask_;
    std::size_t interior_count_ = 0;
};

/// Input description of a domain: an explicit polygon or a named
/// primitive, plus the rasterization resolution (cells across the
/// longer side of the bounding box, >= 16).
struct DomainSpec {
    enum class Kind { polygon, disk, rectangle, l_shape };

    Kind kind = Kind::polygon;
    std::vector<Point> vertices;  // kind == polygon
    Point center;                 // kind == disk
    double r = 0.0;               // kind == disk
    double w = 0.0;               // rectangle / l_shape
    double h = 0.0;               // rectangle / l_shape
    double notch = 0.0;           // l_shape; 0 = min(w,h)/2
    int resolution = 0;

    /// Exact polygon for the spec; disks become regular 256-gons.
    Polygon to_polygon() const;
};

/// Number of edges used to polygonize a disk primitive.
inline constexpr int kDiskPolygonEdges = 256;

/// Rasterize with cell-center inclusion (boundary ties count as
/// outside). dx = longer bbox side / resolution, one-cell padding.
GridDomain rasterize(const DomainSpec& spec);
GridDomain rasterize(const Polygon& p, int resolution);

/// Fill enclosed pockets of `selected`: complement cells not reachable
/// from the grid border (4-connectivity) are added to the selection.
std::vector<std::uint8_t> fill_holes(const GridDomain& g,
                                     const std::vector<std::uint8_t>& selected);

/// Polygonize a cell set: marching-squares contours of the selection
/// (crossings on cell-boundary midpoints), holes filled, staircase
/// relaxed within a half-cell band. Empty selection gives an empty
/// sequence.
std::vector<Polygon> cut_set_to_polygons(const GridDomain& g,
                                         const std::vector<std::uint8_t>& selected);

/// Aggregate quotient of a polygon family: sum of perimeters over sum
/// of areas. Equals Polygon::quotient for a single polygon.
double aggregate_quotient(const std::vector<Polygon>& polys);

}  // namespace cheeger
