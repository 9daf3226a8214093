#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cheeger/cheeger_solver.hpp"
#include "cheeger/distance_field.hpp"
#include "cheeger/geometry.hpp"
#include "cheeger/maxflow.hpp"

namespace cheeger {

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// DomainSpec JSON:
///   {"kind": "polygon"|"disk"|"rectangle"|"l_shape",
///    "vertices": [[x,y],...], "center": [x,y], "r": ..,
///    "w": .., "h": .., "resolution": int}
/// plus the optional "notch" side for l_shape.
DomainSpec parse_domain_spec(const std::string& json_text);
DomainSpec load_domain_spec(const std::string& path);
std::string domain_spec_to_json(const DomainSpec& spec);

/// DIMACS max-flow format: "p max <n> <m>", "n <id> s|t", "a <u> <v> <cap>".
Network parse_dimacs(std::istream& in);
Network load_dimacs(const std::string& path);
void write_dimacs(std::ostream& out, const Network& net);

/// Scalar fields as "x,y,value" rows, vector fields as "x,y,vx,vy",
/// one row per interior cell, row-major.
void write_scalar_csv(std::ostream& out, const ScalarField& f, const GridDomain& g);
void write_vector_csv(std::ostream& out, const VectorField& f, const GridDomain& g);

class dimension_mismatch_error : public std::runtime_error {
public:
    explicit dimension_mismatch_error(const std::string& what) : std::runtime_error(what) {}
};

/// Reads a vector field CSV back onto the grid; throws
/// dimension_mismatch_error when the row set does not match the mask.
VectorField read_vector_csv(std::istream& in, const GridDomain& g);

/// CheegerResult JSON with keys h_lower, h_upper, resolution, stencil,
/// cheeger_set (principal polygon), certificate_stats.
std::string cheeger_result_to_json(const CheegerResult& r, int resolution,
                                   const CutMetricStencil& stencil);

/// Minimal SVG: eigenfunction heatmap cells, domain outline, extracted
/// cut-set polygons, subsampled certificate arrows.
std::string render_svg(const GridDomain& g, const Polygon& outline,
                       const std::vector<Polygon>& cheeger_set,
                       const VectorField& certificate, const ScalarField& eigenfunction);

}  // namespace cheeger
