#pragma once

#include <cstdint>
#include <vector>

#include "cheeger/distance_field.hpp"
#include "cheeger/geometry.hpp"
#include "cheeger/maxflow.hpp"

namespace cheeger {

/// Per-direction arc weights of the grid cut metric (length units per
/// unit cell size). Symmetric under quarter turns by construction.
struct CutMetricStencil {
    int neighborhood = 8;      // 4 or 8
    double axis_weight = 0.0;  // weight of axis arcs
    double diag_weight = 0.0;  // weight of diagonal arcs (8-neighborhood)

    /// 4-neighborhood, unit axis weight. The induced boundary measure
    /// is the L1 perimeter: exact on axis walls, up to sqrt(2) high on
    /// diagonals. Useful for speed, not for tight lower bounds.
    static CutMetricStencil four();

    /// 8-neighborhood with Cauchy-Crofton weights (pi/8 axis,
    /// pi/(8 sqrt 2) diagonal): boundary measure averages the exact
    /// Euclidean length over directions, error band roughly -5%/+3%.
    static CutMetricStencil eight();

    void validate() const;
};

/// Grid flow network: one node per interior cell, a super-source
/// feeding every cell at rate h * dx^2, and a collapsed sink beyond
/// the domain boundary. Neighbor and boundary arcs carry weight * dx.
struct GridNetwork {
    Network net;
    std::vector<std::int32_t> node_of_cell;        // -1 outside
    std::vector<std::pair<int, int>> cell_of_node;
    std::vector<std::int8_t> arc_dir;              // 0..7 cell arcs, -1 source arcs
    double supply = 0.0;                           // h * grid area
};

GridNetwork build_grid_network(const GridDomain& g, double h,
                               const CutMetricStencil& stencil);

/// True iff the uniform production rate h is routable: max flow
/// saturates every super-source arc (relative tolerance 1e-9,
/// borderline values count as infeasible).
bool feasible(const GridDomain& g, double h, const CutMetricStencil& stencil);

struct CertificateReport {
    double h_claimed = 0.0;
    double max_speed = 0.0;  // max |V| over interior cells
    double min_div = 0.0;    // min 2x2-block-averaged divergence
    double tolerance = 0.0;
    bool pass = false;
};

/// Divergence-certificate check: pass iff max|V| <= 1 + tol and the
/// block-averaged divergence stays >= h - tol everywhere. Blocks are
/// 2x2 cell groups; the averaging suppresses checkerboard modes of the
/// staggered reconstruction.
CertificateReport certify_lower_bound(const VectorField& v, const GridDomain& g,
                                      double h_claimed, double tol);

/// Certificate report for a saturating flow: the speed bound comes
/// from the reconstructed field, while min_div is the exact arc-level
/// divergence (net outflow per cell over dx^2, block-averaged), which
/// conservation pins to h on every cell once the sources saturate.
CertificateReport certify_saturating_flow(const GridNetwork& gn, const Flow& f,
                                          const GridDomain& g, double h_claimed,
                                          double tol);

double default_certificate_tolerance(double dx);

struct CheegerResult {
    double h_lower = 0.0;  // largest routable production rate
    double h_upper = 0.0;  // quotient of the extracted cut set
    std::vector<Polygon> cheeger_set;
    std::vector<std::uint8_t> cut_cells;  // extracted cell set (hole-filled)
    VectorField certificate;
    CertificateReport certificate_report;
    int iterations = 0;
};

/// Bisection on h over [0, 4/inradius]: the largest feasible rate
/// becomes h_lower; the min cut at the smallest infeasible rate is
/// extracted, hole-filled and polygonized, and its quotient becomes
/// h_upper. The saturating flow at h_lower is converted to the
/// certificate field.
CheegerResult cheeger_constant(const GridDomain& g, const CutMetricStencil& stencil,
                               double tol_h);

/// Cell vector field from arc flows: each arc contributes its flow
/// times its displacement vector, split between its endpoint cells and
/// normalized by cell area. At saturation the discrete divergence
/// equals h on every cell.
VectorField flow_to_vector_field(const GridNetwork& gn, const Flow& f,
                                 const GridDomain& g);

/// Cut-metric capacity of the cell-set boundary: total weight of arcs
/// leaving the set (including boundary arcs to the collapsed sink).
double cut_metric_capacity(const GridDomain& g, const std::vector<std::uint8_t>& cells,
                           const CutMetricStencil& stencil);

struct QuotientCandidate {
    double q_value = 0.0;        // discrete TV / L1
    double best_threshold = 0.0;
    double best_quotient = 0.0;  // min over thresholds of the level-set quotient
};

/// Dual quotient of a nonnegative candidate function: the total
/// variation over the L1 norm, plus a threshold sweep returning the
/// best superlevel-set quotient. The sweep never exceeds q_value by
/// more than the discretization slack.
QuotientCandidate quotient_of_candidate(const ScalarField& phi, const GridDomain& g,
                                        int n_levels);

struct SubdomainSuiteReport {
    int samples = 0;
    int evaluated = 0;      // nonempty samples measured
    double bound = 0.0;     // 1 / reduced inradius of the domain
    double tolerance = 0.0;
    double min_margin = 0.0;  // min over samples of quotient - bound
    bool all_hold = false;
};

/// Random simply-connected subsets (unions of disks intersected with
/// the domain, hole-filled): every polygonized sample must satisfy
/// quotient >= 1/reduced_inradius - tol. The full domain is always
/// sample zero. Deterministic for a fixed seed.
SubdomainSuiteReport subdomain_bound_suite(const GridDomain& g, int samples,
                                           double rho = -1.0,
                                           std::uint64_t seed = 0x5eed);

/// Exact Euclidean distance from the cell centers to the nearest
/// exterior cell center, minus half a cell: mask-only inradius.
double mask_inradius(const GridDomain& g);

}  // namespace cheeger
