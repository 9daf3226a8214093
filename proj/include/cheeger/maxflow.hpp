#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheeger {

class feasibility_error : public std::runtime_error {
public:
    explicit feasibility_error(const std::string& what) : std::runtime_error(what) {}
};

class not_a_max_flow_error : public std::runtime_error {
public:
    explicit not_a_max_flow_error(const std::string& what) : std::runtime_error(what) {}
};

/// Directed capacitated network. Parallel arcs stay distinct;
/// self-loops are allowed but carry no flow.
struct Network {
    struct Arc {
        int from = 0;
        int to = 0;
        double capacity = 0.0;
    };

    int node_count = 0;
    int source = 0;
    int sink = 0;
    std::vector<Arc> arcs;

    void validate() const;
    double max_capacity() const;
    bool integer_capacities() const;
};

/// Per-arc flow values aligned with Network::arcs.
struct Flow {
    std::vector<double> arc_flow;
};

/// Cut: the node set containing the source. Stored as a membership
/// mask over node ids.
struct Cut {
    std::vector<std::uint8_t> in_source_side;

    bool contains(int v) const { return in_source_side[v] != 0; }
};

struct MaxFlowResult {
    Flow flow;
    double value = 0.0;
};

/// Dinic (BFS level graph + blocking flow). The returned flow always
/// satisfies the capacity and conservation invariants; integer
/// capacities yield an exactly integral flow and value.
MaxFlowResult max_flow(const Network& net);

/// Signed net outflow of node v under f.
double excess(const Network& net, const Flow& f, int v);

/// Residual-reachability cut for a maximum flow. Throws
/// not_a_max_flow_error when f is not maximal (sink reachable, or cut
/// capacity does not match the flow value).
Cut min_cut(const Network& net, const Flow& f);

/// Total capacity of arcs leaving the source side.
double cut_capacity(const Network& net, const Cut& cut);

/// Checks value(f) <= cap(cut) + eps. Throws feasibility_error when f
/// violates a capacity bound or conservation.
bool verify_weak_duality(const Network& net, const Flow& f, const Cut& cut);

/// Throws feasibility_error if f violates capacity bounds or
/// conservation at a non-terminal node.
void verify_flow(const Network& net, const Flow& f);

/// Multi-source reduction: a super-source feeds every base node v with
/// capacity h * weight(v); base nodes keep their internal arcs and the
/// given arcs to the sink. Saturating all super-source arcs certifies
/// that every node can ship h * weight(v).
struct WeightedNode {
    double weight = 1.0;
};

struct SinkArc {
    int from = 0;
    double capacity = 0.0;
};

struct UniformSourceNetwork {
    Network net;
    double supply = 0.0;  // h * total weight
};

UniformSourceNetwork uniform_source_network(const std::vector<WeightedNode>& base,
                                            const std::vector<SinkArc>& sink_attach,
                                            const std::vector<Network::Arc>& internal,
                                            double h);

}  // namespace cheeger
