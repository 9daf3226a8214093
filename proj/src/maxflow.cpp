#include "cheeger/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace cheeger {

void Network::validate() const {
    if (node_count < 2) throw std::invalid_argument("network needs at least two nodes");
    if (source == sink) throw std::invalid_argument("source and sink must differ");
    if (source < 0 || source >= node_count || sink < 0 || sink >= node_count)
        throw std::invalid_argument("source/sink out of range");
    for (const Arc& a : arcs) {
        if (a.from < 0 || a.from >= node_count || a.to < 0 || a.to >= node_count)
            throw std::invalid_argument("arc endpoint out of range");
        if (!(a.capacity >= 0.0) || !std::isfinite(a.capacity))
            throw std::invalid_argument("arc capacities must be finite and nonnegative");
    }
}

double Network::max_capacity() const {
    double m = 0.0;
    for (const Arc& a : arcs) m = std::max(m, a.capacity);
    return m;
}

bool Network::integer_capacities() const {
    for (const Arc& a : arcs)
        if (a.capacity != std::floor(a.capacity)) return false;
    return true;
}

namespace {

// Residual graph with paired arcs: entry 2k is the k-th input arc,
// entry 2k+1 its reverse.
class Dinic {
public:
    explicit Dinic(const Network& net) : net_(net), eps_(1e-12 * std::max(1.0, net.max_capacity())) {
        const int n = net.node_count;
        const std::size_t m = net.arcs.size();
        to_.resize(2 * m);
        residual_.resize(2 * m);
        head_.assign(n + 1, 0);
        for (const auto& a : net.arcs) {
            if (a.from == a.to) continue;
            head_[a.from + 1]++;
            head_[a.to + 1]++;
        }
        for (int v = 0; v < n; ++v) head_[v + 1] += head_[v];
        adj_.resize(head_[n]);
        std::vector<int> cursor(head_.begin(), head_.end() - 1);
        for (std::size_t k = 0; k < m; ++k) {
            const auto& a = net.arcs[k];
            if (a.from == a.to) {
                to_[2 * k] = to_[2 * k + 1] = a.from;
                residual_[2 * k] = residual_[2 * k + 1] = 0.0;
                continue;  // self-loop: never carries flow
            }
            to_[2 * k] = a.to;
            to_[2 * k + 1] = a.from;
            residual_[2 * k] = a.capacity;
            residual_[2 * k + 1] = 0.0;
            adj_[cursor[a.from]++] = static_cast<int>(2 * k);
            adj_[cursor[a.to]++] = static_cast<int>(2 * k + 1);
        }
        level_.resize(n);
        it_.resize(n);
    }

    double run() {
        double total = 0.0;
        while (bfs()) {
            for (int v = 0; v < net_.node_count; ++v) it_[v] = head_[v];
            while (true) {
                double pushed = dfs(net_.source, std::numeric_limits<double>::infinity());
                if (pushed <= 0.0) break;
                total += pushed;
            }
        }
        return total;
    }

    Flow extract_flow() const {
        Flow f;
        f.arc_flow.resize(net_.arcs.size());
        for (std::size_t k = 0; k < net_.arcs.size(); ++k) {
            const auto& a = net_.arcs[k];
            if (a.from == a.to) {
                f.arc_flow[k] = 0.0;
                continue;
            }
            f.arc_flow[k] = a.capacity - residual_[2 * k];
            if (f.arc_flow[k] < 0.0) f.arc_flow[k] = 0.0;
        }
        return f;
    }

private:
    bool bfs() {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[net_.source] = 0;
        q.push(net_.source);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[v]; e < head_[v + 1]; ++e) {
                int arc = adj_[e];
                int w = to_[arc];
                if (level_[w] < 0 && residual_[arc] > eps_) {
                    level_[w] = level_[v] + 1;
                    q.push(w);
                }
            }
        }
        return level_[net_.sink] >= 0;
    }

    double dfs(int v, double limit) {
        if (v == net_.sink) return limit;
        for (int& e = it_[v]; e < head_[v + 1]; ++e) {
            int arc = adj_[e];
            int w = to_[arc];
            if (residual_[arc] <= eps_ || level_[w] != level_[v] + 1) continue;
            double pushed = dfs(w, std::min(limit, residual_[arc]));
            if (pushed > 0.0) {
                residual_[arc] -= pushed;
                residual_[arc ^ 1] += pushed;
                return pushed;
            }
        }
        level_[v] = -1;  // dead end
        return 0.0;
    }

    const Network& net_;
    double eps_;
    std::vector<int> to_;
    std::vector<double> residual_;
    std::vector<int> head_;
    std::vector<int> adj_;
    std::vector<int> level_;
    std::vector<int> it_;
};

}  // namespace

MaxFlowResult max_flow(const Network& net) {
    net.validate();
    Dinic solver(net);
    MaxFlowResult out;
    out.value = solver.run();
    out.flow = solver.extract_flow();
    verify_flow(net, out.flow);
    return out;
}

double excess(const Network& net, const Flow& f, int v) {
    double e = 0.0;
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
        const auto& a = net.arcs[k];
        if (a.from == a.to) continue;
        if (a.from == v) e += f.arc_flow[k];
        if (a.to == v) e -= f.arc_flow[k];
    }
    return e;
}

void verify_flow(const Network& net, const Flow& f) {
    if (f.arc_flow.size() != net.arcs.size())
        throw feasibility_error("flow vector does not match arc list");
    double scale = std::max(1.0, net.max_capacity());
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
        double fk = f.arc_flow[k];
        if (fk < -1e-9 * scale || fk > net.arcs[k].capacity + 1e-9 * scale)
            throw feasibility_error("capacity constraint violated on arc " + std::to_string(k));
    }
    std::vector<double> ex(net.node_count, 0.0);
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
        const auto& a = net.arcs[k];
        if (a.from == a.to) continue;
        ex[a.from] += f.arc_flow[k];
        ex[a.to] -= f.arc_flow[k];
    }
    for (int v = 0; v < net.node_count; ++v) {
        if (v == net.source || v == net.sink) continue;
        if (std::abs(ex[v]) > 1e-7 * scale)
            throw feasibility_error("conservation violated at node " + std::to_string(v));
    }
}

Cut min_cut(const Network& net, const Flow& f) {
    verify_flow(net, f);
    double scale = std::max(1.0, net.max_capacity());
    double eps = 1e-10 * scale;

    // Residual adjacency from the flow itself.
    std::vector<std::vector<std::pair<int, double>>> radj(net.node_count);
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
        const auto& a = net.arcs[k];
        if (a.from == a.to) continue;
        radj[a.from].push_back({a.to, a.capacity - f.arc_flow[k]});
        radj[a.to].push_back({a.from, f.arc_flow[k]});
    }
    Cut cut;
    cut.in_source_side.assign(net.node_count, 0);
    std::queue<int> q;
    cut.in_source_side[net.source] = 1;
    q.push(net.source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, r] : radj[v]) {
            if (r > eps && !cut.in_source_side[w]) {
                cut.in_source_side[w] = 1;
                q.push(w);
            }
        }
    }
    if (cut.contains(net.sink))
        throw not_a_max_flow_error("sink reachable in residual graph: flow is not maximal");
    double value = excess(net, f, net.source);
    double cap = cut_capacity(net, cut);
    double tol = net.integer_capacities() ? 0.5 : 1e-9 * std::max(scale, std::abs(value));
    if (std::abs(cap - value) > tol)
        throw not_a_max_flow_error("residual cut capacity does not certify the flow value");
    return cut;
}

double cut_capacity(const Network& net, const Cut& cut) {
    if (static_cast<int>(cut.in_source_side.size()) != net.node_count)
        throw std::invalid_argument("cut size does not match network");
    if (!cut.contains(net.source) || cut.contains(net.sink))
        throw std::invalid_argument("cut must contain the source and exclude the sink");
    double cap = 0.0;
    for (const auto& a : net.arcs) {
        if (a.from == a.to) continue;
        if (cut.contains(a.from) && !cut.contains(a.to)) cap += a.capacity;
    }
    return cap;
}

bool verify_weak_duality(const Network& net, const Flow& f, const Cut& cut) {
    verify_flow(net, f);
    double value = excess(net, f, net.source);
    return value <= cut_capacity(net, cut) + 1e-12 * std::max(1.0, net.max_capacity());
}

UniformSourceNetwork uniform_source_network(const std::vector<WeightedNode>& base,
                                            const std::vector<SinkArc>& sink_attach,
                                            const std::vector<Network::Arc>& internal,
                                            double h) {
    if (h < 0.0) throw std::domain_error("uniform source strength must be nonnegative");
    const int n = static_cast<int>(base.size());
    UniformSourceNetwork out;
    out.net.node_count = n + 2;
    out.net.source = n;
    out.net.sink = n + 1;
    for (int v = 0; v < n; ++v) {
        if (base[v].weight <= 0.0)
            throw std::domain_error("node weights must be positive");
        out.net.arcs.push_back({out.net.source, v, h * base[v].weight});
        out.supply += h * base[v].weight;
    }
    for (const auto& a : internal) out.net.arcs.push_back(a);
    for (const auto& s : sink_attach)
        out.net.arcs.push_back({s.from, out.net.sink, s.capacity});
    out.net.validate();
    return out;
}

}  // namespace cheeger
