#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cheeger/maxflow.hpp"

using namespace cheeger;

namespace {

// s=0, a=1, b=2, t=3
Network example_net() {
    Network n;
    n.node_count = 4;
    n.source = 0;
    n.sink = 3;
    n.arcs = {{0, 1, 3}, {0, 2, 2}, {1, 3, 2}, {2, 3, 3}, {1, 2, 1}};
    return n;
}

// Exhaustive minimum over all cuts (source side enumerated).
double brute_force_min_cut(const Network& net) {
    int free_nodes = 0;
    std::vector<int> ids;
    for (int v = 0; v < net.node_count; ++v)
        if (v != net.source && v != net.sink) {
            ids.push_back(v);
            ++free_nodes;
        }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t m = 0; m < (1ull << free_nodes); ++m) {
        Cut cut;
        cut.in_source_side.assign(net.node_count, 0);
        cut.in_source_side[net.source] = 1;
        for (int k = 0; k < free_nodes; ++k)
            if (m & (1ull << k)) cut.in_source_side[ids[k]] = 1;
        best = std::min(best, cut_capacity(net, cut));
    }
    return best;
}

Network random_net(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nn(4, 12);
    std::uniform_int_distribution<int> cap(0, 10);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Network n;
    n.node_count = nn(rng);
    n.source = 0;
    n.sink = n.node_count - 1;
    for (int u = 0; u < n.node_count; ++u)
        for (int v = 0; v < n.node_count; ++v) {
            if (u == v) continue;
            if (unif(rng) < 0.35) n.arcs.push_back({u, v, static_cast<double>(cap(rng))});
        }
    return n;
}

}  // namespace

TEST_CASE("max flow on the four-node example") {
    Network net = example_net();
    CHECK(brute_force_min_cut(net) == doctest::Approx(5.0));
    auto r = max_flow(net);
    CHECK(r.value == doctest::Approx(5.0));

    Cut cut = min_cut(net, r.flow);
    CHECK(cut.contains(0));
    CHECK(!cut.contains(3));
    CHECK(cut_capacity(net, cut) == doctest::Approx(5.0));
    // {s} is the unique min cut here
    CHECK(!cut.contains(1));
    CHECK(!cut.contains(2));
}

TEST_CASE("single arc and disconnected networks") {
    Network single{2, 0, 1, {{0, 1, 7}}};
    auto r = max_flow(single);
    CHECK(r.value == doctest::Approx(7.0));
    Cut cut = min_cut(single, r.flow);
    CHECK(cut.contains(0));
    CHECK(!cut.contains(1));

    Network disc{3, 0, 2, {{0, 1, 5}}};
    CHECK(max_flow(disc).value == doctest::Approx(0.0));
}

TEST_CASE("two parallel paths") {
    Network n{4, 0, 3, {{0, 1, 1}, {1, 3, 1}, {0, 2, 2}, {2, 3, 2}}};
    auto r = max_flow(n);
    CHECK(r.value == doctest::Approx(3.0));
    CHECK(cut_capacity(n, min_cut(n, r.flow)) == doctest::Approx(3.0));
}

TEST_CASE("parallel arcs stay distinct, self-loops carry nothing") {
    Network n{2, 0, 1, {{0, 1, 2}, {0, 1, 3}, {0, 0, 9}}};
    auto r = max_flow(n);
    CHECK(r.value == doctest::Approx(5.0));
    CHECK(r.flow.arc_flow[2] == 0.0);
}

TEST_CASE("cut capacities of the example network") {
    Network net = example_net();
    auto cut_of = [&](std::initializer_list<int> nodes) {
        Cut c;
        c.in_source_side.assign(net.node_count, 0);
        for (int v : nodes) c.in_source_side[v] = 1;
        return c;
    };
    CHECK(cut_capacity(net, cut_of({0})) == doctest::Approx(5.0));
    CHECK(cut_capacity(net, cut_of({0, 1})) == doctest::Approx(5.0));
    CHECK(cut_capacity(net, cut_of({0, 1, 2})) == doctest::Approx(5.0));
    CHECK_THROWS_AS(cut_capacity(net, cut_of({1})), std::invalid_argument);
}

TEST_CASE("excess bookkeeping") {
    Network net = example_net();
    auto r = max_flow(net);
    CHECK(excess(net, r.flow, 1) == doctest::Approx(0.0));
    CHECK(excess(net, r.flow, 2) == doctest::Approx(0.0));
    CHECK(excess(net, r.flow, 0) == doctest::Approx(5.0));
    CHECK(excess(net, r.flow, 3) == doctest::Approx(-5.0));
}

TEST_CASE("weak duality and feasibility errors") {
    Network net = example_net();
    auto r = max_flow(net);
    Cut cut = min_cut(net, r.flow);
    CHECK(verify_weak_duality(net, r.flow, cut));

    Cut all;
    all.in_source_side.assign(net.node_count, 1);
    all.in_source_side[net.sink] = 0;
    CHECK(verify_weak_duality(net, r.flow, all));

    Flow corrupted = r.flow;
    corrupted.arc_flow[0] = net.arcs[0].capacity + 1.0;
    CHECK_THROWS_AS(verify_weak_duality(net, corrupted, cut), feasibility_error);

    Flow zero;
    zero.arc_flow.assign(net.arcs.size(), 0.0);
    CHECK_THROWS_AS(min_cut(net, zero), not_a_max_flow_error);
}

TEST_CASE("uniform source reduction") {
    // one base node, weight 1, sink arc capacity 2
    auto sat = uniform_source_network({{1.0}}, {{0, 2.0}}, {}, 2.0);
    CHECK(max_flow(sat.net).value == doctest::Approx(sat.supply));

    auto unsat = uniform_source_network({{1.0}}, {{0, 2.0}}, {}, 2.5);
    CHECK(max_flow(unsat.net).value == doctest::Approx(2.0));
    CHECK(max_flow(unsat.net).value < unsat.supply * (1.0 - 1e-9));

    // path of 3 unit-weight nodes, sink attached at one end
    std::vector<Network::Arc> internal = {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}};
    auto path = uniform_source_network({{1.0}, {1.0}, {1.0}}, {{0, 1.0}}, internal, 1.0 / 3);
    CHECK(max_flow(path.net).value == doctest::Approx(path.supply));

    CHECK_THROWS_AS(uniform_source_network({{1.0}}, {{0, 1.0}}, {}, -1.0),
                    std::domain_error);
}

TEST_CASE("strong duality on random integer networks") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 60; ++t) {
        Network net = random_net(rng);
        auto r = max_flow(net);
        CHECK(r.value == brute_force_min_cut(net));  // exact, integer arithmetic
        CHECK(r.value == std::floor(r.value));
        Cut cut = min_cut(net, r.flow);
        CHECK(!cut.contains(net.sink));
        CHECK(cut_capacity(net, cut) == doctest::Approx(r.value));
    }
}

TEST_CASE("raising a capacity never lowers the max flow") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        Network net = random_net(rng);
        if (net.arcs.empty()) continue;
        double before = max_flow(net).value;
        std::size_t k = static_cast<std::size_t>(unif(rng) * net.arcs.size());
        net.arcs[k].capacity += 1.0 + 5.0 * unif(rng);
        CHECK(max_flow(net).value >= before - 1e-12);
    }
}

TEST_CASE("network validation") {
    Network bad{2, 0, 0, {}};
    CHECK_THROWS_AS(max_flow(bad), std::invalid_argument);
    Network neg{2, 0, 1, {{0, 1, -1.0}}};
    CHECK_THROWS_AS(max_flow(neg), std::invalid_argument);
}
