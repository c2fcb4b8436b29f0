#include <doctest.h>

#include <vector>

#include "friendnet/errors.hpp"
#include "friendnet/graph_state.hpp"
#include "friendnet/rng.hpp"
#include "friendnet/simulate.hpp"

using friendnet::GraphState;
using friendnet::GraphVariant;
using friendnet::ModelSpec;
using friendnet::Rng;
using friendnet::ValidationError;

TEST_CASE("simple variant link operations") {
    GraphState g(GraphVariant::simple);
    const int a = g.add_node(-0.5);
    const int b = g.add_node(0.5);
    const int c = g.add_node(0.0);
    CHECK(g.node_count() == 3);
    CHECK(g.personality(a) == -0.5);

    g.add_link(a, b);
    CHECK(g.linked(a, b));
    CHECK(g.linked(b, a));
    CHECK_FALSE(g.linked(a, c));
    CHECK(g.degree(a) == 1.0);
    CHECK(g.degree(b) == 1.0);
    CHECK(g.weight(a, b) == 1.0);
    CHECK(g.weight(a, c) == 0.0);
    CHECK(g.link_count() == 1);
    CHECK(g.total_weight() == 1.0);

    CHECK_THROWS_AS(g.add_link(a, b), ValidationError);   // parallel edge
    CHECK_THROWS_AS(g.add_link(b, a), ValidationError);   // either orientation
    CHECK_THROWS_AS(g.add_link(a, a), ValidationError);   // self-loop
    CHECK_NOTHROW(g.verify_integrity());

    g.remove_link(a, b);
    CHECK_FALSE(g.linked(a, b));
    CHECK(g.degree(a) == 0.0);
    CHECK(g.link_count() == 0);
    CHECK_THROWS_AS(g.remove_link(a, b), ValidationError);  // already gone
    CHECK_NOTHROW(g.verify_integrity());
}

TEST_CASE("weighted variant accumulates and floors at zero") {
    GraphState g(GraphVariant::weighted);
    const int a = g.add_node(0.0);
    const int b = g.add_node(1.0);
    g.add_node(-1.0);

    g.add_link(a, b);
    g.add_link(a, b);  // repeat is allowed: weight 2
    CHECK(g.weight(a, b) == 2.0);
    CHECK(g.degree(a) == 2.0);  // degree counts incident weight
    CHECK(g.degree(b) == 2.0);
    CHECK(g.link_count() == 1);  // one linked pair
    CHECK(g.total_weight() == 2.0);
    CHECK_THROWS_AS(g.add_link(a, a), ValidationError);  // self-loops still rejected
    CHECK_NOTHROW(g.verify_integrity());

    g.remove_link(a, b);
    CHECK(g.weight(a, b) == 1.0);
    CHECK(g.linked(a, b));
    g.remove_link(b, a);
    CHECK(g.weight(a, b) == 0.0);
    CHECK_FALSE(g.linked(a, b));
    CHECK(g.link_count() == 0);
    CHECK(g.neighbors_sorted(a).empty());
    CHECK_NOTHROW(g.verify_integrity());
}

TEST_CASE("neighbors are reported in ascending id order") {
    GraphState g(GraphVariant::simple);
    for (int i = 0; i < 8; ++i) g.add_node(0.0);
    g.add_link(5, 7);
    g.add_link(5, 0);
    g.add_link(5, 2);
    CHECK(g.neighbors_sorted(5) == std::vector<int>{0, 2, 7});
    CHECK(g.neighbors_sorted(0) == std::vector<int>{5});
}

TEST_CASE("degree snapshot mirrors the cache") {
    GraphState g(GraphVariant::simple);
    for (int i = 0; i < 4; ++i) g.add_node(0.0);
    g.add_link(0, 1);
    g.add_link(0, 2);
    const std::vector<double> snap = g.degree_snapshot();
    REQUIRE(snap.size() == 4);
    CHECK(snap[0] == 2.0);
    CHECK(snap[1] == 1.0);
    CHECK(snap[2] == 1.0);
    CHECK(snap[3] == 0.0);
}

TEST_CASE("node id bounds are checked") {
    GraphState g(GraphVariant::simple);
    g.add_node(0.0);
    CHECK_THROWS_AS(g.add_link(0, 1), ValidationError);
    CHECK_THROWS_AS((void)g.linked(0, 5), ValidationError);
}

TEST_CASE("initial graph has the requested size") {
    ModelSpec spec;
    spec.initial_nodes = 15;
    spec.initial_edges = 30;
    Rng rng(1);
    GraphState g = friendnet::init_state(spec, rng);
    CHECK(g.node_count() == 15);
    CHECK(g.link_count() == 30);
    double degree_sum = 0.0;
    for (int v = 0; v < g.node_count(); ++v) {
        degree_sum += g.degree(v);
        CHECK(g.personality(v) >= -1.0);
        CHECK(g.personality(v) <= 1.0);
    }
    CHECK(degree_sum == 60.0);  // mean degree 4
    CHECK_NOTHROW(g.verify_integrity());
}

TEST_CASE("two nodes and one initial link are forced") {
    ModelSpec spec;
    spec.initial_nodes = 2;
    spec.initial_edges = 1;
    Rng rng(3);
    GraphState g = friendnet::init_state(spec, rng);
    CHECK(g.linked(0, 1));
    CHECK(g.link_count() == 1);
}

TEST_CASE("initial link count is bounded by the pair count in the simple variant") {
    ModelSpec spec;
    spec.initial_nodes = 15;
    spec.initial_edges = 106;  // max is 15*14/2 = 105
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.initial_edges = 105;
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("a full initial budget yields the complete graph") {
    ModelSpec spec;
    spec.initial_nodes = 5;
    spec.initial_edges = 10;
    Rng rng(11);
    GraphState g = friendnet::init_state(spec, rng);
    CHECK(g.link_count() == 10);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) CHECK(g.linked(u, v));
}

TEST_CASE("weighted initial links may repeat pairs") {
    ModelSpec spec;
    spec.variant = GraphVariant::weighted;
    spec.initial_nodes = 2;
    spec.initial_edges = 5;  // only one pair exists, so weight must stack
    Rng rng(4);
    GraphState g = friendnet::init_state(spec, rng);
    CHECK(g.total_weight() == 5.0);
    CHECK(g.weight(0, 1) == 5.0);
    CHECK(g.degree(0) == 5.0);
    CHECK(g.link_count() == 1);
    CHECK_NOTHROW(g.verify_integrity());
}
