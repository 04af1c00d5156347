#include <doctest.h>

#include <set>

#include "hodgeft/fixtures.hpp"
#include "hodgeft/graph.hpp"

using namespace hft;

TEST_CASE("enumeration counts from small cases") {
    CHECK(enumerate_graphs(0, {0, 0, 0}).size() == 1);
    CHECK(enumerate_graphs(0, {0, 0, 0, 0}).size() == 3);  // leaves split 2|2, three labelings
    CHECK(enumerate_graphs(1, {1}).size() == 1);
    CHECK(enumerate_graphs(1, {0}).size() == 1);  // one heavy loop
    CHECK(enumerate_graphs(0, {2, 0, 0}).empty()); // negative heavy edge count
    CHECK_THROWS_AS(enumerate_graphs(0, {0, 0}), std::invalid_argument);
}

TEST_CASE("no isomorphic duplicates and deterministic order") {
    for (auto [g, powers] : std::vector<std::pair<int, std::vector<int>>>{
             {0, {0, 0, 0, 0}}, {1, {0, 0}}, {1, {1, 0, 0}}, {2, {0}}, {2, {1, 1}}}) {
        auto graphs = enumerate_graphs(g, powers);
        std::set<std::string> keys;
        for (const auto& gr : graphs) {
            CHECK(graph_connected(gr));
            CHECK(graph_total_genus(gr) == g);
            keys.insert(canonical_key(gr));
        }
        CHECK(keys.size() == graphs.size());
        auto again = enumerate_graphs(g, powers);
        REQUIRE(again.size() == graphs.size());
        for (size_t i = 0; i < graphs.size(); ++i)
            CHECK(canonical_key(again[i]) == canonical_key(graphs[i]));
    }
}

TEST_CASE("pruning: multi-vertex graphs carry at most one empty loop per vertex") {
    for (auto [g, powers] : std::vector<std::pair<int, std::vector<int>>>{
             {2, {0, 0}}, {2, {1}}, {3, {1, 1, 1}}}) {
        for (const auto& gr : enumerate_graphs(g, powers)) {
            if (gr.edges.empty()) {
                CHECK(gr.num_vertices() == 1);
                continue;
            }
            for (int x : gr.genus) CHECK(x <= 1);
        }
    }
}

TEST_CASE("automorphism orders") {
    // labeled leaves pin everything
    {
        Graph g;
        g.genus = {0, 0};
        g.edges = {{0, 1, 0, 0}};
        g.leaves = {{0, 0, 1}, {0, 0, 2}, {1, 0, 3}, {1, 0, 4}};
        CHECK(automorphism_order(g) == 1);
        CHECK(weight_V(g) == 1);
    }
    // heavy loop: half-edge flip
    {
        Graph g;
        g.genus = {0};
        g.edges = {{0, 0, 0, 0}};
        g.leaves = {{0, 0, 1}};
        CHECK(automorphism_order(g) == 2);
        CHECK(weight_V(g) == rat(1, 2));
    }
    // genus-labeled single vertex: trivial group, so V = 1
    {
        Graph g;
        g.genus = {1};
        g.leaves = {{0, 0, 1}};
        CHECK(automorphism_order(g) == 1);
        CHECK(weight_V(g) == 1);
    }
    // theta graph: vertex swap times 3! parallel edges
    {
        Graph g;
        g.genus = {0, 0};
        g.edges = {{0, 1, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}};
        CHECK(automorphism_order(g) == 12);
    }
    // psi decorations break the loop flip
    {
        Graph g;
        g.genus = {0};
        g.edges = {{0, 0, 1, 0}};
        g.leaves = {{0, 0, 1}};
        CHECK(automorphism_order(g) == 1);
    }
}

TEST_CASE("weight P multiplies vertex intersection numbers") {
    Graph g;
    g.genus = {1};
    g.leaves = {{0, 1, 1}};
    CHECK(weight_P(g) == rat(1, 24));
    Graph h;
    h.genus = {0, 0};
    h.edges = {{0, 1, 0, 0}};
    h.leaves = {{0, 0, 1}, {0, 0, 2}, {1, 0, 3}, {1, 0, 4}};
    CHECK(weight_P(h) == 1);
    // dimension-violating vertex kills the product
    Graph z;
    z.genus = {0};
    z.leaves = {{0, 1, 1}, {0, 0, 2}, {0, 0, 3}};
    CHECK(weight_P(z) == 0);
}

TEST_CASE("contraction examples") {
    Algebra p = point_algebra();
    Graph g;
    g.genus = {0};
    g.leaves = {{0, 0, 1}, {0, 0, 2}, {0, 0, 3}};
    Vec e = basis_vec(p, 0);
    CHECK(contract_T(p, g, {e, e, e}) == 1);

    // heavy edge on a G-G+ = 0 algebra contracts to zero
    Graph h;
    h.genus = {0, 0};
    h.edges = {{0, 1, 0, 0}};
    h.leaves = {{0, 0, 1}, {0, 0, 2}, {1, 0, 3}, {1, 0, 4}};
    CHECK(contract_T(p, h, {e, e, e, e}) == 0);

    Algebra f = frobenius_truncated_poly(3);
    Graph one;
    one.genus = {0};
    one.leaves = {{0, 0, 1}, {0, 0, 2}, {0, 0, 3}};
    CHECK(contract_T(f, one, {basis_vec(f, 0), basis_vec(f, 1), basis_vec(f, 1)}) == 1);

    CHECK_THROWS_AS(contract_T(f, one, {basis_vec(f, 0), basis_vec(f, 1)}), std::invalid_argument);
    Vec mixed = add(basis_vec(f, 0), basis_vec(f, 1));
    CHECK_NOTHROW(contract_T(f, one, {mixed, mixed, mixed}));  // all even is homogeneous
}

TEST_CASE("genus loop contracts to the supertrace of the multiplication operator") {
    for (const auto& name : fixture_names()) {
        Algebra a = fixture_by_name(name);
        Graph g;
        g.genus = {1};
        g.leaves = {{0, 0, 1}};
        for (int b = 0; b < a.dim; ++b) {
            if (is_odd(a.parity(b))) continue;
            Operator m = mult_operator(a, basis_vec(a, b));
            CHECK(contract_T(a, g, {basis_vec(a, b)}) == supertrace(a, m.m));
        }
    }
}

TEST_CASE("contraction is multilinear in leaf vectors") {
    Algebra a = block6_algebra();
    Graph g;
    g.genus = {0, 0};
    g.edges = {{0, 1, 0, 0}};
    g.leaves = {{0, 0, 1}, {0, 0, 2}, {1, 0, 3}, {1, 0, 4}};
    Vec u = basis_vec(a, 0), w = basis_vec(a, 1), q = basis_vec(a, 3), r = basis_vec(a, 4);
    Rational lhs = contract_T(a, g, {add(u, scale(Rational(3), w)), q, r, u});
    Rational rhs = contract_T(a, g, {u, q, r, u}) + Rational(3) * contract_T(a, g, {w, q, r, u});
    CHECK(lhs == rhs);
}

TEST_CASE("plan: cycle edges cut the graph to a forest") {
    Graph g;
    g.genus = {0, 1};
    g.edges = {{0, 1, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}};
    g.leaves = {{0, 0, 1}, {0, 0, 2}};
    ContractionPlan plan = build_plan(g);
    CHECK(plan.cycle_edges == std::vector<int>{1, 2});
    CHECK(plan.slots.size() == 2 + 6 + 2);  // one genus loop, six half-edges, two leaves
}

TEST_CASE("value V*P*T is invariant under internal relabeling") {
    Algebra a = block6_algebra();
    // same graph with the two internal vertices swapped
    Graph g1;
    g1.genus = {0, 0};
    g1.edges = {{0, 1, 0, 0}};
    g1.leaves = {{0, 0, 1}, {0, 0, 2}, {1, 0, 3}, {1, 0, 4}};
    Graph g2;
    g2.genus = {0, 0};
    g2.edges = {{1, 0, 0, 0}};
    g2.leaves = {{1, 0, 1}, {1, 0, 2}, {0, 0, 3}, {0, 0, 4}};
    CHECK(canonical_key(g1) == canonical_key(g2));
    std::vector<Vec> leaves = {basis_vec(a, 3), basis_vec(a, 0), basis_vec(a, 3), basis_vec(a, 0)};
    Rational v1 = weight_V(g1) * weight_P(g1) * contract_T(a, g1, leaves);
    Rational v2 = weight_V(g2) * weight_P(g2) * contract_T(a, g2, leaves);
    CHECK(v1 == v2);
    CHECK(v1 != 0);
}
