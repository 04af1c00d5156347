#include <doctest.h>

#include <nlohmann/json.hpp>

#include "hodgeft/fixtures.hpp"
#include "hodgeft/strata.hpp"

using namespace hft;

namespace {

StableDualGraph boundary_04() {
    StableDualGraph s;
    s.vertices = {{0, {}}, {0, {}}};
    s.edges = {{0, 1, 0, 0}};
    s.leaves = {{0, 0, 1, -1}, {0, 0, 2, -1}, {1, 0, 3, -1}, {1, 0, 4, -1}};
    return s;
}

StableDualGraph irreducible_11() {
    StableDualGraph s;
    s.vertices = {{0, {}}};
    s.edges = {{0, 0, 0, 0}};
    s.leaves = {{0, 0, 1, -1}};
    return s;
}

std::vector<Vec> unit_leaves(const Algebra& a, int n) {
    return std::vector<Vec>(static_cast<size_t>(n), basis_vec(a, a.unit));
}

}  // namespace

TEST_CASE("translate: one vertex, no edges, no kappa is the plain correlator") {
    StableDualGraph s;
    s.vertices = {{1, {}}};
    s.leaves = {{0, 1, 1, -1}};
    WhiteExpression e = translate_stratum(s);
    CHECK(e.prefactor == 1);
    REQUIRE(e.nodes.size() == 1);
    REQUIRE(e.nodes[0].slots.size() == 1);
    CHECK(e.nodes[0].slots[0].kind == NodeSlot::LeafIn);
    Algebra p = point_algebra();
    CorrelatorEngine eng(p);
    CHECK(evaluate_white(e, eng, unit_leaves(p, 1)) == rat(1, 24));
}

TEST_CASE("translate: kappa multi-index becomes unit insertions with shifted psi") {
    StableDualGraph s;
    s.vertices = {{1, {1}}};
    s.leaves = {{0, 0, 1, -1}};
    WhiteExpression e = translate_stratum(s);
    REQUIRE(e.nodes[0].slots.size() == 2);
    CHECK(e.nodes[0].slots[1].kind == NodeSlot::KappaIn);
    CHECK(e.nodes[0].slots[1].psi == 2);  // kappa index 1 -> tau_2(e1)
    // int_{Mbar_{1,1}} kappa_1 = <tau_0 tau_2>_1 = 1/24
    Algebra p = point_algebra();
    CorrelatorEngine eng(p);
    CHECK(evaluate_white(e, eng, unit_leaves(p, 1)) == rat(1, 24));
}

TEST_CASE("two-vertex boundary on the point algebra") {
    Algebra p = point_algebra();
    CorrelatorEngine eng(p);
    CHECK(evaluate_white(translate_stratum(boundary_04()), eng, unit_leaves(p, 4)) == 1);
}

TEST_CASE("unstable node contributes zero") {
    StableDualGraph s;  // one leaf and one edge end on a genus-0 vertex: unstable
    s.vertices = {{0, {}}, {1, {}}};
    s.edges = {{0, 1, 0, 0}};
    s.leaves = {{0, 0, 1, -1}};
    CHECK_THROWS_AS(validate_stratum(s), std::invalid_argument);
}

TEST_CASE("stratum aut orders") {
    CHECK(stable_graph_aut_order(boundary_04()) == 1);
    CHECK(stable_graph_aut_order(irreducible_11()) == 2);  // loop flip
    // two leafless genus-1 halves can swap
    StableDualGraph s;
    s.vertices = {{1, {}}, {1, {}}};
    s.edges = {{0, 1, 0, 0}};
    CHECK(stable_graph_aut_order(s) == 2);
}

TEST_CASE("eliminate_white emits 3^edges decorated terms") {
    auto terms1 = eliminate_white(boundary_04());
    CHECK(terms1.size() == 3);
    int plus = 0, minus = 0;
    for (const auto& [c, d] : terms1) {
        if (d.arrows == 0) {
            CHECK(c == 1);
            ++plus;
        } else {
            CHECK(c == -1);
            ++minus;
        }
        CHECK(d.aut == 1);
    }
    CHECK(plus == 1);
    CHECK(minus == 2);

    StableDualGraph two;  // chain with two edges
    two.vertices = {{0, {}}, {0, {}}, {0, {}}};
    two.edges = {{0, 1, 0, 0}, {1, 2, 0, 0}};
    two.leaves = {{0, 0, 1, -1}, {0, 0, 2, -1}, {1, 0, 3, -1}, {2, 0, 4, -1}, {2, 0, 5, -1}};
    CHECK(eliminate_white(two).size() == 9);

    // loop: the stratum aut is 2; arrow terms are isomorphic in pairs
    auto loop_terms = eliminate_white(irreducible_11());
    CHECK(loop_terms.size() == 3);
    for (const auto& [c, d] : loop_terms) {
        if (d.arrows == 0) {
            CHECK(c == rat(1, 2));
            CHECK(d.aut == 2);
        } else {
            CHECK(c == rat(-1, 2));
            CHECK(d.aut == 1);
        }
    }
}

TEST_CASE("elimination soundness across fixtures") {
    for (const auto& name : fixture_names()) {
        Algebra a = fixture_by_name(name);
        CorrelatorEngine eng(a);
        for (const StableDualGraph& s : {boundary_04(), irreducible_11()}) {
            int n = static_cast<int>(s.leaves.size());
            std::vector<int> pick(static_cast<size_t>(n), 0);
            while (true) {
                std::vector<Vec> leaves;
                for (int t = 0; t < n; ++t)
                    leaves.push_back(basis_vec(a, a.h0[static_cast<size_t>(pick[static_cast<size_t>(t)])]));
                CHECK(evaluate_white(translate_stratum(s), eng, leaves) ==
                      evaluate_eliminated(s, eng, leaves));
                size_t i = 0;
                for (; i < pick.size(); ++i) {
                    if (++pick[i] < static_cast<int>(a.h0.size())) break;
                    pick[i] = 0;
                }
                if (i == pick.size()) break;
            }
        }
    }
}

TEST_CASE("builtin relations vanish on every fixture over H0 assignments") {
    for (const auto& name : fixture_names()) {
        Algebra a = fixture_by_name(name);
        CorrelatorEngine eng(a);
        for (const Relation& rel : builtin_relations()) {
            std::vector<int> pick(static_cast<size_t>(rel.n), 0);
            while (true) {
                std::vector<Vec> leaves;
                for (int t = 0; t < rel.n; ++t)
                    leaves.push_back(basis_vec(a, a.h0[static_cast<size_t>(pick[static_cast<size_t>(t)])]));
                IdentityReport r = verify_relation(rel, eng, leaves);
                CHECK(r.pass);
                size_t i = 0;
                for (; i < pick.size(); ++i) {
                    if (++pick[i] < static_cast<int>(a.h0.size())) break;
                    pick[i] = 0;
                }
                if (i == pick.size()) break;
            }
        }
    }
}

TEST_CASE("WDVV on the truncated polynomial algebra is associativity") {
    Algebra f = frobenius_truncated_poly(3);
    CorrelatorEngine eng(f);
    Relation wdvv = builtin_relations()[0];
    std::vector<Vec> leaves = {basis_vec(f, 1), basis_vec(f, 1), basis_vec(f, 1), basis_vec(f, 2)};
    CHECK(verify_relation(wdvv, eng, leaves).pass);
}

TEST_CASE("coefficient of the final graph") {
    Graph y04;
    y04.genus = {0};
    y04.leaves = {{0, 0, 1}, {0, 0, 2}, {0, 0, 3}, {0, 0, 4}};
    CHECK(coefficient_of_final_graph(boundary_04(), y04) == 1);

    StableDualGraph psi04;
    psi04.vertices = {{0, {}}};
    psi04.leaves = {{0, 1, 1, -1}, {0, 0, 2, -1}, {0, 0, 3, -1}, {0, 0, 4, -1}};
    CHECK(coefficient_of_final_graph(psi04, y04) == 1);

    StableDualGraph psi11;
    psi11.vertices = {{1, {}}};
    psi11.leaves = {{0, 1, 1, -1}};
    Graph y11;
    y11.genus = {1};
    y11.leaves = {{0, 0, 1}};
    CHECK(coefficient_of_final_graph(psi11, y11) == rat(1, 24));

    // dimension precondition
    Graph wrong = y11;
    wrong.edges.push_back({0, 0, 0, 0});
    CHECK_THROWS_AS(coefficient_of_final_graph(psi11, wrong), std::invalid_argument);
}

TEST_CASE("stratum and relation JSON round trip") {
    for (const Relation& rel : builtin_relations()) {
        nlohmann::json j = relation_to_json(rel);
        Relation back = relation_from_json(j);
        CHECK(back.name == rel.name);
        CHECK(back.terms.size() == rel.terms.size());
        CHECK(relation_to_json(back) == j);
    }
    StableDualGraph s = irreducible_11();
    CHECK(stratum_to_json(stratum_from_json(stratum_to_json(s))) == stratum_to_json(s));
}
