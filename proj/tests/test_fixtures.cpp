#include <doctest.h>

#include <filesystem>

#include <nlohmann/json.hpp>

#include "hodgeft/correlator.hpp"
#include "hodgeft/fixtures.hpp"
#include "hodgeft/io.hpp"
#include "hodgeft/psi.hpp"
#include "hodgeft/strata.hpp"

using namespace hft;
namespace fs = std::filesystem;

static const std::string kFixtureDir = HFT_FIXTURE_DIR;

TEST_CASE("every shipped fixture passes the axiom suite with zero residuals") {
    for (const auto& name : fixture_names()) {
        Algebra built = fixture_by_name(name);
        AxiomReport rep = check_axioms(built);
        CHECK(rep.all_pass());
        for (const auto& c : rep.checks) CHECK(c.residual == 0);
        // the committed file matches the builder
        Algebra loaded = load_algebra_file(kFixtureDir + "/" + name + ".json");
        CHECK(algebra_to_json(loaded) == algebra_to_json(built));
    }
}

TEST_CASE("point fixture correlators") {
    Algebra p = point_algebra();
    CorrelatorEngine eng(p);
    CHECK(eng.correlator_basis(0, {{0, 0}, {0, 0}, {0, 0}}) == 1);
    CHECK(eng.correlator_basis(1, {{1, 0}}) == psi_intersection(1, {1}));
}

TEST_CASE("search finds the frozen dim-6 fixture and reproduces it exactly") {
    SearchResult res = search_block_algebra(default_search_space("dim6-minimal"), 1000);
    REQUIRE(res.found.has_value());
    CHECK(res.tried <= 20);
    Algebra frozen = block6_algebra();
    nlohmann::json a = algebra_to_json(*res.found);
    a.erase("name");
    nlohmann::json b = algebra_to_json(frozen);
    b.erase("name");
    CHECK(a == b);
    CHECK(check_axioms(*res.found).all_pass());
    // nontrivial H4: G-G+ != 0
    CHECK_FALSE(mat_is_zero(mat_mul(res.found->Gm.m, res.found->Gp.m)));
}

TEST_CASE("dim-5 minimal layout exhausts without a find") {
    SearchResult res = search_block_algebra(default_search_space("dim5-minimal"), 2000000);
    CHECK_FALSE(res.found.has_value());
    CHECK(res.tried > 0);
}

TEST_CASE("zero-H4 fixtures reduce to single-vertex sums") {
    for (const auto& name : {"frobenius2", "frobenius3", "grassmann2"}) {
        Algebra a = fixture_by_name(name);
        CorrelatorEngine eng(a);
        // direct single-vertex formula: sum over one-vertex graphs of V*P*T
        for (int i = 0; i < a.dim; ++i) {
            std::vector<std::pair<int, int>> ins = {{0, i}, {0, 0}, {0, a.dim - 1}};
            Vec prod = multiply(a, basis_vec(a, i),
                                multiply(a, basis_vec(a, 0), basis_vec(a, a.dim - 1)));
            CHECK(eng.correlator_basis(0, ins) == integrate(a, prod));
        }
    }
}

TEST_CASE("negative fixtures fail exactly their intended check") {
    auto negatives = negative_fixtures();
    CHECK(negatives.size() == 7);
    for (const auto& neg : negatives) {
        // committed file == builder output (modulo the annotation field)
        nlohmann::json shipped =
            parse_json_file(kFixtureDir + "/negative/" + neg.name + ".json");
        CHECK(shipped.value("intended_failure", "") == neg.intended);
        shipped.erase("intended_failure");
        CHECK(shipped == neg.spec);

        if (neg.intended == "load") {
            CHECK_THROWS_AS(algebra_from_json(neg.spec), std::invalid_argument);
            continue;
        }
        Algebra a = algebra_from_json(neg.spec);
        AxiomReport rep = check_axioms(a);
        for (const auto& c : rep.checks) {
            if (c.name == neg.intended)
                CHECK_MESSAGE(!c.pass, neg.name, " should fail ", neg.intended);
            else
                CHECK_MESSAGE(c.pass, neg.name, " unexpectedly failed ", c.name);
        }
    }
}

TEST_CASE("shipped relation and stratum files parse") {
    for (const auto& rel : builtin_relations()) {
        nlohmann::json j = parse_json_file(kFixtureDir + "/relations/" + rel.name + ".json");
        CHECK(relation_to_json(relation_from_json(j)) == relation_to_json(rel));
    }
    for (const auto& name :
         {"boundary-0-4", "boundary-psi-0-5", "chain-0-5", "irreducible-1-1", "kappa-1-1"}) {
        nlohmann::json j = parse_json_file(kFixtureDir + "/strata/" + std::string(name) + ".json");
        CHECK_NOTHROW(stratum_from_json(j));
    }
}
