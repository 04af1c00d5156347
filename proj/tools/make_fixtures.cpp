// Regenerates the JSON fixture set under a target directory (default:
// ./fixtures). Tests compare the shipped files against these builders, so
// rerun this after changing anything in src/fixtures.cpp or the catalogs.

#include <filesystem>
#include <iostream>

#include <nlohmann/json.hpp>

#include "hodgeft/fixtures.hpp"
#include "hodgeft/io.hpp"
#include "hodgeft/strata.hpp"

using namespace hft;
namespace fs = std::filesystem;

namespace {

StableDualGraph boundary_04() {
    StableDualGraph s;
    s.vertices = {{0, {}}, {0, {}}};
    s.edges = {{0, 1, 0, 0}};
    s.leaves = {{0, 0, 1, -1}, {0, 0, 2, -1}, {1, 0, 3, -1}, {1, 0, 4, -1}};
    return s;
}

StableDualGraph boundary_psi_05() {
    StableDualGraph s;
    s.vertices = {{0, {}}, {0, {}}};
    s.edges = {{0, 1, 1, 0}};
    s.leaves = {{0, 0, 1, -1}, {0, 0, 2, -1}, {1, 0, 3, -1}, {1, 0, 4, -1}, {0, 0, 5, -1}};
    return s;
}

StableDualGraph chain_05() {
    StableDualGraph s;
    s.vertices = {{0, {}}, {0, {}}, {0, {}}};
    s.edges = {{0, 1, 0, 0}, {1, 2, 0, 0}};
    s.leaves = {{0, 0, 1, -1}, {0, 0, 2, -1}, {1, 0, 3, -1}, {2, 0, 4, -1}, {2, 0, 5, -1}};
    return s;
}

StableDualGraph irreducible_11() {
    StableDualGraph s;
    s.vertices = {{0, {}}};
    s.edges = {{0, 0, 0, 0}};
    s.leaves = {{0, 0, 1, -1}};
    return s;
}

StableDualGraph kappa_11() {
    StableDualGraph s;
    s.vertices = {{1, {1}}};
    s.leaves = {{0, 0, 1, -1}};
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path root = (argc > 1) ? argv[1] : "fixtures";
    fs::create_directories(root / "negative");
    fs::create_directories(root / "relations");
    fs::create_directories(root / "strata");

    for (const auto& name : fixture_names())
        save_algebra_file(fixture_by_name(name), (root / (name + ".json")).string());

    for (const auto& neg : negative_fixtures()) {
        nlohmann::json j = neg.spec;
        j["intended_failure"] = neg.intended;
        write_json_file(j, (root / "negative" / (neg.name + ".json")).string());
    }

    for (const auto& rel : builtin_relations())
        write_json_file(relation_to_json(rel), (root / "relations" / (rel.name + ".json")).string());

    write_json_file(stratum_to_json(boundary_04()), (root / "strata" / "boundary-0-4.json").string());
    write_json_file(stratum_to_json(boundary_psi_05()), (root / "strata" / "boundary-psi-0-5.json").string());
    write_json_file(stratum_to_json(chain_05()), (root / "strata" / "chain-0-5.json").string());
    write_json_file(stratum_to_json(irreducible_11()), (root / "strata" / "irreducible-1-1.json").string());
    write_json_file(stratum_to_json(kappa_11()), (root / "strata" / "kappa-1-1.json").string());

    std::cout << "fixtures written to " << root.string() << "\n";
    return 0;
}
