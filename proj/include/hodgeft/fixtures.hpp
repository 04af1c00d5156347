#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodgeft/algebra.hpp"

#include <nlohmann/json.hpp>

namespace hft {

// dim 1, integral(e_0) = 1, Q = G- = 0. Its correlators are the psi
// intersection numbers.
Algebra point_algebra();

// Q[x]/x^n with integral(x^{n-1}) = 1, everything even, Q = G- = 0.
// Requires n >= 2 (eta is degenerate below that).
Algebra frobenius_truncated_poly(int n);

// Exterior algebra on two odd generators with the top-degree integral.
// Smallest fixture with odd directions and a nondegenerate pairing.
Algebra grassmann_algebra();

// Parameter space for the block-algebra search: a fixed Hodge layout with a
// curated set of free structure constants scanned over `grid` in order.
struct SearchSpace {
    std::string layout;          // "dim5-minimal" | "dim6-minimal"
    std::vector<Rational> grid;  // default {0, 1, -1, 2, -2, 1/2, -1/2}
};

SearchSpace default_search_space(const std::string& layout);

struct SearchResult {
    std::optional<Algebra> found;
    long tried = 0;
};

// Scans the space in lexicographic parameter order and returns the first
// candidate passing check_axioms (such a candidate automatically has
// G-G+ != 0 since it carries a block). Deterministic.
SearchResult search_block_algebra(const SearchSpace& space, long budget);

// The frozen result of search_block_algebra(dim6-minimal): dim 6,
// H0 = <1, h> with h^2 = 0, one odd block coupled through h.
Algebra block6_algebra();

// All shipped good fixtures by name.
std::vector<std::string> fixture_names();
Algebra fixture_by_name(const std::string& name);

// Seeded-broken fixtures, each failing exactly one intended check. The
// second member names the check ("load:..." for load-time rejections).
struct NegativeFixture {
    std::string name;
    std::string intended;  // check name, or "load" for loader rejections
    nlohmann::json spec;
};
std::vector<NegativeFixture> negative_fixtures();

}  // namespace hft
