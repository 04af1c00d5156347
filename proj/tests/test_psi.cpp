#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "dvv_oracle.hpp"
#include "hodgeft/psi.hpp"

using namespace hft;
using hft_test::oracle_psi;

namespace {

void compositions(int n, int total, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> a(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n) {
            if (left == 0) fn(a);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            a[static_cast<size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, total);
}

}  // namespace

TEST_CASE("base values and frozen constants") {
    CHECK(psi_intersection(0, {0, 0, 0}) == 1);
    CHECK(psi_intersection(1, {1}) == rat(1, 24));
    CHECK(psi_intersection(0, {1, 0, 0, 0}) == 1);
    CHECK(psi_intersection(2, {4}) == rat(1, 1152));      // oracle-frozen
    CHECK(psi_intersection(2, {2, 3}) == rat(29, 5760));  // oracle-frozen
    CHECK(psi_intersection(1, {1, 1, 1}) == rat(1, 12));
}

TEST_CASE("dimension gate and unstable inputs") {
    CHECK(psi_intersection(0, {2, 0, 0}) == 0);
    CHECK(psi_intersection(0, {0, 0}) == 0);
    CHECK(psi_intersection(1, {}) == 0);
    CHECK(psi_intersection(0, {-1, 1, 0}) == 0);
}

TEST_CASE("agreement with the brute-force DVV oracle") {
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 5; ++n) {
            long dim = 3L * g - 3 + n;
            if (2 * g - 2 + n <= 0 || dim < 0 || dim > 8) continue;
            compositions(n, static_cast<int>(dim), [&](const std::vector<int>& a) {
                CHECK(psi_intersection(g, a) == oracle_psi(g, a));
            });
        }
}

TEST_CASE("genus zero closed form") {
    for (int n = 3; n <= 8; ++n)
        compositions(n, n - 3, [&](const std::vector<int>& a) {
            CHECK(psi_intersection(0, a) == psi_genus0_closed_form(a));
        });
}

TEST_CASE("string and dilaton identities on stored entries") {
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 4; ++n) {
            long dim = 3L * g - 3 + n;
            if (2 * g - 2 + n <= 0 || dim < 0) continue;
            compositions(n, static_cast<int>(dim), [&](const std::vector<int>& a) {
                // string: prepend a zero power
                Rational lhs = psi_intersection(g, [&] {
                    std::vector<int> b = a;
                    b.push_back(0);
                    return b;
                }());
                Rational rhs = 0;
                for (size_t j = 0; j < a.size(); ++j) {
                    std::vector<int> b = a;
                    b[j] -= 1;
                    rhs += psi_intersection(g, b);
                }
                CHECK(lhs == rhs);
                // dilaton: prepend a one power
                std::vector<int> c = a;
                c.push_back(1);
                CHECK(psi_intersection(g, c) == Rational(2 * g - 2 + static_cast<int>(a.size())) *
                                                    psi_intersection(g, a));
            });
        }
}

TEST_CASE("symmetry under permutations") {
    std::vector<int> r{0, 1, 2};  // g=1, n=3, on the dimension shell
    Rational base = psi_intersection(1, r);
    CHECK(base != 0);
    do {
        CHECK(psi_intersection(1, r) == base);
    } while (std::next_permutation(r.begin(), r.end()));
}

TEST_CASE("table snapshot is canonically keyed") {
    IntersectionTable t;
    CHECK(t.value(1, {2, 0}) == rat(1, 24));
    auto snap = t.snapshot();
    CHECK(snap.count("1:0,2") == 1);
    CHECK(snap.at("1:0,2") == "1/24");
}
