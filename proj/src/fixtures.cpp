#include "hodgeft/fixtures.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hodgeft/io.hpp"

namespace hft {

namespace {

Algebra empty_algebra(const std::string& name, int dim, std::vector<Parity> parities, int unit) {
    Algebra a;
    a.name = name;
    a.dim = dim;
    a.parities = std::move(parities);
    a.unit = unit;
    size_t n = static_cast<size_t>(dim);
    a.mul.assign(n, std::vector<Vec>(n, Vec(n, Rational(0))));
    a.integral.assign(n, Rational(0));
    a.Q.parity = Parity::odd;
    a.Q.m = RatMat(n, RatVec(n, Rational(0)));
    a.Gm.parity = Parity::odd;
    a.Gm.m = RatMat(n, RatVec(n, Rational(0)));
    return a;
}

void set_mul(Algebra& a, int i, int j, int k, const Rational& c) {
    a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = c;
}

// Sets e_i * e_j and fills e_j * e_i by the Koszul sign.
void set_mul_sym(Algebra& a, int i, int j, int k, const Rational& c) {
    set_mul(a, i, j, k, c);
    if (i != j) set_mul(a, j, i, k, Rational(koszul(a.parity(i), a.parity(j))) * c);
}

void set_unit_products(Algebra& a) {
    for (int i = 0; i < a.dim; ++i) {
        set_mul(a, a.unit, i, i, 1);
        set_mul(a, i, a.unit, i, 1);
    }
}

}  // namespace

Algebra point_algebra() {
    Algebra a = empty_algebra("point", 1, {Parity::even}, 0);
    set_mul(a, 0, 0, 0, 1);
    a.integral[0] = 1;
    a.h0 = {0};
    a.finalize();
    return a;
}

Algebra frobenius_truncated_poly(int n) {
    if (n < 2) throw std::invalid_argument("frobenius_truncated_poly needs degree >= 2");
    Algebra a = empty_algebra("frobenius" + std::to_string(n), n,
                              std::vector<Parity>(static_cast<size_t>(n), Parity::even), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) set_mul(a, i, j, i + j, 1);
    a.integral[static_cast<size_t>(n - 1)] = 1;
    for (int i = 0; i < n; ++i) a.h0.push_back(i);
    a.finalize();
    return a;
}

Algebra grassmann_algebra() {
    // basis: 1, th, ps, th*ps
    Algebra a = empty_algebra("grassmann2", 4, {Parity::even, Parity::odd, Parity::odd, Parity::even}, 0);
    set_unit_products(a);
    set_mul_sym(a, 1, 2, 3, 1);  // th * ps = th&ps, ps * th = -(th&ps)
    a.integral[3] = 1;
    a.h0 = {0, 1, 2, 3};
    a.finalize();
    return a;
}

namespace {

// Layout: 0 = unit, 1 = h (even, h^2 = 0), block (x, qx, gx, qgx) = (2,3,4,5)
// with x odd. The two free parameters are the integral of the unit and the
// coupling a with x*qgx = qx*gx = a*h.
Algebra dim6_candidate(const Rational& a_coupling, const Rational& unit_integral) {
    Algebra a = empty_algebra("block6", 6,
                              {Parity::even, Parity::even, Parity::odd, Parity::even,
                               Parity::even, Parity::odd},
                              0);
    set_unit_products(a);
    set_mul_sym(a, 2, 5, 1, a_coupling);  // x * qgx = a h (odd*odd)
    set_mul_sym(a, 3, 4, 1, a_coupling);  // qx * gx = a h
    a.integral[0] = unit_integral;
    a.integral[1] = 1;
    a.Q.m[3][2] = 1;   // Q x = qx
    a.Q.m[5][4] = 1;   // Q gx = qgx
    a.Gm.m[4][2] = 1;  // G- x = gx
    a.Gm.m[5][3] = -1; // G- qx = -qgx
    a.h0 = {0, 1};
    a.blocks = {{2, 3, 4, 5}};
    a.finalize();
    return a;
}

// Layout: 0 = unit, block (x, qx, gx, qgx) = (1,2,3,4), x odd. Free product
// coefficients, with the cheap consequences of the Leibniz rule already
// substituted so the scan only visits candidates that are not trivially dead:
//   x*qgx  = 1 + a1 qx + a2 gx        (the e <-> QG-e coupling, normalized)
//   qx*gx  = 1 + d1 qx + a2 gx
//   x*qx   = p1 x + p2 qgx,  qx*qx = p1 qx
//   x*gx   = g1 x + g2 qgx
//   gx*gx  = t1 qx + t2 gx
//   qx*qgx = a2 qgx,  gx*qgx = (t2/2) qgx
struct Dim5Params {
    Rational i0, a1, a2, p1, p2, g1, g2, d1, t1, t2;
};

Algebra dim5_candidate(const Dim5Params& p) {
    Algebra a = empty_algebra("block5", 5,
                              {Parity::even, Parity::odd, Parity::even, Parity::even, Parity::odd},
                              0);
    set_unit_products(a);
    const int x = 1, qx = 2, gx = 3, qgx = 4;
    set_mul(a, x, qgx, 0, 1);
    set_mul(a, x, qgx, qx, p.a1);
    set_mul(a, x, qgx, gx, p.a2);
    set_mul(a, qgx, x, 0, -1);
    set_mul(a, qgx, x, qx, -p.a1);
    set_mul(a, qgx, x, gx, -p.a2);
    set_mul_sym(a, qx, gx, 0, 1);
    set_mul(a, qx, gx, qx, p.d1);
    set_mul(a, qx, gx, gx, p.a2);
    set_mul(a, gx, qx, qx, p.d1);
    set_mul(a, gx, qx, gx, p.a2);
    set_mul(a, x, qx, x, p.p1);
    set_mul(a, x, qx, qgx, p.p2);
    set_mul(a, qx, x, x, p.p1);
    set_mul(a, qx, x, qgx, p.p2);
    set_mul(a, qx, qx, qx, p.p1);
    set_mul(a, x, gx, x, p.g1);
    set_mul(a, x, gx, qgx, p.g2);
    set_mul(a, gx, x, x, p.g1);
    set_mul(a, gx, x, qgx, p.g2);
    set_mul(a, gx, gx, qx, p.t1);
    set_mul(a, gx, gx, gx, p.t2);
    set_mul(a, qx, qgx, qgx, p.a2);
    set_mul(a, qgx, qx, qgx, p.a2);
    set_mul(a, gx, qgx, qgx, p.t2 / 2);
    set_mul(a, qgx, gx, qgx, p.t2 / 2);
    a.integral[0] = p.i0;
    a.Q.m[qx][x] = 1;
    a.Q.m[qgx][gx] = 1;
    a.Gm.m[gx][x] = 1;
    a.Gm.m[qgx][qx] = -1;
    a.h0 = {0};
    a.blocks = {{x, qx, gx, qgx}};
    a.finalize();
    return a;
}

}  // namespace

SearchSpace default_search_space(const std::string& layout) {
    SearchSpace s;
    s.layout = layout;
    s.grid = {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2),
              rat(1, 2), rat(-1, 2)};
    return s;
}

namespace {

// Cheap screen before the full axiom suite: associativity on non-unit
// triples kills almost every candidate.
bool associativity_holds(const Algebra& a) {
    for (int i = 1; i < a.dim; ++i)
        for (int j = 1; j < a.dim; ++j)
            for (int k = 1; k < a.dim; ++k) {
                Vec lhs = multiply(a, a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                   basis_vec(a, k));
                Vec rhs = multiply(a, basis_vec(a, i),
                                   a.mul[static_cast<size_t>(j)][static_cast<size_t>(k)]);
                if (!is_zero(sub(lhs, rhs))) return false;
            }
    return true;
}

}  // namespace

SearchResult search_block_algebra(const SearchSpace& space, long budget) {
    SearchResult res;
    auto test = [&](Algebra cand) -> bool {
        ++res.tried;
        if (!associativity_holds(cand)) return false;
        AxiomReport rep = check_axioms(cand);
        if (rep.all_pass()) {
            res.found = std::move(cand);
            return true;
        }
        return false;
    };
    if (space.layout == "dim6-minimal") {
        for (const auto& al : space.grid) {
            for (const auto& i0 : space.grid) {
                if (res.tried >= budget) return res;
                if (test(dim6_candidate(al, i0))) return res;
            }
        }
        return res;
    }
    if (space.layout == "dim5-minimal") {
        // Small grid on the product coefficients; the full default grid would
        // not fit any reasonable budget on nine free parameters. The unit
        // integral only enters eta(1,1), so two values of it suffice.
        std::vector<Rational> g = {Rational(0), Rational(1), Rational(-1)};
        std::vector<Rational> i0_grid(space.grid.begin(),
                                      space.grid.begin() + std::min<size_t>(2, space.grid.size()));
        for (const auto& i0 : i0_grid) {
            for (const auto& a1 : g)
                for (const auto& a2 : g)
                    for (const auto& p1 : g)
                        for (const auto& p2 : g)
                            for (const auto& g1 : g)
                                for (const auto& g2 : g)
                                    for (const auto& d1 : g)
                                        for (const auto& t1 : g)
                                            for (const auto& t2 : g) {
                                                // associativity of (x,x,qgx) forces
                                                // 1 + a1 p1 + a2 g1 = 0; skip the rest.
                                                if (Rational(1) + a1 * p1 + a2 * g1 != 0) continue;
                                                if (res.tried >= budget) return res;
                                                if (test(dim5_candidate(
                                                        {i0, a1, a2, p1, p2, g1, g2, d1, t1, t2})))
                                                    return res;
                                            }
            if (res.tried >= budget) return res;
        }
        return res;
    }
    throw std::invalid_argument("unknown search layout: " + space.layout);
}

Algebra block6_algebra() {
    Algebra a = dim6_candidate(1, 0);
    a.name = "block6";
    return a;
}

std::vector<std::string> fixture_names() {
    return {"point", "frobenius2", "frobenius3", "grassmann2", "block6"};
}

Algebra fixture_by_name(const std::string& name) {
    if (name == "point") return point_algebra();
    if (name == "frobenius2") return frobenius_truncated_poly(2);
    if (name == "frobenius3") return frobenius_truncated_poly(3);
    if (name == "grassmann2") return grassmann_algebra();
    if (name == "block6") return block6_algebra();
    throw std::invalid_argument("unknown fixture: " + name);
}

std::vector<NegativeFixture> negative_fixtures() {
    using nlohmann::json;
    std::vector<NegativeFixture> out;

    // theta^2 = 1 stored symmetrically: violates the odd-odd Koszul sign.
    {
        json j = algebra_to_json([] {
            Algebra a = empty_algebra("neg_supercomm", 2, {Parity::even, Parity::odd}, 0);
            set_unit_products(a);
            a.integral[0] = 1;
            a.h0 = {0, 1};
            a.finalize();
            return a;
        }());
        j["mul"].push_back(json{{"i", 1}, {"j", 1}, {"out", json::array({"1", "0"})}});
        out.push_back(NegativeFixture{"neg_supercomm", "supercommutativity", j});
    }

    // frobenius3 with x * x^2 = 1: (x x) x^2 != x (x x^2).
    {
        Algebra a = frobenius_truncated_poly(3);
        a.name = "neg_assoc";
        set_mul_sym(a, 1, 2, 0, 1);
        out.push_back(NegativeFixture{"neg_assoc", "associativity", algebra_to_json(a)});
    }

    // frobenius3 with every product doubled: associative, but 1*x = 2x.
    {
        Algebra a = frobenius_truncated_poly(3);
        a.name = "neg_unit";
        for (auto& row : a.mul)
            for (auto& v : row)
                for (auto& c : v) c *= 2;
        out.push_back(NegativeFixture{"neg_unit", "unit", algebra_to_json(a)});
    }

    // point with the integral zeroed out: eta = (0).
    {
        Algebra a = point_algebra();
        a.name = "neg_eta";
        a.integral[0] = 0;
        out.push_back(NegativeFixture{"neg_eta", "eta_nondegenerate", algebra_to_json(a)});
    }

    // integral with an odd component.
    {
        Algebra a = empty_algebra("neg_integral_even", 2, {Parity::even, Parity::odd}, 0);
        set_unit_products(a);
        a.integral[0] = 1;
        a.integral[1] = 1;
        a.h0 = {0, 1};
        out.push_back(NegativeFixture{"neg_integral_even", "integral_even", algebra_to_json(a)});
    }

    // Q[x]/x^6 with a fabricated block (1,2,3,4): Q = G- = 0 cannot act by
    // the block pattern, but eta stays nondegenerate and H0 _|_ H4 holds.
    {
        Algebra a = frobenius_truncated_poly(6);
        a.name = "neg_hodge_blocks";
        a.h0 = {0, 5};
        a.blocks = {{1, 2, 3, 4}};
        out.push_back(NegativeFixture{"neg_hodge_blocks", "hodge_blocks", algebra_to_json(a)});
    }

    // Q with an even-parity entry: rejected by the loader.
    {
        Algebra a = empty_algebra("neg_q_parity", 2, {Parity::even, Parity::odd}, 0);
        set_unit_products(a);
        a.integral[0] = 1;
        a.h0 = {0, 1};
        json j = algebra_to_json(a);
        j["Q"][0][0] = "1";
        out.push_back(NegativeFixture{"neg_q_parity", "load", j});
    }

    return out;
}

}  // namespace hft
