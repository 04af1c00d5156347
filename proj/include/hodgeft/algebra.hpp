#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodgeft/rational.hpp"

namespace hft {

enum class Parity : int { even = 0, odd = 1 };

inline Parity parity_add(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

// (-1)^{ab}
inline int koszul(Parity a, Parity b) {
    return (a == Parity::odd && b == Parity::odd) ? -1 : 1;
}

inline bool is_odd(Parity p) { return p == Parity::odd; }

// Coefficient vector in the fixed basis e_0..e_{dim-1}.
using Vec = RatVec;

// Linear map in the fixed basis; m[i][j] is the e_i-coefficient of op(e_j).
struct Operator {
    RatMat m;
    Parity parity = Parity::even;
};

// Components B^{ij}; obtained from an operator by raising the second index
// with eta^{-1}, so that sum_k B[i][k] * eta[k][j] == m[i][j].
struct Bivector {
    RatMat c;
};

// Basis indices of one free (e, Qe, G-e, QG-e) quadruple.
struct HodgeBlock {
    int e = -1, qe = -1, ge = -1, qge = -1;
};

struct Algebra {
    std::string name;
    int dim = 0;
    std::vector<Parity> parities;
    int unit = 0;
    std::vector<std::vector<Vec>> mul;  // mul[i][j] = e_i * e_j
    Vec integral;                       // integral[i] = \int e_i
    Operator Q;
    Operator Gm;  // G_-
    std::vector<int> h0;
    std::vector<HodgeBlock> blocks;

    // Derived data, filled by finalize().
    RatMat eta;          // eta[i][j] = \int e_i e_j
    bool eta_ok = false; // eta nondegenerate
    RatMat eta_inv;      // valid iff eta_ok
    bool gplus_ok = false;
    Operator Gp;   // valid iff gplus_ok
    Operator pi0;  // Id - [Q,G+]
    Operator pi4;  // [Q,G+]

    // Validates structural invariants (sizes, index ranges, parity
    // homogeneity of mul/Q/Gm) and computes the derived members.
    // Throws std::invalid_argument on structural problems; axiom
    // violations are left for check_axioms.
    void finalize();

    Parity parity(int i) const { return parities.at(static_cast<size_t>(i)); }
};

struct AxiomCheck {
    std::string name;
    bool pass = true;
    std::string witness;  // first failing tuple, empty if pass
    Rational residual;    // representative nonzero residual
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const AxiomCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

Vec zero_vec(const Algebra& a);
Vec basis_vec(const Algebra& a, int i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rational& c, const Vec& v);
bool is_zero(const Vec& v);

// Parity of a homogeneous vector; nullopt if the vector mixes parities.
// The zero vector counts as even.
std::optional<Parity> homogeneous_parity(const Algebra& a, const Vec& v);

Vec multiply(const Algebra& a, const Vec& x, const Vec& y);
Rational integrate(const Algebra& a, const Vec& x);
Rational scalar_product(const Algebra& a, const Vec& x, const Vec& y);
Vec apply_op(const Operator& op, const Vec& v);

RatMat mat_mul(const RatMat& a, const RatMat& b);
RatMat mat_add(const RatMat& a, const RatMat& b);
bool mat_is_zero(const RatMat& m);
RatMat identity_mat(int n);
// Exact inverse over Q; nullopt if singular.
std::optional<RatMat> mat_inverse(const RatMat& m);

// str(M) = sum_i (-1)^{p_i} M[i][i]
Rational supertrace(const Algebra& a, const RatMat& m);

// Multiplication operator x -> v * x.
Operator mult_operator(const Algebra& a, const Vec& v);

// G+ from the Hodge blocks; throws if Q/Gm do not act by the block pattern.
Operator derive_Gplus(const Algebra& a);

Bivector bivector_of(const Algebra& a, const Operator& op);
Operator operator_of(const Algebra& a, const Bivector& b, Parity parity);

AxiomReport check_axioms(const Algebra& a);

}  // namespace hft
