#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hodgeft/algebra.hpp"
#include "hodgeft/graph.hpp"

namespace hft {

struct Insertion {
    int psi = 0;
    Vec v;
};

struct Bounds {
    int max_n = 4;      // insertions per correlator
    int max_psi = 3;    // psi power per insertion
    int max_genus = 2;
};

struct IdentityReport {
    std::string identity;
    std::string params;
    Rational left;
    Rational right;
    Rational residual;
    bool pass = false;
};

// Monomial of the potential: genus plus the multiset of (psi power, H0 basis
// index) variable indices, kept sorted.
struct PotentialKey {
    int genus = 0;
    std::vector<std::pair<int, int>> vars;
    bool operator<(const PotentialKey& o) const {
        return std::tie(genus, vars) < std::tie(o.genus, o.vars);
    }
};

struct Potential {
    Bounds bounds;
    std::map<PotentialKey, Rational> coeff;
};

// Caching correlator evaluator for one algebra. Thread-safe; concurrent
// queries may duplicate work but always agree.
class CorrelatorEngine {
public:
    explicit CorrelatorEngine(Algebra a);

    const Algebra& algebra() const { return alg_; }

    // <tau_{a_1}(v_1)...tau_{a_n}(v_n)>_g, multilinear in the vectors.
    // Throws on unstable (g,n).
    Rational correlator(int g, const std::vector<Insertion>& ins);

    // Same with basis-vector insertions (psi, basis index), in order.
    Rational correlator_basis(int g, const std::vector<std::pair<int, int>>& ins);

    const std::vector<Graph>& graphs(int g, const std::vector<int>& powers);

private:
    Algebra alg_;
    std::map<std::pair<int, std::vector<int>>, std::vector<Graph>> graph_cache_;
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, Rational> corr_cache_;
    std::mutex mu_;
};

Rational correlator(const Algebra& a, int g, const std::vector<Insertion>& ins);

// F_g coefficients of the potential in the variables T_{n,i}, i over H0,
// truncated by the bounds; coefficient of a monomial is the correlator of
// the matching insertions divided by the repetition factorials.
Potential potential_coefficients(CorrelatorEngine& eng, const Bounds& bounds);

// Action functional evaluated at a state vector v and a rational assignment
// of the T variables: the dimension-zero vertex generating functions with
// the genus <= 1 first slot shifted by G-v, plus the -1/2 int(Qv G-v)
// quadratic term at order 0. Returns coefficients by genus (power of hbar).
std::map<int, Rational> action_value(CorrelatorEngine& eng, const Vec& v,
                                     const std::map<std::pair<int, int>, Rational>& t_assign,
                                     const Bounds& bounds);

// The string equation with tau_0(e1) prepended; requires sum(psi) > 0.
IdentityReport verify_string(CorrelatorEngine& eng, int g, const std::vector<Insertion>& ins);
// The dilaton equation with tau_1(e1) prepended; requires 2g-2+n > 0.
IdentityReport verify_dilaton(CorrelatorEngine& eng, int g, const std::vector<Insertion>& ins);
// sum_i <...tau_{a_i}(Q v_i)...> + sum_i <...tau_{a_i+1}(G- v_i)...> = 0,
// with the Koszul prefix signs of moving the odd operator past v_1..v_{i-1}.
IdentityReport verify_main_lemma(CorrelatorEngine& eng, int g, const std::vector<Insertion>& ins);

}  // namespace hft
