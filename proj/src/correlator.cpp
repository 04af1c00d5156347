#include "hodgeft/correlator.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hft {

CorrelatorEngine::CorrelatorEngine(Algebra a) : alg_(std::move(a)) {}

const std::vector<Graph>& CorrelatorEngine::graphs(int g, const std::vector<int>& powers) {
    auto key = std::make_pair(g, powers);
    std::lock_guard<std::mutex> lk(mu_);
    auto it = graph_cache_.find(key);
    if (it != graph_cache_.end()) return it->second;
    auto r = graph_cache_.emplace(key, enumerate_graphs(g, powers));
    return r.first->second;
}

Rational CorrelatorEngine::correlator_basis(int g, const std::vector<std::pair<int, int>>& ins) {
    int n = static_cast<int>(ins.size());
    if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable (g,n)");
    // canonical order: sort by (psi, basis index); Koszul sign of the sort
    // permutation restricted to odd entries.
    std::vector<int> order(ins.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return ins[static_cast<size_t>(x)] < ins[static_cast<size_t>(y)]; });
    int sign = 1;
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j] && is_odd(alg_.parity(ins[static_cast<size_t>(order[i])].second)) &&
                is_odd(alg_.parity(ins[static_cast<size_t>(order[j])].second)))
                sign = -sign;
    std::vector<std::pair<int, int>> sorted;
    sorted.reserve(ins.size());
    for (int idx : order) sorted.push_back(ins[static_cast<size_t>(idx)]);
    // repeated odd insertions square to zero
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i] == sorted[i + 1] && is_odd(alg_.parity(sorted[i].second))) return 0;

    auto key = std::make_pair(g, sorted);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = corr_cache_.find(key);
        if (it != corr_cache_.end()) return Rational(sign) * it->second;
    }
    std::vector<int> powers;
    std::vector<Vec> leaves;
    for (const auto& [a, b] : sorted) {
        powers.push_back(a);
        leaves.push_back(basis_vec(alg_, b));
    }
    Rational total = 0;
    for (const auto& gr : graphs(g, powers)) {
        Rational p = weight_P(gr);
        if (p == 0) continue;
        Rational t = contract_T(alg_, gr, leaves);
        if (t == 0) continue;
        total += weight_V(gr) * p * t;
    }
    {
        std::lock_guard<std::mutex> lk(mu_);
        corr_cache_.emplace(std::move(key), total);
    }
    return Rational(sign) * total;
}

Rational CorrelatorEngine::correlator(int g, const std::vector<Insertion>& ins) {
    int n = static_cast<int>(ins.size());
    if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable (g,n)");
    // expand multilinearly over basis support
    Rational total = 0;
    std::vector<std::pair<int, int>> basis_ins(ins.size());
    std::function<void(size_t, Rational)> rec = [&](size_t k, Rational coef) {
        if (k == ins.size()) {
            total += coef * correlator_basis(g, basis_ins);
            return;
        }
        for (int b = 0; b < alg_.dim; ++b) {
            const Rational& c = ins[k].v[static_cast<size_t>(b)];
            if (c == 0) continue;
            basis_ins[k] = {ins[k].psi, b};
            rec(k + 1, coef * c);
        }
    };
    rec(0, Rational(1));
    return total;
}

Rational correlator(const Algebra& a, int g, const std::vector<Insertion>& ins) {
    CorrelatorEngine eng(a);
    return eng.correlator(g, ins);
}

Potential potential_coefficients(CorrelatorEngine& eng, const Bounds& bounds) {
    Potential pot;
    pot.bounds = bounds;
    const Algebra& alg = eng.algebra();
    // variable alphabet (psi power, H0 basis index), lexicographic
    std::vector<std::pair<int, int>> alphabet;
    for (int a = 0; a <= bounds.max_psi; ++a)
        for (int i : alg.h0) alphabet.emplace_back(a, i);
    std::sort(alphabet.begin(), alphabet.end());

    for (int g = 0; g <= bounds.max_genus; ++g) {
        for (int n = 0; n <= bounds.max_n; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            // nondecreasing sequences of alphabet entries of length n
            std::vector<int> pick(static_cast<size_t>(n), 0);
            std::function<void(int, int)> rec = [&](int pos, int lo) {
                if (pos == n) {
                    std::vector<std::pair<int, int>> vars;
                    for (int t = 0; t < n; ++t) vars.push_back(alphabet[static_cast<size_t>(pick[static_cast<size_t>(t)])]);
                    Rational c = eng.correlator_basis(g, vars);
                    if (c == 0) return;
                    // divide by the repetition factorials
                    for (size_t t = 0; t < vars.size();) {
                        size_t u = t;
                        while (u < vars.size() && vars[u] == vars[t]) ++u;
                        c /= Rational(factorial(static_cast<unsigned>(u - t)));
                        t = u;
                    }
                    pot.coeff[{g, vars}] = c;
                    return;
                }
                for (int t = lo; t < static_cast<int>(alphabet.size()); ++t) {
                    pick[static_cast<size_t>(pos)] = t;
                    rec(pos + 1, t);
                }
            };
            rec(0, 0);
        }
    }
    return pot;
}

namespace {

// Dimension-zero part of F_g: only terms with sum(a_i) = 3g-3+n survive, so
// each term is the single-vertex graph evaluation.
Rational dimension_zero_part(CorrelatorEngine& eng, int g, const Bounds& bounds,
                             const std::vector<Vec>& args) {
    Rational total = 0;
    for (int n = 1; n <= bounds.max_n; ++n) {
        if (2 * g - 2 + n <= 0) continue;
        long dim = 3L * g - 3 + n;
        if (dim < 0) continue;
        // ordered compositions a_1+...+a_n = dim with a_i <= max_psi
        std::vector<int> a(static_cast<size_t>(n), 0);
        std::function<void(int, long)> rec = [&](int pos, long left) {
            if (pos == n) {
                if (left != 0) return;
                std::vector<Insertion> ins;
                bool zero = false;
                for (int t = 0; t < n; ++t) {
                    const Vec& v = args[static_cast<size_t>(a[static_cast<size_t>(t)])];
                    if (is_zero(v)) {
                        zero = true;
                        break;
                    }
                    ins.push_back({a[static_cast<size_t>(t)], v});
                }
                if (zero) return;
                total += eng.correlator(g, ins) / Rational(factorial(static_cast<unsigned>(n)));
                return;
            }
            for (int val = 0; val <= std::min<long>(bounds.max_psi, left); ++val) {
                a[static_cast<size_t>(pos)] = val;
                rec(pos + 1, left - val);
            }
        };
        rec(0, dim);
    }
    return total;
}

}  // namespace

std::map<int, Rational> action_value(CorrelatorEngine& eng, const Vec& v,
                                     const std::map<std::pair<int, int>, Rational>& t_assign,
                                     const Bounds& bounds) {
    const Algebra& alg = eng.algebra();
    if (static_cast<int>(v.size()) != alg.dim) throw std::invalid_argument("state vector size mismatch");
    std::vector<Vec> e_vectors;  // E_a = sum_i T_{a,i} e_i
    for (int a = 0; a <= bounds.max_psi; ++a) {
        Vec ea = zero_vec(alg);
        for (int i : alg.h0) {
            auto it = t_assign.find({a, i});
            if (it != t_assign.end()) ea[static_cast<size_t>(i)] += it->second;
        }
        e_vectors.push_back(ea);
    }
    std::vector<Vec> shifted = e_vectors;
    shifted[0] = add(shifted[0], apply_op(alg.Gm, v));

    std::map<int, Rational> out;
    for (int g = 0; g <= bounds.max_genus; ++g) {
        const std::vector<Vec>& args = (g <= 1) ? shifted : e_vectors;
        Rational f = dimension_zero_part(eng, g, bounds, args);
        if (g == 0) f -= scalar_product(alg, apply_op(alg.Q, v), apply_op(alg.Gm, v)) / 2;
        out[g] = f;
    }
    return out;
}

namespace {

std::string params_str(int g, const std::vector<Insertion>& ins, const Algebra& alg) {
    std::ostringstream os;
    os << "g=" << g << " ins=";
    for (const auto& i : ins) {
        os << i.psi << ":(";
        bool first = true;
        for (int b = 0; b < alg.dim; ++b)
            if (i.v[static_cast<size_t>(b)] != 0) {
                if (!first) os << "+";
                os << rational_str(i.v[static_cast<size_t>(b)]) << "e" << b;
                first = false;
            }
        if (first) os << "0";
        os << ") ";
    }
    return os.str();
}

IdentityReport make_report(const std::string& name, const std::string& params, Rational left,
                           Rational right) {
    IdentityReport r;
    r.identity = name;
    r.params = params;
    r.left = left;
    r.right = right;
    r.residual = left - right;
    r.pass = (r.residual == 0);
    return r;
}

}  // namespace

IdentityReport verify_string(CorrelatorEngine& eng, int g, const std::vector<Insertion>& ins) {
    long sum = 0;
    for (const auto& i : ins) sum += i.psi;
    if (sum <= 0) throw std::invalid_argument("string equation needs sum(psi) > 0");
    const Algebra& alg = eng.algebra();
    std::vector<Insertion> lhs_ins;
    lhs_ins.push_back({0, basis_vec(alg, alg.unit)});
    lhs_ins.insert(lhs_ins.end(), ins.begin(), ins.end());
    Rational left = eng.correlator(g, lhs_ins);
    Rational right = 0;
    for (size_t j = 0; j < ins.size(); ++j) {
        if (ins[j].psi == 0) continue;
        std::vector<Insertion> t = ins;
        t[j].psi -= 1;
        right += eng.correlator(g, t);
    }
    return make_report("string", params_str(g, ins, alg), left, right);
}

IdentityReport verify_dilaton(CorrelatorEngine& eng, int g, const std::vector<Insertion>& ins) {
    int n = static_cast<int>(ins.size());
    if (2 * g - 2 + n <= 0) throw std::invalid_argument("dilaton equation needs 2g-2+n > 0");
    const Algebra& alg = eng.algebra();
    std::vector<Insertion> lhs_ins;
    lhs_ins.push_back({1, basis_vec(alg, alg.unit)});
    lhs_ins.insert(lhs_ins.end(), ins.begin(), ins.end());
    Rational left = eng.correlator(g, lhs_ins);
    Rational right = Rational(2 * g - 2 + n) * eng.correlator(g, ins);
    return make_report("dilaton", params_str(g, ins, alg), left, right);
}

IdentityReport verify_main_lemma(CorrelatorEngine& eng, int g, const std::vector<Insertion>& ins) {
    int n = static_cast<int>(ins.size());
    if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable (g,n)");
    const Algebra& alg = eng.algebra();
    std::vector<Parity> par;
    for (const auto& i : ins) {
        auto p = homogeneous_parity(alg, i.v);
        if (!p) throw std::invalid_argument("main lemma needs homogeneous insertions");
        par.push_back(*p);
    }
    Rational q_sum = 0, g_sum = 0;
    int prefix = 1;  // Koszul sign of moving the odd operator past v_1..v_{i-1}
    for (size_t i = 0; i < ins.size(); ++i) {
        {
            std::vector<Insertion> t = ins;
            t[i].v = apply_op(alg.Q, ins[i].v);
            if (!is_zero(t[i].v)) q_sum += Rational(prefix) * eng.correlator(g, t);
        }
        {
            std::vector<Insertion> t = ins;
            t[i].v = apply_op(alg.Gm, ins[i].v);
            t[i].psi += 1;
            if (!is_zero(t[i].v)) g_sum += Rational(prefix) * eng.correlator(g, t);
        }
        if (is_odd(par[i])) prefix = -prefix;
    }
    // With the graded bookkeeping used here (the cycle twist lives in the
    // Koszul signs, not in an explicit J factor), the psi-shifted G- sum
    // enters with the same orientation as the Q sum.
    return make_report("main-lemma", params_str(g, ins, alg), q_sum, g_sum);
}

}  // namespace hft
