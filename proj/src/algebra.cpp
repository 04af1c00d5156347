#include "hodgeft/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace hft {

Vec zero_vec(const Algebra& a) { return Vec(static_cast<size_t>(a.dim), Rational(0)); }

Vec basis_vec(const Algebra& a, int i) {
    Vec v = zero_vec(a);
    v.at(static_cast<size_t>(i)) = 1;
    return v;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Rational& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x *= c;
    return r;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::optional<Parity> homogeneous_parity(const Algebra& a, const Vec& v) {
    std::optional<Parity> p;
    for (int i = 0; i < a.dim; ++i) {
        if (v[static_cast<size_t>(i)] == 0) continue;
        if (!p)
            p = a.parity(i);
        else if (*p != a.parity(i))
            return std::nullopt;
    }
    return p ? *p : Parity::even;
}

Vec multiply(const Algebra& a, const Vec& x, const Vec& y) {
    Vec r = zero_vec(a);
    for (int i = 0; i < a.dim; ++i) {
        const Rational& xi = x[static_cast<size_t>(i)];
        if (xi == 0) continue;
        for (int j = 0; j < a.dim; ++j) {
            const Rational& yj = y[static_cast<size_t>(j)];
            if (yj == 0) continue;
            const Vec& cij = a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)];
            Rational f = xi * yj;
            for (int k = 0; k < a.dim; ++k) {
                if (cij[static_cast<size_t>(k)] != 0) r[static_cast<size_t>(k)] += f * cij[static_cast<size_t>(k)];
            }
        }
    }
    return r;
}

Rational integrate(const Algebra& a, const Vec& x) {
    Rational r = 0;
    for (int i = 0; i < a.dim; ++i) r += a.integral[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    return r;
}

Rational scalar_product(const Algebra& a, const Vec& x, const Vec& y) {
    return integrate(a, multiply(a, x, y));
}

Vec apply_op(const Operator& op, const Vec& v) {
    size_t n = op.m.size();
    Vec r(n, Rational(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (op.m[i][j] != 0 && v[j] != 0) r[i] += op.m[i][j] * v[j];
    return r;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    RatMat r(n, RatVec(m, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                if (b[l][j] != 0) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

RatMat mat_add(const RatMat& a, const RatMat& b) {
    RatMat r = a;
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
    return r;
}

bool mat_is_zero(const RatMat& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

RatMat identity_mat(int n) {
    RatMat r(static_cast<size_t>(n), RatVec(static_cast<size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return r;
}

std::optional<RatMat> mat_inverse(const RatMat& m) {
    size_t n = m.size();
    RatMat a = m;
    RatMat inv = identity_mat(static_cast<int>(n));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

Rational supertrace(const Algebra& a, const RatMat& m) {
    Rational s = 0;
    for (int i = 0; i < a.dim; ++i) {
        if (is_odd(a.parity(i)))
            s -= m[static_cast<size_t>(i)][static_cast<size_t>(i)];
        else
            s += m[static_cast<size_t>(i)][static_cast<size_t>(i)];
    }
    return s;
}

Operator mult_operator(const Algebra& a, const Vec& v) {
    Operator op;
    op.parity = homogeneous_parity(a, v).value_or(Parity::even);
    op.m = RatMat(static_cast<size_t>(a.dim), RatVec(static_cast<size_t>(a.dim), Rational(0)));
    for (int j = 0; j < a.dim; ++j) {
        Vec img = multiply(a, v, basis_vec(a, j));
        for (int i = 0; i < a.dim; ++i) op.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = img[static_cast<size_t>(i)];
    }
    return op;
}

namespace {

bool column_equals(const RatMat& m, int col, const Vec& v) {
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i][static_cast<size_t>(col)] != v[i]) return false;
    return true;
}

bool column_zero(const RatMat& m, int col) {
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i][static_cast<size_t>(col)] != 0) return false;
    return true;
}

// The block pattern of the Hodge decomposition:
//   Q e = qe, Q qe = 0, Q ge = qge, Q qge = 0,
//   G- e = ge, G- qe = -qge, G- ge = 0, G- qge = 0,
// and both operators vanish on h0.
bool block_pattern_holds(const Algebra& a, std::string* why) {
    for (int i : a.h0) {
        if (!column_zero(a.Q.m, i) || !column_zero(a.Gm.m, i)) {
            if (why) *why = "Q or G- nonzero on h0 index " + std::to_string(i);
            return false;
        }
    }
    for (const auto& b : a.blocks) {
        Vec e_qe = basis_vec(a, b.qe), e_ge = basis_vec(a, b.ge), e_qge = basis_vec(a, b.qge);
        Vec m_qge = scale(Rational(-1), e_qge);
        bool ok = column_equals(a.Q.m, b.e, e_qe) && column_zero(a.Q.m, b.qe) &&
                  column_equals(a.Q.m, b.ge, e_qge) && column_zero(a.Q.m, b.qge) &&
                  column_equals(a.Gm.m, b.e, e_ge) && column_equals(a.Gm.m, b.qe, m_qge) &&
                  column_zero(a.Gm.m, b.ge) && column_zero(a.Gm.m, b.qge);
        if (!ok) {
            if (why)
                *why = "block (" + std::to_string(b.e) + "," + std::to_string(b.qe) + "," +
                       std::to_string(b.ge) + "," + std::to_string(b.qge) + ")";
            return false;
        }
    }
    return true;
}

}  // namespace

Operator derive_Gplus(const Algebra& a) {
    std::string why;
    if (!block_pattern_holds(a, &why))
        throw std::invalid_argument("hodge block pattern inconsistent with Q/G-: " + why);
    Operator gp;
    gp.parity = Parity::odd;
    gp.m = RatMat(static_cast<size_t>(a.dim), RatVec(static_cast<size_t>(a.dim), Rational(0)));
    for (const auto& b : a.blocks) {
        gp.m[static_cast<size_t>(b.e)][static_cast<size_t>(b.qe)] = 1;    // G+ Qe = e
        gp.m[static_cast<size_t>(b.ge)][static_cast<size_t>(b.qge)] = 1;  // G+ QG-e = G-e
    }
    return gp;
}

Bivector bivector_of(const Algebra& a, const Operator& op) {
    if (!a.eta_ok) throw std::invalid_argument("bivector_of: eta is singular");
    return Bivector{mat_mul(op.m, a.eta_inv)};
}

Operator operator_of(const Algebra& a, const Bivector& b, Parity parity) {
    return Operator{mat_mul(b.c, a.eta), parity};
}

void Algebra::finalize() {
    size_t n = static_cast<size_t>(dim);
    if (dim <= 0) throw std::invalid_argument("algebra dim must be positive");
    if (parities.size() != n) throw std::invalid_argument("parities size mismatch");
    if (unit < 0 || unit >= dim) throw std::invalid_argument("unit index out of range");
    if (integral.size() != n) throw std::invalid_argument("integral size mismatch");
    if (mul.size() != n) throw std::invalid_argument("mul table size mismatch");
    for (const auto& row : mul) {
        if (row.size() != n) throw std::invalid_argument("mul table size mismatch");
        for (const auto& v : row)
            if (v.size() != n) throw std::invalid_argument("mul vector size mismatch");
    }
    auto check_op = [&](const Operator& op, const std::string& nm) {
        if (op.m.size() != n) throw std::invalid_argument(nm + " matrix size mismatch");
        for (const auto& row : op.m)
            if (row.size() != n) throw std::invalid_argument(nm + " matrix size mismatch");
        if (op.parity != Parity::odd) throw std::invalid_argument(nm + " must be odd");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (op.m[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0 &&
                    parity(i) != parity_add(parity(j), Parity::odd))
                    throw std::invalid_argument(nm + " has an even-parity component at (" +
                                                std::to_string(i) + "," + std::to_string(j) + ")");
    };
    check_op(Q, "Q");
    check_op(Gm, "Gminus");
    // Structure constants must be parity-homogeneous.
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Parity want = parity_add(parity(i), parity(j));
            for (int k = 0; k < dim; ++k)
                if (mul[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] != 0 &&
                    parity(k) != want)
                    throw std::invalid_argument("non-homogeneous structure constants at (" +
                                                std::to_string(i) + "," + std::to_string(j) + ")");
        }
    // h0 and blocks must partition the basis.
    std::vector<int> seen(n, 0);
    auto mark = [&](int i) {
        if (i < 0 || i >= dim) throw std::invalid_argument("basis index out of range in h0/h4");
        ++seen[static_cast<size_t>(i)];
    };
    for (int i : h0) mark(i);
    for (const auto& b : blocks) {
        mark(b.e);
        mark(b.qe);
        mark(b.ge);
        mark(b.qge);
    }
    for (size_t i = 0; i < n; ++i)
        if (seen[i] != 1)
            throw std::invalid_argument("h0 and h4_blocks must partition the basis (index " +
                                        std::to_string(i) + ")");

    eta = RatMat(n, RatVec(n, Rational(0)));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            eta[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                integrate(*this, mul[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    auto inv = mat_inverse(eta);
    eta_ok = inv.has_value();
    if (eta_ok) eta_inv = *inv;

    gplus_ok = block_pattern_holds(*this, nullptr);
    if (gplus_ok) {
        Gp = derive_Gplus(*this);
        pi4.parity = Parity::even;
        pi4.m = mat_add(mat_mul(Q.m, Gp.m), mat_mul(Gp.m, Q.m));
        pi0.parity = Parity::even;
        pi0.m = identity_mat(dim);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) pi0.m[i][j] -= pi4.m[i][j];
    }
}

namespace {

struct Checker {
    const Algebra& a;
    AxiomReport rep;

    void add(const std::string& name, bool pass, const std::string& witness, Rational residual) {
        rep.checks.push_back({name, pass, pass ? "" : witness, pass ? Rational(0) : residual});
    }

    // Runs `body` over tuples until it reports a failure.
    template <typename F>
    void scan(const std::string& name, F body) {
        std::string witness;
        Rational residual = 0;
        bool pass = body(witness, residual);
        add(name, pass, witness, residual);
    }
};

std::string tuple_str(std::initializer_list<int> idx) {
    std::ostringstream os;
    bool first = true;
    for (int i : idx) {
        if (!first) os << ",";
        os << i;
        first = false;
    }
    return os.str();
}

Rational first_nonzero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return x;
    return Rational(0);
}

}  // namespace

AxiomReport check_axioms(const Algebra& a) {
    Checker ck{a, {}};
    int n = a.dim;
    auto e = [&](int i) { return basis_vec(a, i); };

    ck.scan("supercommutativity", [&](std::string& w, Rational& r) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Vec d = sub(a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)],
                            scale(Rational(koszul(a.parity(i), a.parity(j))),
                                  a.mul[static_cast<size_t>(j)][static_cast<size_t>(i)]));
                if (!is_zero(d)) {
                    w = tuple_str({i, j});
                    r = first_nonzero(d);
                    return false;
                }
            }
        return true;
    });

    ck.scan("associativity", [&](std::string& w, Rational& r) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Vec lhs = multiply(a, a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)], e(k));
                    Vec rhs = multiply(a, e(i), a.mul[static_cast<size_t>(j)][static_cast<size_t>(k)]);
                    Vec d = sub(lhs, rhs);
                    if (!is_zero(d)) {
                        w = tuple_str({i, j, k});
                        r = first_nonzero(d);
                        return false;
                    }
                }
        return true;
    });

    ck.scan("unit", [&](std::string& w, Rational& r) {
        if (is_odd(a.parity(a.unit))) {
            w = tuple_str({a.unit});
            r = 1;
            return false;
        }
        for (int i = 0; i < n; ++i) {
            Vec d1 = sub(a.mul[static_cast<size_t>(a.unit)][static_cast<size_t>(i)], e(i));
            Vec d2 = sub(a.mul[static_cast<size_t>(i)][static_cast<size_t>(a.unit)], e(i));
            if (!is_zero(d1) || !is_zero(d2)) {
                w = tuple_str({i});
                r = !is_zero(d1) ? first_nonzero(d1) : first_nonzero(d2);
                return false;
            }
        }
        return true;
    });

    ck.scan("bicomplex", [&](std::string& w, Rational& r) {
        RatMat qq = mat_mul(a.Q.m, a.Q.m);
        RatMat gg = mat_mul(a.Gm.m, a.Gm.m);
        RatMat anti = mat_add(mat_mul(a.Q.m, a.Gm.m), mat_mul(a.Gm.m, a.Q.m));
        for (const auto* m : {&qq, &gg, &anti}) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if ((*m)[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
                        w = tuple_str({i, j});
                        r = (*m)[static_cast<size_t>(i)][static_cast<size_t>(j)];
                        return false;
                    }
        }
        return true;
    });

    ck.scan("hodge_blocks", [&](std::string& w, Rational& r) {
        std::string why;
        if (!block_pattern_holds(a, &why)) {
            w = why;
            r = 1;
            return false;
        }
        return true;
    });

    ck.scan("leibniz", [&](std::string& w, Rational& r) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Vec lhs = apply_op(a.Q, a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                Vec rhs = add(multiply(a, apply_op(a.Q, e(i)), e(j)),
                              scale(Rational(is_odd(a.parity(i)) ? -1 : 1),
                                    multiply(a, e(i), apply_op(a.Q, e(j)))));
                Vec d = sub(lhs, rhs);
                if (!is_zero(d)) {
                    w = tuple_str({i, j});
                    r = first_nonzero(d);
                    return false;
                }
            }
        return true;
    });

    ck.scan("seven_term", [&](std::string& w, Rational& r) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Parity pi = a.parity(i), pj = a.parity(j);
                    const Vec& ab = a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    const Vec& ac = a.mul[static_cast<size_t>(i)][static_cast<size_t>(k)];
                    const Vec& bc = a.mul[static_cast<size_t>(j)][static_cast<size_t>(k)];
                    Vec abc = multiply(a, ab, e(k));
                    int s_b = (is_odd(pj) && pi == Parity::even) ? -1 : 1;  // (-1)^{b(a+1)}
                    int s_a = is_odd(pi) ? -1 : 1;                          // (-1)^a
                    int s_ab = (parity_add(pi, pj) == Parity::odd) ? -1 : 1;
                    Vec rhs = multiply(a, apply_op(a.Gm, ab), e(k));
                    rhs = add(rhs, scale(Rational(s_b), multiply(a, e(j), apply_op(a.Gm, ac))));
                    rhs = add(rhs, scale(Rational(s_a), multiply(a, e(i), apply_op(a.Gm, bc))));
                    rhs = sub(rhs, multiply(a, multiply(a, apply_op(a.Gm, e(i)), e(j)), e(k)));
                    rhs = sub(rhs, scale(Rational(s_a),
                                         multiply(a, multiply(a, e(i), apply_op(a.Gm, e(j))), e(k))));
                    rhs = sub(rhs, scale(Rational(s_ab), multiply(a, ab, apply_op(a.Gm, e(k)))));
                    Vec d = sub(apply_op(a.Gm, abc), rhs);
                    if (!is_zero(d)) {
                        w = tuple_str({i, j, k});
                        r = first_nonzero(d);
                        return false;
                    }
                }
        return true;
    });

    ck.scan("one_twelfth", [&](std::string& w, Rational& r) {
        for (int i = 0; i < n; ++i) {
            RatMat lhs(static_cast<size_t>(n), RatVec(static_cast<size_t>(n), Rational(0)));
            for (int j = 0; j < n; ++j) {
                Vec img = apply_op(a.Gm, a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                for (int k = 0; k < n; ++k) lhs[static_cast<size_t>(k)][static_cast<size_t>(j)] = img[static_cast<size_t>(k)];
            }
            Operator rm = mult_operator(a, apply_op(a.Gm, e(i)));
            Rational d = supertrace(a, lhs) - Rational(1, 12) * supertrace(a, rm.m);
            if (d != 0) {
                w = tuple_str({i});
                r = d;
                return false;
            }
        }
        return true;
    });

    ck.scan("integral_even", [&](std::string& w, Rational& r) {
        for (int i = 0; i < n; ++i)
            if (is_odd(a.parity(i)) && a.integral[static_cast<size_t>(i)] != 0) {
                w = tuple_str({i});
                r = a.integral[static_cast<size_t>(i)];
                return false;
            }
        return true;
    });

    auto compat = [&](const Operator& op, int sign_shift) {
        // residual of \int op(e_i) e_j = (-1)^{p_i + shift} \int e_i op(e_j)
        return [&, sign_shift](std::string& w, Rational& r) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    int s = (static_cast<int>(a.parity(i)) + sign_shift) % 2 ? -1 : 1;
                    Rational d = scalar_product(a, apply_op(op, e(i)), e(j)) -
                                 Rational(s) * scalar_product(a, e(i), apply_op(op, e(j)));
                    if (d != 0) {
                        w = tuple_str({i, j});
                        r = d;
                        return false;
                    }
                }
            return true;
        };
    };
    ck.scan("integral_compat_q", compat(a.Q, 1));
    ck.scan("integral_compat_gminus", compat(a.Gm, 0));
    if (a.gplus_ok) ck.scan("integral_compat_gplus", compat(a.Gp, 0));

    ck.scan("eta_nondegenerate", [&](std::string& w, Rational& r) {
        if (!a.eta_ok) {
            w = "eta singular";
            r = 0;
            return false;
        }
        return true;
    });

    ck.scan("h0_h4_orthogonal", [&](std::string& w, Rational& r) {
        for (int i : a.h0)
            for (const auto& b : a.blocks)
                for (int j : {b.e, b.qe, b.ge, b.qge})
                    if (a.eta[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
                        w = tuple_str({i, j});
                        r = a.eta[static_cast<size_t>(i)][static_cast<size_t>(j)];
                        return false;
                    }
        return true;
    });

    return ck.rep;
}

}  // namespace hft
