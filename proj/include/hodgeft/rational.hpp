#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace hft {

// Exact arbitrary-precision rational. Every quantity computed by this
// library is one of these; there is no floating point anywhere.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p" or "p/q" with decimal integers (optional leading '-').
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
        if (!ok) throw std::invalid_argument("bad rational literal: " + s);
    }
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

// Canonical "p/q" (or "p" for integers) text form.
inline std::string rational_str(const Rational& r) {
    return r.get_str();
}

inline mpz_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// (2n-1)!! with the usual convention (-1)!! = 1.
inline mpz_class odd_double_factorial(int n) {
    if (n <= 0) return 1;
    mpz_class f;
    mpz_2fac_ui(f.get_mpz_t(), 2 * static_cast<unsigned>(n) - 1);
    return f;
}

using RatVec = std::vector<Rational>;
using RatMat = std::vector<std::vector<Rational>>;

}  // namespace hft
