#include "hodgeft/psi.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hft {

namespace {

bool stable(int g, int n) { return 2 * g - 2 + n > 0; }

}  // namespace

Rational IntersectionTable::value(int g, std::vector<int> powers) const {
    for (int a : powers)
        if (a < 0) return 0;
    int n = static_cast<int>(powers.size());
    if (!stable(g, n)) return 0;
    long sum = std::accumulate(powers.begin(), powers.end(), 0L);
    if (sum != 3L * g - 3 + n) return 0;
    return lookup(g, std::move(powers));
}

Rational IntersectionTable::lookup(int g, std::vector<int> powers) const {
    std::sort(powers.begin(), powers.end());
    auto key = std::make_pair(g, powers);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Rational v = compute(g, powers);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(key, v);
    return v;
}

// powers is sorted ascending and sits on the dimension shell.
Rational IntersectionTable::compute(int g, const std::vector<int>& a) const {
    int n = static_cast<int>(a.size());
    if (g == 0 && n == 3) return 1;          // <tau_0^3>_0
    if (g == 1 && n == 1) return rat(1, 24); // <tau_1>_1

    if (a.front() == 0) {
        // String equation: strip one tau_0, lower the others one at a time.
        std::vector<int> rest(a.begin() + 1, a.end());
        Rational s = 0;
        for (size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            std::vector<int> next = rest;
            --next[j];
            s += value(g, next);
        }
        return s;
    }
    if (a.front() == 1) {
        // Dilaton equation ((g,n) = (1,1) already handled above).
        std::vector<int> rest(a.begin() + 1, a.end());
        return Rational(2 * g - 2 + (n - 1)) * value(g, rest);
    }

    // All powers >= 2 (which forces g >= 1): the KdV/DVV recursion on the
    // largest power a_max = k+1,
    //   (2k+3)!! <tau_{k+1} X> =
    //     sum_j ((2k+2a_j+1)!!/(2a_j-1)!!) <tau_{a_j+k} X\{j}>
    //   + 1/2 sum_{b+c=k-1} (2b+1)!!(2c+1)!! [ <tau_b tau_c X>_{g-1}
    //       + sum_{g'+g''=g} sum_{I|J=X} <tau_b I>_{g'} <tau_c J>_{g''} ].
    std::vector<int> rest(a.begin(), a.end() - 1);
    int k = a.back() - 1;
    int m = static_cast<int>(rest.size());
    Rational acc = 0;
    for (int j = 0; j < m; ++j) {
        std::vector<int> next;
        for (int t = 0; t < m; ++t)
            if (t != j) next.push_back(rest[static_cast<size_t>(t)]);
        next.push_back(rest[static_cast<size_t>(j)] + k);
        Rational coef(odd_double_factorial(k + rest[static_cast<size_t>(j)] + 1));
        coef /= Rational(odd_double_factorial(rest[static_cast<size_t>(j)]));
        acc += coef * value(g, next);
    }
    Rational quad = 0;
    for (int b = 0; b <= k - 1; ++b) {
        int c = k - 1 - b;
        Rational w(odd_double_factorial(b + 1) * odd_double_factorial(c + 1));
        {
            std::vector<int> next = rest;
            next.push_back(b);
            next.push_back(c);
            quad += w * value(g - 1, next);
        }
        for (int g1 = 0; g1 <= g; ++g1) {
            int g2 = g - g1;
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                std::vector<int> left{b}, right{c};
                for (int t = 0; t < m; ++t) {
                    if (mask & (1u << t))
                        left.push_back(rest[static_cast<size_t>(t)]);
                    else
                        right.push_back(rest[static_cast<size_t>(t)]);
                }
                if (!stable(g1, static_cast<int>(left.size())) ||
                    !stable(g2, static_cast<int>(right.size())))
                    continue;
                quad += w * value(g1, left) * value(g2, right);
            }
        }
    }
    acc += quad / 2;
    return acc / Rational(odd_double_factorial(k + 2));
}

std::map<std::string, std::string> IntersectionTable::snapshot() const {
    std::lock_guard<std::mutex> lk(mu_);
    std::map<std::string, std::string> out;
    for (const auto& [key, val] : memo_) {
        std::ostringstream os;
        os << key.first << ":";
        for (size_t i = 0; i < key.second.size(); ++i) {
            if (i) os << ",";
            os << key.second[i];
        }
        out[os.str()] = rational_str(val);
    }
    return out;
}

Rational psi_intersection(int g, const std::vector<int>& powers) {
    static IntersectionTable table;
    return table.value(g, powers);
}

Rational psi_genus0_closed_form(const std::vector<int>& powers) {
    int n = static_cast<int>(powers.size());
    long sum = std::accumulate(powers.begin(), powers.end(), 0L);
    if (n < 3 || sum != n - 3) return 0;
    Rational r(factorial(static_cast<unsigned>(n - 3)));
    for (int a : powers) r /= Rational(factorial(static_cast<unsigned>(a)));
    return r;
}

}  // namespace hft
