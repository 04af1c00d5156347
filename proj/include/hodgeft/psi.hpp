#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hodgeft/rational.hpp"

namespace hft {

// Memoized table of psi-class intersection numbers <tau_{a_1}...tau_{a_n}>_g.
// Keys are (genus, sorted powers). Thread-safe; concurrent queries may
// duplicate work but always agree.
class IntersectionTable {
public:
    Rational value(int g, std::vector<int> powers) const;

    // Snapshot of everything computed so far, as "g:a1,a2,..." -> "p/q".
    std::map<std::string, std::string> snapshot() const;

private:
    Rational compute(int g, const std::vector<int>& sorted) const;
    Rational lookup(int g, std::vector<int> powers) const;

    mutable std::map<std::pair<int, std::vector<int>>, Rational> memo_;
    mutable std::mutex mu_;
};

// Shared-table convenience wrapper. Returns 0 for unstable (g,n) and for
// inputs failing the dimension gate sum(a) = 3g-3+n.
Rational psi_intersection(int g, const std::vector<int>& powers);

// Genus-0 closed form (n-3)!/prod(a_i!) on the dimension shell.
Rational psi_genus0_closed_form(const std::vector<int>& powers);

}  // namespace hft
