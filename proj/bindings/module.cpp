#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "hodgeft/correlator.hpp"
#include "hodgeft/fixtures.hpp"
#include "hodgeft/io.hpp"
#include "hodgeft/psi.hpp"
#include "hodgeft/strata.hpp"

namespace py = pybind11;
using namespace hft;

namespace {

// Rationals cross the boundary as canonical "p/q" strings; the python
// package turns them into fractions.Fraction.
std::string rstr(const Rational& r) { return rational_str(r); }

Vec vec_from_coeffs(const Algebra& a, const std::vector<std::string>& coeffs) {
    if (static_cast<int>(coeffs.size()) != a.dim)
        throw std::invalid_argument("vector needs dim coefficients");
    Vec v;
    for (const auto& s : coeffs) v.push_back(parse_rational(s));
    return v;
}

std::vector<Insertion> make_insertions(const Algebra& a,
                                       const std::vector<std::pair<int, int>>& ins) {
    std::vector<Insertion> out;
    for (auto [psi, idx] : ins) out.push_back({psi, basis_vec(a, idx)});
    return out;
}

py::dict report_dict(const IdentityReport& r) {
    py::dict d;
    d["identity"] = r.identity;
    d["params"] = r.params;
    d["left"] = rstr(r.left);
    d["right"] = rstr(r.right);
    d["residual"] = rstr(r.residual);
    d["pass"] = r.pass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact cyclic Hodge algebra correlator engine";

    py::class_<Algebra>(m, "Algebra")
        .def_property_readonly("name", [](const Algebra& a) { return a.name; })
        .def_property_readonly("dim", [](const Algebra& a) { return a.dim; })
        .def_property_readonly("h0", [](const Algebra& a) { return a.h0; })
        .def_property_readonly("parities",
                               [](const Algebra& a) {
                                   std::vector<int> p;
                                   for (auto x : a.parities) p.push_back(static_cast<int>(x));
                                   return p;
                               })
        .def("check_axioms",
             [](const Algebra& a) {
                 py::list out;
                 for (const auto& c : check_axioms(a).checks) {
                     py::dict d;
                     d["name"] = c.name;
                     d["pass"] = c.pass;
                     d["witness"] = c.witness;
                     d["residual"] = rstr(c.residual);
                     out.append(d);
                 }
                 return out;
             })
        .def("multiply",
             [](const Algebra& a, const std::vector<std::string>& x, const std::vector<std::string>& y) {
                 Vec r = multiply(a, vec_from_coeffs(a, x), vec_from_coeffs(a, y));
                 std::vector<std::string> out;
                 for (const auto& c : r) out.push_back(rstr(c));
                 return out;
             })
        .def("integrate",
             [](const Algebra& a, const std::vector<std::string>& x) {
                 return rstr(integrate(a, vec_from_coeffs(a, x)));
             })
        .def("scalar_product", [](const Algebra& a, const std::vector<std::string>& x,
                                  const std::vector<std::string>& y) {
            return rstr(scalar_product(a, vec_from_coeffs(a, x), vec_from_coeffs(a, y)));
        });

    py::class_<CorrelatorEngine>(m, "CorrelatorEngine")
        .def(py::init<Algebra>())
        .def("correlator",
             [](CorrelatorEngine& eng, int g, const std::vector<std::pair<int, int>>& ins) {
                 return rstr(eng.correlator_basis(g, ins));
             },
             py::arg("genus"), py::arg("insertions"),
             "correlator of basis insertions [(psi, basis index), ...]")
        .def("verify_string",
             [](CorrelatorEngine& eng, int g, const std::vector<std::pair<int, int>>& ins) {
                 return report_dict(verify_string(eng, g, make_insertions(eng.algebra(), ins)));
             })
        .def("verify_dilaton",
             [](CorrelatorEngine& eng, int g, const std::vector<std::pair<int, int>>& ins) {
                 return report_dict(verify_dilaton(eng, g, make_insertions(eng.algebra(), ins)));
             })
        .def("verify_main_lemma",
             [](CorrelatorEngine& eng, int g, const std::vector<std::pair<int, int>>& ins) {
                 return report_dict(verify_main_lemma(eng, g, make_insertions(eng.algebra(), ins)));
             })
        .def("potential",
             [](CorrelatorEngine& eng, int max_n, int max_psi, int max_genus) {
                 Potential pot = potential_coefficients(eng, {max_n, max_psi, max_genus});
                 py::list out;
                 for (const auto& [key, c] : pot.coeff) {
                     py::dict d;
                     d["genus"] = key.genus;
                     d["vars"] = key.vars;
                     d["coeff"] = rstr(c);
                     out.append(d);
                 }
                 return out;
             },
             py::arg("max_n") = 4, py::arg("max_psi") = 2, py::arg("max_genus") = 1)
        .def("action",
             [](CorrelatorEngine& eng, const std::vector<std::string>& state,
                const std::map<std::pair<int, int>, std::string>& t_assign, int max_n, int max_psi,
                int max_genus) {
                 std::map<std::pair<int, int>, Rational> t;
                 for (const auto& [k, v] : t_assign) t[k] = parse_rational(v);
                 auto by_genus = action_value(eng, vec_from_coeffs(eng.algebra(), state), t,
                                              {max_n, max_psi, max_genus});
                 py::dict d;
                 for (const auto& [g, c] : by_genus) d[py::int_(g)] = rstr(c);
                 return d;
             },
             py::arg("state"), py::arg("t_assign"), py::arg("max_n") = 4, py::arg("max_psi") = 2,
             py::arg("max_genus") = 1);

    m.def("load_algebra", [](const std::string& path) { return load_algebra_file(path); });
    m.def("point_algebra", &point_algebra);
    m.def("frobenius_algebra", &frobenius_truncated_poly, py::arg("degree"));
    m.def("grassmann_algebra", &grassmann_algebra);
    m.def("block6_algebra", &block6_algebra);
    m.def("fixture_names", &fixture_names);
    m.def("fixture_by_name", &fixture_by_name);

    m.def("psi_intersection",
          [](int g, const std::vector<int>& powers) { return rstr(psi_intersection(g, powers)); },
          py::arg("genus"), py::arg("powers"));

    m.def("verify_relation_file",
          [](const std::string& rel_path, const Algebra& a) {
              Relation rel = relation_from_json(parse_json_file(rel_path));
              CorrelatorEngine eng(a);
              long fails = 0, runs = 0;
              std::vector<int> pick(static_cast<size_t>(rel.n), 0);
              while (true) {
                  std::vector<Vec> leaves;
                  for (int t = 0; t < rel.n; ++t)
                      leaves.push_back(basis_vec(a, a.h0[static_cast<size_t>(pick[static_cast<size_t>(t)])]));
                  if (!verify_relation(rel, eng, leaves).pass) ++fails;
                  ++runs;
                  size_t i = 0;
                  for (; i < pick.size(); ++i) {
                      if (++pick[i] < static_cast<int>(a.h0.size())) break;
                      pick[i] = 0;
                  }
                  if (i == pick.size()) break;
              }
              py::dict d;
              d["relation"] = rel.name;
              d["assignments"] = runs;
              d["failures"] = fails;
              d["pass"] = (fails == 0);
              return d;
          },
          py::arg("relation_path"), py::arg("algebra"));

    m.def("search_block_algebra",
          [](const std::string& layout, long budget) {
              SearchResult res = search_block_algebra(default_search_space(layout), budget);
              py::dict d;
              d["tried"] = res.tried;
              d["found"] = res.found.has_value();
              if (res.found) d["algebra"] = *res.found;
              return d;
          },
          py::arg("layout") = "dim6-minimal", py::arg("budget") = 100000);
}
