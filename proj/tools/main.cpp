#include <cstdlib>
#include <numeric>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hodgeft/correlator.hpp"
#include "hodgeft/fixtures.hpp"
#include "hodgeft/io.hpp"
#include "hodgeft/psi.hpp"
#include "hodgeft/strata.hpp"

using namespace hft;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFile = 3;

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Paths resolve as given; bare names fall back to $HFT_FIXTURE_DIR.
std::string resolve_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    const char* dir = std::getenv("HFT_FIXTURE_DIR");
    if (dir && path.find('/') == std::string::npos) {
        for (const std::string cand : {std::string(dir) + "/" + path, std::string(dir) + "/" + path + ".json"})
            if (fs::exists(cand)) return cand;
    }
    throw FileError("no such file: " + path);
}

Algebra load_algebra_checked(const std::string& path) {
    try {
        return load_algebra_file(resolve_path(path));
    } catch (const FileError&) {
        throw;
    } catch (const std::exception& e) {
        throw FileError(std::string("failed to load algebra: ") + e.what());
    }
}

json parse_json_checked(const std::string& path) {
    try {
        return parse_json_file(resolve_path(path));
    } catch (const FileError&) {
        throw;
    } catch (const std::exception& e) {
        throw FileError(std::string("failed to parse: ") + e.what());
    }
}

std::vector<std::pair<int, int>> parse_insertions(const std::string& spec) {
    std::vector<std::pair<int, int>> out;
    std::string cur;
    std::istringstream is(spec);
    while (std::getline(is, cur, ',')) {
        auto colon = cur.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--ins expects a:i,a:i,...");
        out.emplace_back(std::stoi(cur.substr(0, colon)), std::stoi(cur.substr(colon + 1)));
    }
    return out;
}

json report_to_json(const IdentityReport& r) {
    return json{{"identity", r.identity}, {"params", r.params},   {"left", rational_str(r.left)},
                {"right", rational_str(r.right)}, {"residual", rational_str(r.residual)},
                {"pass", r.pass}};
}

json graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = json::array();
    for (int x : g.genus) j["vertices"].push_back(json{{"genus", x}});
    j["heavy_edges"] = json::array();
    for (const auto& e : g.edges)
        j["heavy_edges"].push_back(json{{"a", e.a}, {"b", e.b}, {"psi_a", e.psi_a}, {"psi_b", e.psi_b}});
    j["leaves"] = json::array();
    for (const auto& l : g.leaves)
        j["leaves"].push_back(json{{"vertex", l.vertex}, {"psi", l.psi}, {"label", l.label}});
    return j;
}

// Exhaustive insertion sweep used by `verify`. String and dilaton quantify
// over H0 (primary fields); the main lemma over the full basis.
template <typename F>
int sweep_identities(CorrelatorEngine& eng, const std::string& which, const Bounds& bounds,
                     bool json_out, const std::vector<int>& basis_pool, F make_instances) {
    const Algebra& alg = eng.algebra();
    long runs = 0, fails = 0;
    json failures = json::array();
    for (int g = 0; g <= bounds.max_genus; ++g) {
        for (int n = 1; n <= bounds.max_n; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            std::vector<int> powers(static_cast<size_t>(n), 0);
            std::function<void(int, int)> rec_p = [&](int pos, int left) {
                if (pos == n) {
                    std::vector<int> basis(static_cast<size_t>(n), 0);
                    while (true) {
                        std::vector<Insertion> ins;
                        for (int t = 0; t < n; ++t)
                            ins.push_back({powers[static_cast<size_t>(t)],
                                           basis_vec(alg, basis_pool[static_cast<size_t>(basis[static_cast<size_t>(t)])])});
                        for (const IdentityReport& r : make_instances(g, ins)) {
                            ++runs;
                            if (!r.pass) {
                                ++fails;
                                if (failures.size() < 20) failures.push_back(report_to_json(r));
                            }
                        }
                        size_t i = 0;
                        for (; i < basis.size(); ++i) {
                            if (++basis[i] < static_cast<int>(basis_pool.size())) break;
                            basis[i] = 0;
                        }
                        if (i == basis.size()) break;
                    }
                    return;
                }
                for (int v = 0; v <= left; ++v) {
                    powers[static_cast<size_t>(pos)] = v;
                    rec_p(pos + 1, left - v);
                }
            };
            rec_p(0, bounds.max_psi);
        }
    }
    if (json_out) {
        json out{{"identity", which}, {"algebra", alg.name}, {"runs", runs}, {"failures", fails},
                 {"first_failures", failures}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << which << " on " << alg.name << ": " << runs << " instances, " << fails
                  << " failures\n";
        for (const auto& f : failures) std::cout << "  FAIL " << f["params"].get<std::string>() << " residual " << f["residual"].get<std::string>() << "\n";
    }
    return fails == 0 ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for cyclic Hodge algebra correlators"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json_out = false;
    app.add_flag("--json", json_out, "machine-readable output");

    int exit_code = 0;

    // ---- check-axioms -------------------------------------------------
    {
        auto* cmd = app.add_subcommand("check-axioms", "run the axiom suite on an algebra file");
        auto path = std::make_shared<std::string>();
        cmd->add_option("algebra", *path, "algebra spec file")->required();
        cmd->callback([&exit_code, path, &json_out] {
            Algebra a = load_algebra_checked(*path);
            AxiomReport rep = check_axioms(a);
            if (json_out) {
                json checks = json::array();
                for (const auto& c : rep.checks)
                    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness},
                                          {"residual", rational_str(c.residual)}});
                std::cout << json{{"algebra", a.name}, {"pass", rep.all_pass()}, {"checks", checks}}.dump(2)
                          << "\n";
            } else {
                for (const auto& c : rep.checks)
                    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
                              << (c.pass ? "" : "  [" + c.witness + "] residual " + rational_str(c.residual))
                              << "\n";
            }
            exit_code = rep.all_pass() ? 0 : kExitVerifyFailed;
        });
    }

    // ---- intersect -----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("intersect", "psi intersection number <tau_a1...tau_an>_g");
        auto g = std::make_shared<int>(0);
        auto powers = std::make_shared<std::vector<int>>();
        auto table_out = std::make_shared<std::string>();
        cmd->add_option("g", *g, "genus")->required();
        cmd->add_option("powers", *powers, "psi powers");
        cmd->add_option("--dump-table", *table_out, "write the accumulated table as JSON");
        cmd->callback([g, powers, table_out, &json_out] {
            IntersectionTable table;
            Rational v = table.value(*g, *powers);
            if (json_out) {
                std::ostringstream key;
                key << *g << ":";
                std::vector<int> sorted = *powers;
                std::sort(sorted.begin(), sorted.end());
                for (size_t i = 0; i < sorted.size(); ++i) key << (i ? "," : "") << sorted[i];
                std::cout << json{{key.str(), rational_str(v)}}.dump(2) << "\n";
            } else {
                std::cout << rational_str(v) << "\n";
            }
            if (!table_out->empty()) {
                json j;
                for (const auto& [k, s] : table.snapshot()) j[k] = s;
                write_json_file(j, *table_out);
            }
        });
    }

    // ---- correlator ------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("correlator", "correlator of basis-vector insertions");
        auto path = std::make_shared<std::string>();
        auto g = std::make_shared<int>(0);
        auto ins = std::make_shared<std::string>();
        auto dump_graphs = std::make_shared<bool>(false);
        cmd->add_option("algebra", *path)->required();
        cmd->add_option("--genus", *g)->required();
        cmd->add_option("--ins", *ins, "insertions a:i,a:i,... (psi power : basis index)")->required();
        cmd->add_flag("--dump-graphs", *dump_graphs, "also print the contributing graphs");
        cmd->callback([path, g, ins, dump_graphs, &json_out] {
            Algebra a = load_algebra_checked(*path);
            CorrelatorEngine eng(a);
            auto pairs = parse_insertions(*ins);
            Rational v = eng.correlator_basis(*g, pairs);
            json out;
            out["value"] = rational_str(v);
            if (*dump_graphs) {
                std::vector<int> powers;
                for (auto& [ap, bi] : pairs) powers.push_back(ap);
                json graphs = json::array();
                for (const auto& gr : eng.graphs(*g, powers)) graphs.push_back(graph_to_json(gr));
                out["graphs"] = graphs;
            }
            if (json_out)
                std::cout << out.dump(2) << "\n";
            else {
                std::cout << rational_str(v) << "\n";
                if (*dump_graphs) std::cout << out["graphs"].dump(2) << "\n";
            }
        });
    }

    // ---- potential -------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("potential", "truncated potential coefficients");
        auto path = std::make_shared<std::string>();
        auto bounds = std::make_shared<Bounds>();
        auto out_file = std::make_shared<std::string>();
        cmd->add_option("algebra", *path)->required();
        cmd->add_option("--max-n", bounds->max_n, "max insertions");
        cmd->add_option("--max-psi", bounds->max_psi, "max psi power");
        cmd->add_option("--max-genus", bounds->max_genus, "max genus");
        cmd->add_option("--out", *out_file, "write coefficients to a JSON file");
        cmd->callback([path, bounds, out_file, &json_out] {
            Algebra a = load_algebra_checked(*path);
            CorrelatorEngine eng(a);
            Potential pot = potential_coefficients(eng, *bounds);
            json arr = json::array();
            for (const auto& [key, c] : pot.coeff) {
                json vars = json::array();
                for (auto [n, i] : key.vars) vars.push_back(json::array({n, i}));
                arr.push_back(json{{"genus", key.genus}, {"vars", vars}, {"coeff", rational_str(c)}});
            }
            json out{{"algebra", a.name},
                     {"bounds", {{"max_n", bounds->max_n}, {"max_psi", bounds->max_psi}, {"max_genus", bounds->max_genus}}},
                     {"coefficients", arr}};
            if (!out_file->empty()) write_json_file(out, *out_file);
            if (json_out || out_file->empty()) std::cout << out.dump(2) << "\n";
        });
    }

    // ---- verify ------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("verify", "exhaustively verify string/dilaton/main-lemma");
        auto which = std::make_shared<std::string>();
        auto path = std::make_shared<std::string>();
        auto bounds = std::make_shared<Bounds>(Bounds{4, 4, 2});
        cmd->add_option("identity", *which, "string | dilaton | main-lemma")->required();
        cmd->add_option("algebra", *path)->required();
        cmd->add_option("--max-n", bounds->max_n);
        cmd->add_option("--max-psi", bounds->max_psi, "max total psi power");
        cmd->add_option("--max-genus", bounds->max_genus);
        cmd->callback([&exit_code, which, path, bounds, &json_out] {
            Algebra a = load_algebra_checked(*path);
            CorrelatorEngine eng(a);
            std::vector<int> full(static_cast<size_t>(a.dim));
            std::iota(full.begin(), full.end(), 0);
            if (*which == "string") {
                exit_code = sweep_identities(eng, "string", *bounds, json_out, a.h0,
                                             [&](int g, const std::vector<Insertion>& ins) {
                                                 std::vector<IdentityReport> out;
                                                 long s = 0;
                                                 for (const auto& i : ins) s += i.psi;
                                                 if (s > 0) out.push_back(verify_string(eng, g, ins));
                                                 return out;
                                             });
            } else if (*which == "dilaton") {
                exit_code = sweep_identities(eng, "dilaton", *bounds, json_out, a.h0,
                                             [&](int g, const std::vector<Insertion>& ins) {
                                                 return std::vector<IdentityReport>{verify_dilaton(eng, g, ins)};
                                             });
            } else if (*which == "main-lemma") {
                exit_code = sweep_identities(eng, "main-lemma", *bounds, json_out, full,
                                             [&](int g, const std::vector<Insertion>& ins) {
                                                 return std::vector<IdentityReport>{verify_main_lemma(eng, g, ins)};
                                             });
            } else {
                throw CLI::ValidationError("identity must be string, dilaton, or main-lemma");
            }
        });
    }

    // ---- verify-relation ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("verify-relation", "verify a tautological relation file");
        auto rel_path = std::make_shared<std::string>();
        auto alg_path = std::make_shared<std::string>();
        cmd->add_option("relation", *rel_path)->required();
        cmd->add_option("algebra", *alg_path)->required();
        cmd->callback([&exit_code, rel_path, alg_path, &json_out] {
            Relation rel = relation_from_json(parse_json_checked(*rel_path));
            Algebra a = load_algebra_checked(*alg_path);
            CorrelatorEngine eng(a);
            long runs = 0, fails = 0;
            json failures = json::array();
            std::vector<int> pick(static_cast<size_t>(rel.n), 0);
            while (true) {
                std::vector<Vec> leaves;
                for (int t = 0; t < rel.n; ++t)
                    leaves.push_back(basis_vec(a, a.h0[static_cast<size_t>(pick[static_cast<size_t>(t)])]));
                IdentityReport r = verify_relation(rel, eng, leaves);
                ++runs;
                if (!r.pass) {
                    ++fails;
                    if (failures.size() < 20) failures.push_back(report_to_json(r));
                }
                size_t i = 0;
                for (; i < pick.size(); ++i) {
                    if (++pick[i] < static_cast<int>(a.h0.size())) break;
                    pick[i] = 0;
                }
                if (i == pick.size()) break;
            }
            if (json_out)
                std::cout << json{{"relation", rel.name}, {"algebra", a.name}, {"assignments", runs},
                                  {"failures", fails}, {"first_failures", failures}}
                                 .dump(2)
                          << "\n";
            else
                std::cout << rel.name << " on " << a.name << ": " << runs << " assignments, " << fails
                          << " failures\n";
            exit_code = (fails == 0) ? 0 : kExitVerifyFailed;
        });
    }

    // ---- eliminate -----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("eliminate", "white-edge elimination of a stratum file");
        auto path = std::make_shared<std::string>();
        auto alg_path = std::make_shared<std::string>();
        auto leaves_opt = std::make_shared<std::string>();
        cmd->add_option("stratum", *path)->required();
        cmd->add_option("--evaluate", *alg_path, "also evaluate white vs eliminated on an algebra");
        cmd->add_option("--leaves", *leaves_opt, "comma-separated basis indices for the leaves");
        cmd->callback([&exit_code, path, alg_path, leaves_opt, &json_out] {
            StableDualGraph s = stratum_from_json(parse_json_checked(*path));
            auto terms = eliminate_white(s);
            json jterms = json::array();
            for (const auto& [coef, dg] : terms) {
                json dec = json::array();
                for (auto d : dg.dec)
                    dec.push_back(d == EdgeDecoration::Plain ? "plain"
                                  : d == EdgeDecoration::ArrowToA ? "arrow-a" : "arrow-b");
                jterms.push_back(json{{"coeff", rational_str(coef)}, {"arrows", dg.arrows},
                                      {"aut", dg.aut}, {"decoration", dec}});
            }
            json out{{"terms", jterms}};
            if (!alg_path->empty()) {
                Algebra a = load_algebra_checked(*alg_path);
                CorrelatorEngine eng(a);
                std::vector<Vec> leaves;
                if (!leaves_opt->empty()) {
                    std::istringstream is(*leaves_opt);
                    std::string tok;
                    while (std::getline(is, tok, ',')) leaves.push_back(basis_vec(a, std::stoi(tok)));
                } else {
                    leaves.assign(s.leaves.size(), basis_vec(a, a.unit));
                }
                Rational white = evaluate_white(translate_stratum(s), eng, leaves);
                Rational elim = evaluate_eliminated(s, eng, leaves);
                out["white"] = rational_str(white);
                out["eliminated"] = rational_str(elim);
                out["difference"] = rational_str(white - elim);
                exit_code = (white == elim) ? 0 : kExitVerifyFailed;
            }
            std::cout << out.dump(2) << "\n";
        });
    }

    // ---- search-algebra ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("search-algebra", "scan a block-algebra parameter space");
        auto layout = std::make_shared<std::string>("dim6-minimal");
        auto budget = std::make_shared<long>(100000);
        auto out_file = std::make_shared<std::string>();
        cmd->add_option("--layout", *layout, "dim5-minimal | dim6-minimal");
        cmd->add_option("--budget", *budget, "max candidates to test");
        cmd->add_option("--out", *out_file, "write the found algebra spec");
        cmd->callback([&exit_code, layout, budget, out_file, &json_out] {
            SearchResult res = search_block_algebra(default_search_space(*layout), *budget);
            json out{{"layout", *layout}, {"tried", res.tried}, {"found", res.found.has_value()}};
            if (res.found) {
                out["algebra"] = algebra_to_json(*res.found);
                if (!out_file->empty()) save_algebra_file(*res.found, *out_file);
            }
            if (json_out)
                std::cout << out.dump(2) << "\n";
            else
                std::cout << (res.found ? "found after " : "none found, tried ") << res.tried
                          << " candidates\n";
            exit_code = 0;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFile;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
