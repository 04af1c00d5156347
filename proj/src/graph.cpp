#include "hodgeft/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hodgeft/psi.hpp"

namespace hft {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[static_cast<size_t>(x)] == x ? x : p[static_cast<size_t>(x)] = find(p[static_cast<size_t>(x)]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[static_cast<size_t>(a)] = b;
        return true;
    }
};

}  // namespace

bool graph_connected(const Graph& g) {
    int n = g.num_vertices();
    if (n <= 1) return true;
    UnionFind uf(n);
    int comps = n;
    for (const auto& e : g.edges)
        if (uf.unite(e.a, e.b)) --comps;
    return comps == 1;
}

int graph_total_genus(const Graph& g) {
    int n = g.num_vertices();
    UnionFind uf(n);
    int comps = n;
    for (const auto& e : g.edges)
        if (uf.unite(e.a, e.b)) --comps;
    int b1 = static_cast<int>(g.edges.size()) - n + comps;
    int s = std::accumulate(g.genus.begin(), g.genus.end(), 0);
    return s + b1;
}

namespace {

// Decorated multigraph with string-keyed vertices; shared by correlator
// graphs and stable dual graphs.
struct MView {
    std::vector<std::string> vkeys;
    const std::vector<HeavyEdge>* edges;
    const std::vector<Leaf>* leaves;
    int num_vertices() const { return static_cast<int>(vkeys.size()); }
};

// Permutations of vertices that could possibly realize an isomorphism:
// leafed vertices are pinned by their (distinct) label sets; leafless ones
// may permute within equal (key, degree, loop count) classes.
std::vector<std::vector<int>> candidate_perms(const MView& g) {
    int n = g.num_vertices();
    std::vector<int> deg(static_cast<size_t>(n), 0), loops(static_cast<size_t>(n), 0);
    for (const auto& e : *g.edges) {
        deg[static_cast<size_t>(e.a)]++;
        deg[static_cast<size_t>(e.b)]++;
        if (e.a == e.b) loops[static_cast<size_t>(e.a)]++;
    }
    std::vector<bool> leafed(static_cast<size_t>(n), false);
    for (const auto& l : *g.leaves) leafed[static_cast<size_t>(l.vertex)] = true;

    std::map<std::tuple<std::string, int, int>, std::vector<int>> classes;
    for (int v = 0; v < n; ++v) {
        if (leafed[static_cast<size_t>(v)]) continue;
        classes[{g.vkeys[static_cast<size_t>(v)], deg[static_cast<size_t>(v)], loops[static_cast<size_t>(v)]}].push_back(v);
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> base(static_cast<size_t>(n));
    std::iota(base.begin(), base.end(), 0);
    perms.push_back(base);
    for (auto& [key, cls] : classes) {
        (void)key;
        if (cls.size() < 2) continue;
        std::vector<int> idx = cls;
        std::sort(idx.begin(), idx.end());
        std::vector<std::vector<int>> next;
        std::vector<int> p = idx;
        do {
            for (const auto& perm : perms) {
                std::vector<int> q = perm;
                for (size_t t = 0; t < idx.size(); ++t) q[static_cast<size_t>(idx[t])] = p[t];
                next.push_back(std::move(q));
            }
        } while (std::next_permutation(p.begin(), p.end()));
        perms = std::move(next);
    }
    return perms;
}

struct EncEdge {
    int a, b, pa, pb;
    bool operator<(const EncEdge& o) const {
        return std::tie(a, b, pa, pb) < std::tie(o.a, o.b, o.pa, o.pb);
    }
    bool operator==(const EncEdge& o) const {
        return std::tie(a, b, pa, pb) == std::tie(o.a, o.b, o.pa, o.pb);
    }
};

EncEdge map_edge(const HeavyEdge& e, const std::vector<int>& perm) {
    int a = perm[static_cast<size_t>(e.a)], b = perm[static_cast<size_t>(e.b)];
    if (std::tie(a, e.psi_a) <= std::tie(b, e.psi_b)) return {a, b, e.psi_a, e.psi_b};
    return {b, a, e.psi_b, e.psi_a};
}

std::string encode(const MView& g, const std::vector<int>& perm) {
    int n = g.num_vertices();
    std::vector<std::string> keys_new(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) keys_new[static_cast<size_t>(perm[static_cast<size_t>(v)])] = g.vkeys[static_cast<size_t>(v)];
    std::vector<EncEdge> edges;
    edges.reserve(g.edges->size());
    for (const auto& e : *g.edges) edges.push_back(map_edge(e, perm));
    std::sort(edges.begin(), edges.end());
    std::vector<std::tuple<int, int, int>> leaves;  // (label, vertex, psi)
    for (const auto& l : *g.leaves) leaves.emplace_back(l.label, perm[static_cast<size_t>(l.vertex)], l.psi);
    std::sort(leaves.begin(), leaves.end());
    std::ostringstream os;
    os << n << "|";
    for (const auto& x : keys_new) os << x << ",";
    os << "|";
    for (const auto& e : edges) os << e.a << "-" << e.b << ":" << e.pa << ":" << e.pb << ";";
    os << "|";
    for (const auto& [lab, v, psi] : leaves) os << lab << "@" << v << ":" << psi << ";";
    return os.str();
}

MView view_of(const Graph& g) {
    MView m;
    for (int x : g.genus) m.vkeys.push_back(std::to_string(x));
    m.edges = &g.edges;
    m.leaves = &g.leaves;
    return m;
}

}  // namespace

namespace {

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    Graph h;
    int n = g.num_vertices();
    h.genus.assign(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) h.genus[static_cast<size_t>(perm[static_cast<size_t>(v)])] = g.genus[static_cast<size_t>(v)];
    for (const auto& e : g.edges)
        h.edges.push_back({perm[static_cast<size_t>(e.a)], perm[static_cast<size_t>(e.b)], e.psi_a, e.psi_b});
    for (const auto& l : g.leaves) h.leaves.push_back({perm[static_cast<size_t>(l.vertex)], l.psi, l.label});
    return h;
}

}  // namespace

std::string canonical_key(const Graph& g) {
    // Deterministic base relabeling: leafed vertices ordered by their
    // smallest leaf label (label sets are distinct), then leafless ones by
    // (genus, degree, loop count). Ambiguity within leafless classes is
    // resolved by minimizing the encoding over class permutations.
    int n = g.num_vertices();
    std::vector<int> deg(static_cast<size_t>(n), 0), loops(static_cast<size_t>(n), 0), minlab(static_cast<size_t>(n), 1 << 30);
    for (const auto& e : g.edges) {
        deg[static_cast<size_t>(e.a)]++;
        deg[static_cast<size_t>(e.b)]++;
        if (e.a == e.b) loops[static_cast<size_t>(e.a)]++;
    }
    for (const auto& l : g.leaves)
        minlab[static_cast<size_t>(l.vertex)] = std::min(minlab[static_cast<size_t>(l.vertex)], l.label);
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto ka = std::make_tuple(minlab[static_cast<size_t>(a)], g.genus[static_cast<size_t>(a)], deg[static_cast<size_t>(a)], loops[static_cast<size_t>(a)]);
        auto kb = std::make_tuple(minlab[static_cast<size_t>(b)], g.genus[static_cast<size_t>(b)], deg[static_cast<size_t>(b)], loops[static_cast<size_t>(b)]);
        return ka < kb;
    });
    std::vector<int> perm0(static_cast<size_t>(n));
    for (int pos = 0; pos < n; ++pos) perm0[static_cast<size_t>(order[static_cast<size_t>(pos)])] = pos;
    Graph h = relabel(g, perm0);
    MView hv = view_of(h);
    std::string best;
    for (const auto& perm : candidate_perms(hv)) {
        std::string s = encode(hv, perm);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

namespace {

long aut_order_m(const MView& g) {
    // Group edges by unordered endpoint pair.
    std::map<std::pair<int, int>, std::vector<const HeavyEdge*>> cls;
    for (const auto& e : *g.edges) {
        std::pair<int, int> key = std::minmax(e.a, e.b);
        cls[key].push_back(&e);
    }
    std::vector<std::vector<int>> perms = candidate_perms(g);
    std::string id_enc = encode(g, perms.front());
    long total = 0;
    for (const auto& perm : perms) {
        if (encode(g, perm) != id_enc) continue;  // must preserve the decorated edge multiset
        long factor = 1;
        for (const auto& [key, edges] : cls) {
            auto [u, v] = key;
            std::pair<int, int> tkey = std::minmax(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
            auto it = cls.find(tkey);
            if (it == cls.end() || it->second.size() != edges.size()) {
                factor = 0;
                break;
            }
            if (u == v) {
                // Loops: match unordered psi pairs; equal halves can flip.
                std::map<std::pair<int, int>, int> dom, tgt;
                for (const auto* e : edges) dom[std::minmax(e->psi_a, e->psi_b)]++;
                for (const auto* e : it->second) tgt[std::minmax(e->psi_a, e->psi_b)]++;
                if (dom != tgt) {
                    factor = 0;
                    break;
                }
                for (const auto& [dec, m] : dom) {
                    for (int t = 2; t <= m; ++t) factor *= t;
                    if (dec.first == dec.second)
                        for (int t = 0; t < m; ++t) factor *= 2;
                }
            } else {
                // Parallel edges: decorations aligned along the mapping.
                bool flip = perm[static_cast<size_t>(u)] > perm[static_cast<size_t>(v)];
                std::map<std::pair<int, int>, int> dom, tgt;
                for (const auto* e : edges) {
                    int pu = (e->a == u) ? e->psi_a : e->psi_b;
                    int pv = (e->a == u) ? e->psi_b : e->psi_a;
                    if (flip) std::swap(pu, pv);
                    dom[{pu, pv}]++;
                }
                int tu = std::min(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
                for (const auto* e : it->second) {
                    int pu = (e->a == tu) ? e->psi_a : e->psi_b;
                    int pv = (e->a == tu) ? e->psi_b : e->psi_a;
                    if (e->a == e->b) { pu = e->psi_a; pv = e->psi_b; }
                    tgt[{pu, pv}]++;
                }
                if (dom != tgt) {
                    factor = 0;
                    break;
                }
                for (const auto& [dec, m] : dom) {
                    (void)dec;
                    for (int t = 2; t <= m; ++t) factor *= t;
                }
            }
        }
        total += factor;
    }
    return total;
}

}  // namespace

long automorphism_order(const Graph& g) { return aut_order_m(view_of(g)); }

long multigraph_aut_order(const std::vector<std::string>& vertex_keys,
                          const std::vector<HeavyEdge>& edges, const std::vector<Leaf>& leaves) {
    MView m;
    m.vkeys = vertex_keys;
    m.edges = &edges;
    m.leaves = &leaves;
    return aut_order_m(m);
}

std::vector<Graph> enumerate_graphs(int g, const std::vector<int>& leaf_psi) {
    int n = static_cast<int>(leaf_psi.size());
    if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable (g,n)");
    long sum = std::accumulate(leaf_psi.begin(), leaf_psi.end(), 0L);
    long e_count = 3L * g - 3 + n - sum;
    std::vector<Graph> out;
    if (e_count < 0) return out;

    auto make_leaves = [&](const std::vector<int>& at) {
        std::vector<Leaf> ls;
        for (int i = 0; i < n; ++i) ls.push_back({at[static_cast<size_t>(i)], leaf_psi[static_cast<size_t>(i)], i + 1});
        return ls;
    };

    if (e_count == 0) {
        Graph one;
        one.genus = {g};
        one.leaves = make_leaves(std::vector<int>(static_cast<size_t>(n), 0));
        out.push_back(one);
        return out;
    }

    int E = static_cast<int>(e_count);
    std::map<std::string, Graph> seen;

    for (int V = 1; V <= E + 1; ++V) {
        int loops_total = g - (E - V + 1);
        if (loops_total < 0 || loops_total > V) continue;
        // Leaf placements up to vertex relabeling: leaf i may only open the
        // next fresh vertex. Complete, since the edge and genus enumerations
        // below cover all decorations of the relabeled representative.
        std::vector<std::vector<int>> placements;
        {
            std::vector<int> at(static_cast<size_t>(n), 0);
            std::function<void(int, int)> recl = [&](int i, int used) {
                if (i == n) {
                    placements.push_back(at);
                    return;
                }
                int lim = std::min(V - 1, used);
                for (int v = 0; v <= lim; ++v) {
                    at[static_cast<size_t>(i)] = v;
                    recl(i + 1, std::max(used, v + 1));
                }
            };
            recl(0, 0);
        }
        for (const std::vector<int>& at : placements) {
            // genus bits: choose loops_total vertices of genus 1
            std::vector<int> gv(static_cast<size_t>(V), 0);
            std::vector<int> pick(static_cast<size_t>(V), 0);
            std::fill(pick.begin(), pick.begin() + loops_total, 1);
            std::sort(pick.begin(), pick.end());
            do {
                for (int v = 0; v < V; ++v) gv[static_cast<size_t>(v)] = pick[static_cast<size_t>(v)];
                // forced heavy degrees from the per-vertex dimension constraint
                std::vector<int> need(static_cast<size_t>(V), 0);
                std::vector<int> nl(static_cast<size_t>(V), 0);
                std::vector<long> psum(static_cast<size_t>(V), 0);
                for (int i = 0; i < n; ++i) {
                    nl[static_cast<size_t>(at[static_cast<size_t>(i)])]++;
                    psum[static_cast<size_t>(at[static_cast<size_t>(i)])] += leaf_psi[static_cast<size_t>(i)];
                }
                bool ok = true;
                long total_deg = 0;
                for (int v = 0; v < V && ok; ++v) {
                    long m = psum[static_cast<size_t>(v)] - 3L * gv[static_cast<size_t>(v)] + 3 - nl[static_cast<size_t>(v)];
                    if (m < 0) ok = false;
                    // stability 2g-2+m+l > 0
                    if (ok && 2 * gv[static_cast<size_t>(v)] - 2 + m + nl[static_cast<size_t>(v)] <= 0) ok = false;
                    need[static_cast<size_t>(v)] = static_cast<int>(m);
                    total_deg += m;
                }
                if (ok && total_deg == 2L * E) {
                    // enumerate multigraphs matching the degree sequence
                    std::vector<HeavyEdge> cur;
                    std::function<void(int, int, std::vector<int>&)> rec =
                        [&](int min_a, int min_b, std::vector<int>& rem) {
                            int first = -1;
                            for (int v = 0; v < V; ++v)
                                if (rem[static_cast<size_t>(v)] > 0) {
                                    first = v;
                                    break;
                                }
                            if (first == -1) {
                                Graph cand;
                                cand.genus = gv;
                                cand.edges = cur;
                                cand.leaves = make_leaves(at);
                                if (!graph_connected(cand)) return;
                                std::string key = canonical_key(cand);
                                if (!seen.count(key)) seen.emplace(std::move(key), std::move(cand));
                                return;
                            }
                            // Edges are placed in lexicographically nondecreasing
                            // order, so every edge at `first` goes in before we
                            // move past it.
                            int b_start = (first == min_a) ? min_b : first;
                            for (int u = b_start; u < V; ++u) {
                                if (u == first) {
                                    if (rem[static_cast<size_t>(first)] < 2) continue;
                                } else if (rem[static_cast<size_t>(u)] < 1) {
                                    continue;
                                }
                                rem[static_cast<size_t>(first)] -= 1;
                                rem[static_cast<size_t>(u)] -= 1;
                                cur.push_back({first, u, 0, 0});
                                rec(first, u, rem);
                                cur.pop_back();
                                rem[static_cast<size_t>(first)] += 1;
                                rem[static_cast<size_t>(u)] += 1;
                            }
                        };
                    std::vector<int> rem = need;
                    rec(0, 0, rem);
                }
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
    }
    std::vector<Graph> res;
    res.reserve(seen.size());
    for (auto& [k, gr] : seen) res.push_back(std::move(gr));
    return res;
}

Rational weight_V(const Graph& g) {
    long a = automorphism_order(g);
    return rat(1, a);
}

Rational weight_P(const Graph& g) {
    Rational p = 1;
    int V = g.num_vertices();
    for (int v = 0; v < V; ++v) {
        std::vector<int> powers;
        for (const auto& l : g.leaves)
            if (l.vertex == v) powers.push_back(l.psi);
        for (const auto& e : g.edges) {
            if (e.a == v) powers.push_back(e.psi_a);
            if (e.b == v) powers.push_back(e.psi_b);
        }
        Rational f = psi_intersection(g.genus[static_cast<size_t>(v)], powers);
        if (f == 0) return 0;
        p *= f;
    }
    return p;
}

ContractionPlan build_plan(const Graph& g) {
    ContractionPlan plan;
    int V = g.num_vertices();
    int n_leaves = static_cast<int>(g.leaves.size());
    int n_edges = static_cast<int>(g.edges.size());

    std::vector<const Leaf*> by_label(static_cast<size_t>(n_leaves), nullptr);
    for (const auto& l : g.leaves) {
        if (l.label < 1 || l.label > n_leaves || by_label[static_cast<size_t>(l.label - 1)])
            throw std::invalid_argument("leaf labels must be 1..n and distinct");
        by_label[static_cast<size_t>(l.label - 1)] = &l;
    }

    for (int v = 0; v < V; ++v) {
        plan.vertex_slot_begin.push_back(static_cast<int>(plan.slots.size()));
        for (int t = 0; t < g.genus[static_cast<size_t>(v)]; ++t) {
            plan.slots.push_back({Slot::LoopLeg, v, t, 0});
            plan.slots.push_back({Slot::LoopLeg, v, t, 1});
        }
        for (int e = 0; e < n_edges; ++e) {
            if (g.edges[static_cast<size_t>(e)].a == v) plan.slots.push_back({Slot::EdgeLeg, v, e, 0});
            if (g.edges[static_cast<size_t>(e)].b == v) plan.slots.push_back({Slot::EdgeLeg, v, e, 1});
        }
        for (int lab = 1; lab <= n_leaves; ++lab)
            if (by_label[static_cast<size_t>(lab - 1)]->vertex == v)
                plan.slots.push_back({Slot::LeafIn, v, lab, 0});
    }

    // Input order: leaves by label, then per-vertex loops, then edges.
    auto slot_pos = [&](Slot::Kind k, int idx, int leg) {
        for (size_t s = 0; s < plan.slots.size(); ++s)
            if (plan.slots[s].kind == k && plan.slots[s].index == idx && plan.slots[s].leg == leg)
                return static_cast<int>(s);
        throw std::logic_error("slot not found");
    };
    for (int lab = 1; lab <= n_leaves; ++lab) plan.slot_of_input.push_back(slot_pos(Slot::LeafIn, lab, 0));
    for (int v = 0; v < V; ++v)
        for (int t = 0; t < g.genus[static_cast<size_t>(v)]; ++t) {
            // both legs of loop t at vertex v
            for (size_t s = 0; s < plan.slots.size(); ++s)
                if (plan.slots[s].kind == Slot::LoopLeg && plan.slots[s].vertex == v && plan.slots[s].index == t)
                    plan.slot_of_input.push_back(static_cast<int>(s));
        }
    for (int e = 0; e < n_edges; ++e) {
        plan.slot_of_input.push_back(slot_pos(Slot::EdgeLeg, e, 0));
        plan.slot_of_input.push_back(slot_pos(Slot::EdgeLeg, e, 1));
    }

    UnionFind uf(V);
    for (int e = 0; e < n_edges; ++e)
        if (!uf.unite(g.edges[static_cast<size_t>(e)].a, g.edges[static_cast<size_t>(e)].b))
            plan.cycle_edges.push_back(e);
    return plan;
}

int koszul_arrangement_sign(const std::vector<Parity>& input_parities,
                            const std::vector<int>& slot_pos) {
    int sign = 1;
    size_t n = input_parities.size();
    for (size_t i = 0; i < n; ++i) {
        if (!is_odd(input_parities[i])) continue;
        for (size_t j = i + 1; j < n; ++j)
            if (is_odd(input_parities[j]) && slot_pos[i] > slot_pos[j]) sign = -sign;
    }
    return sign;
}

std::vector<BivEntry> bivector_entries(const Bivector& b) {
    std::vector<BivEntry> out;
    for (size_t i = 0; i < b.c.size(); ++i)
        for (size_t j = 0; j < b.c[i].size(); ++j)
            if (b.c[i][j] != 0) out.push_back({static_cast<int>(i), static_cast<int>(j), b.c[i][j]});
    return out;
}

Rational contract_T(const Algebra& alg, const Graph& g, const std::vector<Vec>& leaf_vectors) {
    int n_leaves = static_cast<int>(g.leaves.size());
    if (static_cast<int>(leaf_vectors.size()) != n_leaves)
        throw std::invalid_argument("leaf vector count mismatch");
    std::vector<Parity> leaf_par;
    for (const auto& v : leaf_vectors) {
        auto p = homogeneous_parity(alg, v);
        if (!p) throw std::invalid_argument("parity-inhomogeneous leaf vector");
        leaf_par.push_back(*p);
    }
    if (!alg.eta_ok) throw std::invalid_argument("contract_T needs nondegenerate eta");

    int total_loops = std::accumulate(g.genus.begin(), g.genus.end(), 0);
    int n_edges = static_cast<int>(g.edges.size());

    std::vector<BivEntry> loop_entries, heavy_entries;
    if (total_loops > 0) loop_entries = bivector_entries(Bivector{alg.eta_inv});
    if (n_edges > 0) {
        if (!alg.gplus_ok) throw std::invalid_argument("contract_T needs derivable G+");
        Operator gg{mat_mul(alg.Gm.m, alg.Gp.m), Parity::even};
        heavy_entries = bivector_entries(bivector_of(alg, gg));
        if (heavy_entries.empty()) return 0;
    }

    ContractionPlan plan = build_plan(g);
    int n_inputs = n_leaves + total_loops + n_edges;  // pairing elements
    // expand to symbol positions: each loop/edge contributes two symbols
    std::vector<int> sym_slot;
    std::vector<Parity> sym_par;
    sym_slot.reserve(plan.slots.size());
    for (int i = 0; i < n_leaves; ++i) {
        sym_slot.push_back(plan.slot_of_input[static_cast<size_t>(i)]);
        sym_par.push_back(leaf_par[static_cast<size_t>(i)]);
    }
    for (int t = 0; t < total_loops + n_edges; ++t) {
        sym_slot.push_back(plan.slot_of_input[static_cast<size_t>(n_leaves + 2 * t)]);
        sym_slot.push_back(plan.slot_of_input[static_cast<size_t>(n_leaves + 2 * t + 1)]);
        sym_par.push_back(Parity::even);
        sym_par.push_back(Parity::even);
    }
    (void)n_inputs;

    // Per-vertex trailing leaf products are assignment-independent.
    int V = g.num_vertices();
    std::vector<std::vector<const Vec*>> vertex_leaf_seq(static_cast<size_t>(V));
    std::vector<std::vector<size_t>> vertex_leg_slots(static_cast<size_t>(V));
    for (size_t s = 0; s < plan.slots.size(); ++s) {
        const Slot& sl = plan.slots[s];
        if (sl.kind == Slot::LeafIn)
            vertex_leaf_seq[static_cast<size_t>(sl.vertex)].push_back(&leaf_vectors[static_cast<size_t>(sl.index - 1)]);
        else
            vertex_leg_slots[static_cast<size_t>(sl.vertex)].push_back(s);
    }

    // Assignment state: basis index per leg slot.
    std::vector<int> leg_basis(plan.slots.size(), -1);

    // Which pairing element does each symbol belong to, and its leg?
    struct PairRef {
        bool is_loop;
        int idx;  // loop counter or edge index
    };
    std::vector<PairRef> pair_refs;
    for (int t = 0; t < total_loops; ++t) pair_refs.push_back({true, t});
    for (int e = 0; e < n_edges; ++e) pair_refs.push_back({false, e});

    Rational total = 0;
    std::vector<const BivEntry*> choice(pair_refs.size(), nullptr);

    std::function<void(size_t, Rational)> rec = [&](size_t t, Rational coef) {
        if (t == pair_refs.size()) {
            // fill symbol parities for legs
            for (size_t p = 0; p < pair_refs.size(); ++p) {
                const BivEntry* ch = choice[p];
                sym_par[static_cast<size_t>(n_leaves) + 2 * p] = alg.parity(ch->i);
                sym_par[static_cast<size_t>(n_leaves) + 2 * p + 1] = alg.parity(ch->j);
                leg_basis[static_cast<size_t>(sym_slot[static_cast<size_t>(n_leaves) + 2 * p])] = ch->i;
                leg_basis[static_cast<size_t>(sym_slot[static_cast<size_t>(n_leaves) + 2 * p + 1])] = ch->j;
            }
            int sign = koszul_arrangement_sign(sym_par, sym_slot);
            Rational term = coef * sign;
            for (int v = 0; v < V && term != 0; ++v) {
                Vec acc = basis_vec(alg, alg.unit);
                bool first = true;
                for (size_t s : vertex_leg_slots[static_cast<size_t>(v)]) {
                    Vec bv = basis_vec(alg, leg_basis[s]);
                    acc = first ? bv : multiply(alg, acc, bv);
                    first = false;
                }
                for (const Vec* lv : vertex_leaf_seq[static_cast<size_t>(v)]) {
                    acc = first ? *lv : multiply(alg, acc, *lv);
                    first = false;
                }
                term *= integrate(alg, acc);
            }
            total += term;
            return;
        }
        const auto& entries = pair_refs[t].is_loop ? loop_entries : heavy_entries;
        for (const auto& e : entries) {
            choice[t] = &e;
            rec(t + 1, coef * e.c);
        }
    };
    rec(0, Rational(1));
    return total;
}

}  // namespace hft
