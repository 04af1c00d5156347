#include "hodgeft/strata.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hft {

namespace {

std::string vertex_key(const DualVertex& v) {
    std::vector<int> k = v.kappa;
    std::sort(k.begin(), k.end());
    std::ostringstream os;
    os << "g" << v.genus << "k";
    for (int x : k) os << x << ".";
    return os.str();
}

std::vector<HeavyEdge> as_heavy(const std::vector<DualEdge>& edges) {
    std::vector<HeavyEdge> out;
    for (const auto& e : edges) out.push_back({e.a, e.b, e.psi_a, e.psi_b});
    return out;
}

std::vector<Leaf> as_leaves(const std::vector<DualLeaf>& leaves) {
    std::vector<Leaf> out;
    for (const auto& l : leaves) out.push_back({l.vertex, l.psi, l.label});
    return out;
}

int node_valence(const StableDualGraph& s, int v) {
    int n = 0;
    for (const auto& l : s.leaves)
        if (l.vertex == v) ++n;
    for (const auto& e : s.edges) {
        if (e.a == v) ++n;
        if (e.b == v) ++n;
    }
    return n;
}

}  // namespace

long stable_graph_aut_order(const StableDualGraph& s) {
    std::vector<std::string> keys;
    for (const auto& v : s.vertices) keys.push_back(vertex_key(v));
    return multigraph_aut_order(keys, as_heavy(s.edges), as_leaves(s.leaves));
}

int stratum_dimension(const StableDualGraph& s) {
    long dim = 0;
    for (int v = 0; v < s.num_vertices(); ++v) {
        dim += 3L * s.vertices[static_cast<size_t>(v)].genus - 3 + node_valence(s, v);
        for (int k : s.vertices[static_cast<size_t>(v)].kappa) dim -= k;
    }
    for (const auto& l : s.leaves) dim -= l.psi;
    for (const auto& e : s.edges) dim -= e.psi_a + e.psi_b;
    return static_cast<int>(dim);
}

void validate_stratum(const StableDualGraph& s) {
    int V = s.num_vertices();
    if (V == 0) throw std::invalid_argument("stratum needs at least one vertex");
    auto check_vertex = [&](int v) {
        if (v < 0 || v >= V) throw std::invalid_argument("stratum vertex index out of range");
    };
    for (const auto& e : s.edges) {
        check_vertex(e.a);
        check_vertex(e.b);
        if (e.psi_a < 0 || e.psi_b < 0) throw std::invalid_argument("negative psi power");
    }
    int n = static_cast<int>(s.leaves.size());
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (const auto& l : s.leaves) {
        check_vertex(l.vertex);
        if (l.psi < 0) throw std::invalid_argument("negative psi power");
        if (l.label < 1 || l.label > n || seen[static_cast<size_t>(l.label - 1)])
            throw std::invalid_argument("leaf labels must be 1..n and distinct");
        seen[static_cast<size_t>(l.label - 1)] = true;
    }
    for (int v = 0; v < V; ++v) {
        const auto& vert = s.vertices[static_cast<size_t>(v)];
        for (int k : vert.kappa)
            if (k < 0) throw std::invalid_argument("negative kappa index");
        if (2 * vert.genus - 2 + node_valence(s, v) <= 0)
            throw std::invalid_argument("unstable stratum vertex " + std::to_string(v));
    }
}

WhiteExpression translate_stratum(const StableDualGraph& s) {
    validate_stratum(s);
    WhiteExpression expr;
    expr.prefactor = rat(1, stable_graph_aut_order(s));
    int V = s.num_vertices();
    for (int v = 0; v < V; ++v) {
        WhiteNode node;
        node.genus = s.vertices[static_cast<size_t>(v)].genus;
        std::vector<const DualLeaf*> at;
        for (const auto& l : s.leaves)
            if (l.vertex == v) at.push_back(&l);
        std::sort(at.begin(), at.end(),
                  [](const DualLeaf* x, const DualLeaf* y) { return x->label < y->label; });
        for (const auto* l : at) node.slots.push_back({NodeSlot::LeafIn, l->psi, l->label, 0});
        const auto& kap = s.vertices[static_cast<size_t>(v)].kappa;
        for (size_t j = 0; j < kap.size(); ++j)
            node.slots.push_back({NodeSlot::KappaIn, kap[j] + 1, static_cast<int>(j), 0});
        for (size_t e = 0; e < s.edges.size(); ++e) {
            if (s.edges[e].a == v)
                node.slots.push_back({NodeSlot::EdgeEnd, s.edges[e].psi_a, static_cast<int>(e), 0});
            if (s.edges[e].b == v)
                node.slots.push_back({NodeSlot::EdgeEnd, s.edges[e].psi_b, static_cast<int>(e), 1});
        }
        expr.nodes.push_back(std::move(node));
    }
    expr.edges = s.edges;
    // spanning-forest bookkeeping: loops and repeat connections close cycles
    std::vector<int> root(static_cast<size_t>(V));
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return root[static_cast<size_t>(x)] == x ? x : root[static_cast<size_t>(x)] = find(root[static_cast<size_t>(x)]);
    };
    for (size_t e = 0; e < s.edges.size(); ++e) {
        int ra = find(s.edges[e].a), rb = find(s.edges[e].b);
        if (ra == rb)
            expr.cycle_edges.push_back(static_cast<int>(e));
        else
            root[static_cast<size_t>(ra)] = rb;
    }
    return expr;
}

namespace {

// Shared cross-node contraction: node correlators as graded multilinear
// forms, contracted along edges with the supplied bivector entries.
Rational contract_nodes(CorrelatorEngine& eng, const std::vector<WhiteNode>& nodes,
                        const std::vector<DualEdge>& edges,
                        const std::vector<const std::vector<BivEntry>*>& edge_entries,
                        const std::vector<Vec>& leaf_vectors) {
    const Algebra& alg = eng.algebra();
    for (const auto& node : nodes)
        if (2 * node.genus - 2 + static_cast<int>(node.slots.size()) <= 0) return 0;

    // global slot positions
    struct SlotPos {
        int node;
        int local;
    };
    std::vector<SlotPos> slot_list;
    std::vector<int> node_begin;
    for (size_t nn = 0; nn < nodes.size(); ++nn) {
        node_begin.push_back(static_cast<int>(slot_list.size()));
        for (size_t t = 0; t < nodes[nn].slots.size(); ++t)
            slot_list.push_back({static_cast<int>(nn), static_cast<int>(t)});
    }
    auto global_pos = [&](int node, NodeSlot::Kind kind, int ref, int side) {
        for (size_t p = 0; p < slot_list.size(); ++p) {
            if (slot_list[p].node != node) continue;
            const NodeSlot& sl = nodes[static_cast<size_t>(node)].slots[static_cast<size_t>(slot_list[p].local)];
            if (sl.kind == kind && sl.ref == ref && sl.side == side) return static_cast<int>(p);
        }
        throw std::logic_error("node slot not found");
    };

    int n_leaves = static_cast<int>(leaf_vectors.size());
    std::vector<int> sym_slot;
    std::vector<Parity> sym_par;
    for (int lab = 1; lab <= n_leaves; ++lab) {
        int pos = -1;
        for (size_t nn = 0; nn < nodes.size() && pos < 0; ++nn)
            for (const auto& sl : nodes[nn].slots)
                if (sl.kind == NodeSlot::LeafIn && sl.ref == lab) {
                    pos = global_pos(static_cast<int>(nn), NodeSlot::LeafIn, lab, 0);
                    break;
                }
        if (pos < 0) throw std::invalid_argument("label " + std::to_string(lab) + " missing");
        auto p = homogeneous_parity(alg, leaf_vectors[static_cast<size_t>(lab - 1)]);
        if (!p) throw std::invalid_argument("parity-inhomogeneous leaf vector");
        sym_slot.push_back(pos);
        sym_par.push_back(*p);
    }
    struct EdgeSyms {
        int pos_a, pos_b;
    };
    std::vector<EdgeSyms> edge_syms;
    for (size_t e = 0; e < edges.size(); ++e) {
        int na = -1, nb = -1;
        for (size_t nn = 0; nn < nodes.size(); ++nn)
            for (const auto& sl : nodes[nn].slots)
                if (sl.kind == NodeSlot::EdgeEnd && sl.ref == static_cast<int>(e)) {
                    if (sl.side == 0) na = static_cast<int>(nn);
                    if (sl.side == 1) nb = static_cast<int>(nn);
                }
        edge_syms.push_back({global_pos(na, NodeSlot::EdgeEnd, static_cast<int>(e), 0),
                             global_pos(nb, NodeSlot::EdgeEnd, static_cast<int>(e), 1)});
        sym_slot.push_back(edge_syms.back().pos_a);
        sym_slot.push_back(edge_syms.back().pos_b);
        sym_par.push_back(Parity::even);
        sym_par.push_back(Parity::even);
    }

    // basis assignment per edge end: slot position -> basis index
    std::vector<int> slot_basis(slot_list.size(), -1);
    Rational total = 0;
    std::vector<const BivEntry*> choice(edges.size(), nullptr);

    std::function<void(size_t, Rational)> rec = [&](size_t e, Rational coef) {
        if (e == edges.size()) {
            for (size_t t = 0; t < edges.size(); ++t) {
                sym_par[static_cast<size_t>(n_leaves) + 2 * t] = alg.parity(choice[t]->i);
                sym_par[static_cast<size_t>(n_leaves) + 2 * t + 1] = alg.parity(choice[t]->j);
                slot_basis[static_cast<size_t>(edge_syms[t].pos_a)] = choice[t]->i;
                slot_basis[static_cast<size_t>(edge_syms[t].pos_b)] = choice[t]->j;
            }
            Rational term = coef * koszul_arrangement_sign(sym_par, sym_slot);
            for (size_t nn = 0; nn < nodes.size() && term != 0; ++nn) {
                std::vector<Insertion> ins;
                for (size_t t = 0; t < nodes[nn].slots.size(); ++t) {
                    const NodeSlot& sl = nodes[nn].slots[t];
                    int gp = node_begin[nn] + static_cast<int>(t);
                    switch (sl.kind) {
                        case NodeSlot::LeafIn:
                            ins.push_back({sl.psi, leaf_vectors[static_cast<size_t>(sl.ref - 1)]});
                            break;
                        case NodeSlot::KappaIn:
                            ins.push_back({sl.psi, basis_vec(alg, alg.unit)});
                            break;
                        case NodeSlot::EdgeEnd:
                            ins.push_back({sl.psi, basis_vec(alg, slot_basis[static_cast<size_t>(gp)])});
                            break;
                    }
                }
                term *= eng.correlator(nodes[nn].genus, ins);
            }
            total += term;
            return;
        }
        for (const auto& ent : *edge_entries[e]) {
            choice[e] = &ent;
            rec(e + 1, coef * ent.c);
        }
    };
    rec(0, Rational(1));
    return total;
}

}  // namespace

Rational evaluate_white(const WhiteExpression& expr, CorrelatorEngine& eng,
                        const std::vector<Vec>& leaf_vectors) {
    const Algebra& alg = eng.algebra();
    if (!alg.eta_ok) throw std::invalid_argument("evaluate_white needs nondegenerate eta");
    if (!alg.gplus_ok) throw std::invalid_argument("evaluate_white needs derivable G+");
    std::vector<BivEntry> pi0_entries = bivector_entries(bivector_of(alg, alg.pi0));
    std::vector<const std::vector<BivEntry>*> per_edge(expr.edges.size(), &pi0_entries);
    Rational v = contract_nodes(eng, expr.nodes, expr.edges, per_edge, leaf_vectors);
    return expr.prefactor * v;
}

std::vector<std::pair<Rational, DecoratedDualGraph>> eliminate_white(const StableDualGraph& s) {
    validate_stratum(s);
    long aut_s = stable_graph_aut_order(s);
    int E = static_cast<int>(s.edges.size());
    std::vector<std::pair<Rational, DecoratedDualGraph>> out;
    std::vector<EdgeDecoration> dec(static_cast<size_t>(E), EdgeDecoration::Plain);
    long count = 1;
    for (int t = 0; t < E; ++t) count *= 3;
    for (long code = 0; code < count; ++code) {
        long c = code;
        int arrows = 0;
        for (int t = 0; t < E; ++t) {
            int d = static_cast<int>(c % 3);
            c /= 3;
            dec[static_cast<size_t>(t)] = static_cast<EdgeDecoration>(d);
            if (d != 0) ++arrows;
        }
        DecoratedDualGraph dg;
        dg.base = s;
        dg.dec = dec;
        dg.arrows = arrows;
        // aut of the decorated graph: fold the decoration into half-edge keys
        std::vector<HeavyEdge> dedges;
        for (int t = 0; t < E; ++t) {
            const auto& e = s.edges[static_cast<size_t>(t)];
            int ca = 0, cb = 0;
            if (dec[static_cast<size_t>(t)] == EdgeDecoration::ArrowToA) ca = 1, cb = 2;
            if (dec[static_cast<size_t>(t)] == EdgeDecoration::ArrowToB) ca = 2, cb = 1;
            dedges.push_back({e.a, e.b, e.psi_a * 4 + ca, e.psi_b * 4 + cb});
        }
        std::vector<std::string> keys;
        for (const auto& v : s.vertices) keys.push_back(vertex_key(v));
        dg.aut = multigraph_aut_order(keys, dedges, as_leaves(s.leaves));
        Rational coef = rat((arrows % 2) ? -1 : 1, aut_s);
        out.emplace_back(coef, std::move(dg));
    }
    return out;
}

Rational evaluate_decorated(const DecoratedDualGraph& d, CorrelatorEngine& eng,
                            const std::vector<Vec>& leaf_vectors) {
    const Algebra& alg = eng.algebra();
    if (!alg.eta_ok) throw std::invalid_argument("needs nondegenerate eta");
    if (!alg.gplus_ok) throw std::invalid_argument("needs derivable G+");
    WhiteExpression expr = translate_stratum(d.base);
    // arrows add one psi at the pointed half-edge
    for (auto& node : expr.nodes)
        for (auto& sl : node.slots)
            if (sl.kind == NodeSlot::EdgeEnd) {
                EdgeDecoration ed = d.dec[static_cast<size_t>(sl.ref)];
                if ((ed == EdgeDecoration::ArrowToA && sl.side == 0) ||
                    (ed == EdgeDecoration::ArrowToB && sl.side == 1))
                    sl.psi += 1;
            }
    std::vector<BivEntry> id_entries = bivector_entries(Bivector{alg.eta_inv});
    Operator gg{mat_mul(alg.Gm.m, alg.Gp.m), Parity::even};
    std::vector<BivEntry> heavy_entries = bivector_entries(bivector_of(alg, gg));
    std::vector<const std::vector<BivEntry>*> per_edge;
    for (size_t e = 0; e < expr.edges.size(); ++e)
        per_edge.push_back(d.dec[e] == EdgeDecoration::Plain ? &id_entries : &heavy_entries);
    return contract_nodes(eng, expr.nodes, expr.edges, per_edge, leaf_vectors);
}

Rational evaluate_eliminated(const StableDualGraph& s, CorrelatorEngine& eng,
                             const std::vector<Vec>& leaf_vectors) {
    Rational total = 0;
    for (const auto& [coef, dg] : eliminate_white(s))
        total += coef * evaluate_decorated(dg, eng, leaf_vectors);
    return total;
}

IdentityReport verify_relation(const Relation& rel, CorrelatorEngine& eng,
                               const std::vector<Vec>& leaf_vectors) {
    if (static_cast<int>(leaf_vectors.size()) != rel.n)
        throw std::invalid_argument("relation needs " + std::to_string(rel.n) + " leaf vectors");
    int dim = -1;
    for (const auto& term : rel.terms) {
        validate_stratum(term.graph);
        if (static_cast<int>(term.graph.leaves.size()) != rel.n)
            throw std::invalid_argument("relation term with wrong leaf count");
        int d = stratum_dimension(term.graph);
        if (dim == -1) dim = d;
        if (d != dim) throw std::invalid_argument("relation terms of mixed dimension");
    }
    Rational white = 0, elim = 0;
    for (const auto& term : rel.terms) {
        white += term.coeff * evaluate_white(translate_stratum(term.graph), eng, leaf_vectors);
        elim += term.coeff * evaluate_eliminated(term.graph, eng, leaf_vectors);
    }
    IdentityReport rep;
    rep.identity = "relation:" + rel.name;
    std::ostringstream os;
    os << "g=" << rel.genus << " n=" << rel.n;
    rep.params = os.str();
    rep.left = white;
    rep.right = elim;
    rep.residual = white;
    rep.pass = (white == 0 && elim == 0);
    return rep;
}

Rational coefficient_of_final_graph(const StableDualGraph& s, const Graph& y) {
    int k = stratum_dimension(s);
    if (static_cast<int>(y.edges.size()) != k)
        throw std::invalid_argument("final graph must carry as many heavy edges as the stratum dimension");
    std::string y_key = canonical_key(y);
    Rational total = 0;

    for (const auto& [coef, dg] : eliminate_white(s)) {
        // per-node slot powers, arrows included
        WhiteExpression expr = translate_stratum(dg.base);
        for (auto& node : expr.nodes)
            for (auto& sl : node.slots)
                if (sl.kind == NodeSlot::EdgeEnd) {
                    EdgeDecoration ed = dg.dec[static_cast<size_t>(sl.ref)];
                    if ((ed == EdgeDecoration::ArrowToA && sl.side == 0) ||
                        (ed == EdgeDecoration::ArrowToB && sl.side == 1))
                        sl.psi += 1;
                }
        bool dead = false;
        std::vector<std::vector<Graph>> node_graphs;
        for (const auto& node : expr.nodes) {
            if (2 * node.genus - 2 + static_cast<int>(node.slots.size()) <= 0) {
                dead = true;
                break;
            }
            std::vector<int> powers;
            for (const auto& sl : node.slots) powers.push_back(sl.psi);
            node_graphs.push_back(enumerate_graphs(node.genus, powers));
            if (node_graphs.back().empty()) {
                dead = true;
                break;
            }
        }
        if (dead) continue;

        // iterate over combinations of per-node graphs
        std::vector<size_t> pick(node_graphs.size(), 0);
        while (true) {
            Rational weight = coef;
            for (size_t nn = 0; nn < node_graphs.size(); ++nn) {
                const Graph& gr = node_graphs[nn][pick[nn]];
                weight *= weight_V(gr) * weight_P(gr);
            }
            if (weight != 0) {
                // assemble the composite graph
                std::vector<int> offset;
                int nv = 0;
                for (size_t nn = 0; nn < node_graphs.size(); ++nn) {
                    offset.push_back(nv);
                    nv += node_graphs[nn][pick[nn]].num_vertices();
                }
                std::vector<int> root(static_cast<size_t>(nv));
                std::iota(root.begin(), root.end(), 0);
                std::function<int(int)> find = [&](int x) {
                    return root[static_cast<size_t>(x)] == x ? x : root[static_cast<size_t>(x)] = find(root[static_cast<size_t>(x)]);
                };
                // inner leaf label t+1 of node nn <-> slot t
                auto slot_vertex = [&](int node, int slot) {
                    const Graph& gr = node_graphs[static_cast<size_t>(node)][pick[static_cast<size_t>(node)]];
                    for (const auto& l : gr.leaves)
                        if (l.label == slot + 1) return offset[static_cast<size_t>(node)] + l.vertex;
                    throw std::logic_error("inner leaf not found");
                };
                auto end_slot = [&](int edge, int side) {
                    for (size_t nn = 0; nn < expr.nodes.size(); ++nn)
                        for (size_t t = 0; t < expr.nodes[nn].slots.size(); ++t) {
                            const NodeSlot& sl = expr.nodes[nn].slots[t];
                            if (sl.kind == NodeSlot::EdgeEnd && sl.ref == edge && sl.side == side)
                                return std::make_pair(static_cast<int>(nn), static_cast<int>(t));
                        }
                    throw std::logic_error("edge end not found");
                };
                std::vector<int> extra_genus(static_cast<size_t>(nv), 0);
                std::vector<HeavyEdge> comp_edges;
                for (size_t e = 0; e < expr.edges.size(); ++e) {
                    auto [na, ta] = end_slot(static_cast<int>(e), 0);
                    auto [nb, tb] = end_slot(static_cast<int>(e), 1);
                    int va = slot_vertex(na, ta), vb = slot_vertex(nb, tb);
                    if (dg.dec[e] == EdgeDecoration::Plain) {
                        int ra = find(va), rb = find(vb);
                        if (ra == rb)
                            extra_genus[static_cast<size_t>(ra)] += 1;  // empty loop
                        else
                            root[static_cast<size_t>(ra)] = rb;
                    } else {
                        comp_edges.push_back({va, vb, 0, 0});
                    }
                }
                // inner heavy edges
                for (size_t nn = 0; nn < node_graphs.size(); ++nn) {
                    const Graph& gr = node_graphs[nn][pick[nn]];
                    for (const auto& e : gr.edges)
                        comp_edges.push_back({offset[nn] + e.a, offset[nn] + e.b, 0, 0});
                }
                // compact merged vertices
                std::vector<int> genus_acc(static_cast<size_t>(nv), 0);
                for (size_t nn = 0; nn < node_graphs.size(); ++nn) {
                    const Graph& gr = node_graphs[nn][pick[nn]];
                    for (int v = 0; v < gr.num_vertices(); ++v)
                        genus_acc[static_cast<size_t>(find(offset[nn] + v))] += gr.genus[static_cast<size_t>(v)];
                }
                for (int v = 0; v < nv; ++v)
                    if (find(v) != v) {
                        genus_acc[static_cast<size_t>(find(v))] += extra_genus[static_cast<size_t>(v)];
                        extra_genus[static_cast<size_t>(v)] = 0;
                    }
                std::vector<int> compact(static_cast<size_t>(nv), -1);
                Graph comp;
                for (int v = 0; v < nv; ++v)
                    if (find(v) == v) {
                        compact[static_cast<size_t>(v)] = comp.num_vertices();
                        comp.genus.push_back(genus_acc[static_cast<size_t>(v)] + extra_genus[static_cast<size_t>(v)]);
                    }
                for (auto& e : comp_edges)
                    comp.edges.push_back({compact[static_cast<size_t>(find(e.a))], compact[static_cast<size_t>(find(e.b))], 0, 0});
                // original leaves (psi stripped), kappa slots dropped
                for (size_t nn = 0; nn < expr.nodes.size(); ++nn)
                    for (size_t t = 0; t < expr.nodes[nn].slots.size(); ++t) {
                        const NodeSlot& sl = expr.nodes[nn].slots[t];
                        if (sl.kind != NodeSlot::LeafIn) continue;
                        int v = slot_vertex(static_cast<int>(nn), static_cast<int>(t));
                        comp.leaves.push_back({compact[static_cast<size_t>(find(v))], 0, sl.ref});
                    }
                if (canonical_key(comp) == y_key) total += weight;
            }
            // advance
            size_t i = 0;
            for (; i < pick.size(); ++i) {
                if (++pick[i] < node_graphs[i].size()) break;
                pick[i] = 0;
            }
            if (i == pick.size()) break;
        }
    }
    return total;
}

std::vector<Relation> builtin_relations() {
    auto boundary = [](std::vector<int> left, std::vector<int> right) {
        StableDualGraph s;
        s.vertices = {{0, {}}, {0, {}}};
        s.edges = {{0, 1, 0, 0}};
        for (int l : left) s.leaves.push_back({0, 0, l, -1});
        for (int r : right) s.leaves.push_back({1, 0, r, -1});
        return s;
    };
    std::vector<Relation> rels;
    {
        Relation r;
        r.name = "wdvv-0-4";
        r.genus = 0;
        r.n = 4;
        r.terms.push_back({Rational(1), boundary({1, 2}, {3, 4})});
        r.terms.push_back({Rational(-1), boundary({1, 3}, {2, 4})});
        rels.push_back(std::move(r));
    }
    {
        Relation r;
        r.name = "trr-0-4";
        r.genus = 0;
        r.n = 4;
        StableDualGraph psi1;
        psi1.vertices = {{0, {}}};
        psi1.leaves = {{0, 1, 1, -1}, {0, 0, 2, -1}, {0, 0, 3, -1}, {0, 0, 4, -1}};
        r.terms.push_back({Rational(1), psi1});
        r.terms.push_back({Rational(-1), boundary({1, 2}, {3, 4})});
        rels.push_back(std::move(r));
    }
    {
        Relation r;
        r.name = "trr-1-1";
        r.genus = 1;
        r.n = 1;
        StableDualGraph psi1;
        psi1.vertices = {{1, {}}};
        psi1.leaves = {{0, 1, 1, -1}};
        StableDualGraph irr;
        irr.vertices = {{0, {}}};
        irr.edges = {{0, 0, 0, 0}};
        irr.leaves = {{0, 0, 1, -1}};
        r.terms.push_back({Rational(1), psi1});
        r.terms.push_back({rat(-1, 12), irr});
        rels.push_back(std::move(r));
    }
    {
        // WDVV pulled back along the map forgetting leaf 5.
        Relation r;
        r.name = "wdvv-0-5-pullback";
        r.genus = 0;
        r.n = 5;
        r.terms.push_back({Rational(1), boundary({1, 2, 5}, {3, 4})});
        r.terms.push_back({Rational(1), boundary({1, 2}, {3, 4, 5})});
        r.terms.push_back({Rational(-1), boundary({1, 3, 5}, {2, 4})});
        r.terms.push_back({Rational(-1), boundary({1, 3}, {2, 4, 5})});
        rels.push_back(std::move(r));
    }
    return rels;
}

using nlohmann::json;

StableDualGraph stratum_from_json(const json& j) {
    StableDualGraph s;
    for (const auto& v : j.at("vertices")) {
        DualVertex dv;
        dv.genus = v.at("genus").get<int>();
        if (v.contains("kappa"))
            for (const auto& k : v.at("kappa")) dv.kappa.push_back(k.get<int>());
        s.vertices.push_back(std::move(dv));
    }
    if (j.contains("edges"))
        for (const auto& e : j.at("edges"))
            s.edges.push_back({e.at("a").get<int>(), e.at("b").get<int>(), e.value("psi_a", 0),
                               e.value("psi_b", 0)});
    if (j.contains("leaves"))
        for (const auto& l : j.at("leaves"))
            s.leaves.push_back({l.at("vertex").get<int>(), l.value("psi", 0), l.at("label").get<int>(),
                                l.value("field", -1)});
    validate_stratum(s);
    return s;
}

json stratum_to_json(const StableDualGraph& s) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : s.vertices) {
        json jv;
        jv["genus"] = v.genus;
        if (!v.kappa.empty()) jv["kappa"] = v.kappa;
        j["vertices"].push_back(jv);
    }
    j["edges"] = json::array();
    for (const auto& e : s.edges)
        j["edges"].push_back(json{{"a", e.a}, {"b", e.b}, {"psi_a", e.psi_a}, {"psi_b", e.psi_b}});
    j["leaves"] = json::array();
    for (const auto& l : s.leaves) {
        json jl{{"vertex", l.vertex}, {"psi", l.psi}, {"label", l.label}};
        if (l.field >= 0) jl["field"] = l.field;
        j["leaves"].push_back(jl);
    }
    return j;
}

Relation relation_from_json(const json& j) {
    Relation r;
    r.name = j.value("name", "relation");
    r.genus = j.at("genus").get<int>();
    r.n = j.at("n").get<int>();
    for (const auto& t : j.at("terms"))
        r.terms.push_back({parse_rational(t.at("coeff").get<std::string>()),
                           stratum_from_json(t.at("graph"))});
    return r;
}

json relation_to_json(const Relation& r) {
    json j;
    j["name"] = r.name;
    j["genus"] = r.genus;
    j["n"] = r.n;
    j["terms"] = json::array();
    for (const auto& t : r.terms)
        j["terms"].push_back(json{{"coeff", rational_str(t.coeff)}, {"graph", stratum_to_json(t.graph)}});
    return j;
}

}  // namespace hft
