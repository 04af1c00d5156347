#pragma once

#include <string>
#include <vector>

#include "hodgeft/algebra.hpp"

namespace hft {

struct HeavyEdge {
    int a = 0, b = 0;        // endpoint vertices, unordered; a == b is a loop
    int psi_a = 0, psi_b = 0;  // psi powers on the two half-edges
};

struct Leaf {
    int vertex = 0;
    int psi = 0;
    int label = 0;  // 1..n, distinct
};

// A correlator graph in the loop-deleted normal form: empty loops are stored
// as the vertex genus, heavy edges explicitly.
struct Graph {
    std::vector<int> genus;  // per vertex
    std::vector<HeavyEdge> edges;
    std::vector<Leaf> leaves;

    int num_vertices() const { return static_cast<int>(genus.size()); }
};

bool graph_connected(const Graph& g);
// sum of vertex genera + first Betti number of the heavy multigraph.
int graph_total_genus(const Graph& g);

// Canonical encoding; equal strings iff isomorphic (vertex relabelings
// preserving genera and labeled leaves).
std::string canonical_key(const Graph& g);

// Order of the automorphism group of the genus-labeled, loop-deleted graph:
// vertex permutations preserving genera and leaf attachments, combined with
// matchings of parallel edges and flips of loops that preserve half-edge
// psi powers.
long automorphism_order(const Graph& g);

// All isomorphism classes of graphs contributing to the genus-g correlator
// with the given leaf psi powers (leaf i gets label i+1). Exactly
// 3g-3+n-sum(psi) heavy edges; per-vertex dimension and stability hold; at
// most one empty loop per vertex unless the graph is the single-vertex,
// zero-edge one. Throws on unstable (g, n).
std::vector<Graph> enumerate_graphs(int g, const std::vector<int>& leaf_psi);

// prod_v 2^{g_v} g_v! / |aut(with loops)| = 1 / automorphism_order(g).
Rational weight_V(const Graph& g);
// prod_v <tau over leaf and half-edge psi powers at v>_{g_v}.
Rational weight_P(const Graph& g);

// One slot of a vertex form, in contraction order.
struct Slot {
    enum Kind { LoopLeg, EdgeLeg, LeafIn } kind;
    int vertex;
    int index;  // loop number / edge index / leaf label
    int leg;    // 0 or 1 for loop and edge legs
};

// Deterministic contraction layout. The graded (Koszul) contraction absorbs
// the cycle twist, so cycle_edges is bookkeeping: cutting those heavy edges
// (plus every implicit empty loop) turns the graph into a tree.
struct ContractionPlan {
    std::vector<Slot> slots;             // grouped by vertex, ascending
    std::vector<int> slot_of_input;      // input position -> slot position
    std::vector<int> cycle_edges;        // non-tree heavy edge indices
    std::vector<int> vertex_slot_begin;  // first slot of each vertex
};

ContractionPlan build_plan(const Graph& g);

// Signed tensor contraction T(Gamma): per-vertex forms (x_1,...,x_d) ->
// integral(x_1 ... x_d), [G-G+] on heavy edges, the eta copairing on the
// genus-implied empty loops, leaf vectors on leaves (leaf_vectors[i] is the
// vector for label i+1). Koszul signs accumulate at every transposition.
// Requires parity-homogeneous leaf vectors and a derivable G+.
Rational contract_T(const Algebra& alg, const Graph& g, const std::vector<Vec>& leaf_vectors);

// Koszul sign of rearranging graded symbols: input i sits at slot_pos[i];
// inverted pairs of odd symbols contribute -1.
int koszul_arrangement_sign(const std::vector<Parity>& input_parities,
                            const std::vector<int>& slot_pos);

// Nonzero entries of a bivector, for sparse contraction loops.
struct BivEntry {
    int i, j;
    Rational c;
};
std::vector<BivEntry> bivector_entries(const Bivector& b);

// Automorphism count for any decorated multigraph with string vertex keys
// and labeled leaves (used for stable dual graphs too).
long multigraph_aut_order(const std::vector<std::string>& vertex_keys,
                          const std::vector<HeavyEdge>& edges, const std::vector<Leaf>& leaves);

}  // namespace hft
