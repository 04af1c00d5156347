#pragma once

#include <string>
#include <vector>

#include "hodgeft/correlator.hpp"

#include <nlohmann/json_fwd.hpp>

namespace hft {

struct DualVertex {
    int genus = 0;
    std::vector<int> kappa;  // multi-index (k_1,...,k_l), one class per vertex
};

struct DualEdge {
    int a = 0, b = 0;
    int psi_a = 0, psi_b = 0;
};

struct DualLeaf {
    int vertex = 0;
    int psi = 0;
    int label = 0;   // 1..n, distinct
    int field = -1;  // optional H0 basis index; -1 when assigned at run time
};

// A psi-kappa stratum descriptor.
struct StableDualGraph {
    std::vector<DualVertex> vertices;
    std::vector<DualEdge> edges;
    std::vector<DualLeaf> leaves;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
};

// Automorphisms preserve genera, kappa multisets, labeled leaves and
// half-edge psi powers; parallel edges permute, equal-psi loops flip.
long stable_graph_aut_order(const StableDualGraph& s);

// Complex dimension of the stratum.
int stratum_dimension(const StableDualGraph& s);

// Basic shape validation (index ranges, per-vertex stability, labels).
void validate_stratum(const StableDualGraph& s);

// One correlator node per stratum vertex. Slot order: leaves by label,
// kappa insertions, then edge ends by edge index (side a before side b).
struct NodeSlot {
    enum Kind { LeafIn, KappaIn, EdgeEnd } kind;
    int psi = 0;
    int ref = 0;   // leaf label / kappa position / edge index
    int side = 0;  // 0 = a, 1 = b (edge ends)
};

struct WhiteNode {
    int genus = 0;
    std::vector<NodeSlot> slots;
};

// Correlator nodes joined by white ([Pi0]) edges, with the stack prefactor
// 1/|aut| of the source stratum.
struct WhiteExpression {
    Rational prefactor;
    std::vector<WhiteNode> nodes;
    std::vector<DualEdge> edges;     // same indexing as the source graph
    std::vector<int> cycle_edges;    // non-forest edges (the graded contraction absorbs the twist)
};

WhiteExpression translate_stratum(const StableDualGraph& s);

// Exact value of the white expression: node correlators contracted across
// white edges with the bivector of Pi0; leaf_vectors[i] feeds label i+1.
// Zero if any node is unstable.
Rational evaluate_white(const WhiteExpression& expr, CorrelatorEngine& eng,
                        const std::vector<Vec>& leaf_vectors);

enum class EdgeDecoration { Plain, ArrowToA, ArrowToB };

// A stratum with each edge kept, or replaced by an arrow adding one psi at
// the pointed half-edge. sign = (-1)^{#arrows}; aut preserves decorations.
struct DecoratedDualGraph {
    StableDualGraph base;
    std::vector<EdgeDecoration> dec;
    int arrows = 0;
    long aut = 1;  // |aut| of the decorated graph
};

// The 3^{#edges} decorations. The attached coefficient (-1)^{arr}/|aut(S)|
// makes the unmerged sum match evaluate_white; merging isomorphic
// decorations would re-weight each class by 1/aut(decorated).
std::vector<std::pair<Rational, DecoratedDualGraph>> eliminate_white(const StableDualGraph& s);

// Evaluates one decorated term: plain edges contract with the eta copairing,
// arrows with [G-G+] and the extra psi at the pointed end.
Rational evaluate_decorated(const DecoratedDualGraph& d, CorrelatorEngine& eng,
                            const std::vector<Vec>& leaf_vectors);

// Sum of all decorated terms with their coefficients.
Rational evaluate_eliminated(const StableDualGraph& s, CorrelatorEngine& eng,
                             const std::vector<Vec>& leaf_vectors);

struct RelationTerm {
    Rational coeff;
    StableDualGraph graph;
};

// A vanishing linear combination of psi-kappa strata in fixed ambient (g,n).
struct Relation {
    std::string name;
    int genus = 0;
    int n = 0;
    std::vector<RelationTerm> terms;
};

// Evaluates the relation on one leaf assignment through both routes (white
// and eliminated); passes iff both vanish and agree.
IdentityReport verify_relation(const Relation& rel, CorrelatorEngine& eng,
                               const std::vector<Vec>& leaf_vectors);

// Coefficient with which the final graph y appears after white-edge
// elimination, per-node graph expansion (V*P weights), empty-edge
// contraction and kappa-leaf removal. Algebra-independent.
// Requires y to carry stratum_dimension(s) heavy edges.
Rational coefficient_of_final_graph(const StableDualGraph& s, const Graph& y);

// Shipped relation catalog: WDVV on Mbar_{0,4}, genus-0 TRR, genus-1 TRR,
// and WDVV pulled back to Mbar_{0,5}.
std::vector<Relation> builtin_relations();

StableDualGraph stratum_from_json(const nlohmann::json& j);
nlohmann::json stratum_to_json(const StableDualGraph& s);
Relation relation_from_json(const nlohmann::json& j);
nlohmann::json relation_to_json(const Relation& r);

}  // namespace hft
