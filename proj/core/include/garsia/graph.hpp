#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "garsia/numberfield.hpp"

namespace garsia {

/// The labelled transition graph on V_beta (or its depth-n truncation).
/// Vertex 0 is always the zero element; for each vertex x and label
/// eps in {-1,0,1} there is an edge to beta*x + eps when that value is in
/// the vertex set.
struct TransitionGraph {
    std::shared_ptr<const NumberFieldContext> ctx;
    std::vector<FieldElement> vertices;
    /// edges[v][eps+1] = target index, or -1 when beta*x + eps leaves the set.
    std::vector<std::array<std::int32_t, 3>> edges;
    /// Depth at which construction stopped (number of expansion stages run).
    long depth = 0;
    /// True when the vertex set is closed under the edge relation, i.e. the
    /// fixed point V_{beta,n} = V_{beta,n-1} was witnessed.
    bool complete = false;
    bool pruned = false;
    /// |V_{beta,k}| for k = 0..depth (cumulative sizes per stage).
    std::vector<std::size_t> level_sizes;

    std::size_t size() const { return vertices.size(); }
    int target(int v, int eps) const { return edges[v][eps + 1]; }
};

/// Breadth-first construction of V_{beta,n}: seeds {1,0,-1} (filtered by
/// membership), frontier expansion by x -> beta*x + eps. Stops at the fixed
/// point (complete graph) or at max_depth; throws BudgetError beyond
/// max_vertices.
TransitionGraph build_graph(std::shared_ptr<const NumberFieldContext> ctx, long max_depth,
                            std::size_t max_vertices);

/// Removes every vertex with no directed path to the zero vertex; indices
/// are reassigned preserving order, the zero vertex stays at 0.
TransitionGraph prune_graph(const TransitionGraph& g);

/// The pair (M0, M1) with entries in {p, 1-p}, derived from the graph edges:
///   (M0)_{i,j} = 1-p  if x_j = beta x_i - 1,   p  if x_j = beta x_i
///   (M1)_{i,j} = 1-p  if x_j = beta x_i,       p  if x_j = beta x_i + 1
struct MatrixPair {
    std::size_t dim = 0;
    mpq_class p, one_minus_p;
    std::vector<std::array<std::int32_t, 3>> edges;
    bool complete = false;  // copied from the source graph
    long depth = 0;

    struct RowEntry {
        std::int32_t col;
        const mpq_class* weight;
    };
    /// Fills out[0..1] with the nonzero entries of row i of M_digit;
    /// returns the entry count (0, 1 or 2).
    int row(int digit, int i, RowEntry out[2]) const;
};

MatrixPair build_matrices(const TransitionGraph& g, const mpq_class& p);

enum class GraphFormat { JSON, DOT };
std::string export_graph(const TransitionGraph& g, GraphFormat format);
/// Rebuilds a graph from its JSON export; the edge relation is re-verified
/// in exact arithmetic. If ctx is null a context is built from the stored
/// minimal polynomial at the given precision.
TransitionGraph import_graph(const std::string& json_text,
                             std::shared_ptr<const NumberFieldContext> ctx = nullptr,
                             mpfr_prec_t precision_bits = 128);

/// FNV-1a over the canonical JSON serialization.
std::string graph_hash(const TransitionGraph& g);

}  // namespace garsia
