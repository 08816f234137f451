#pragma once

#include <functional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "gst/graph.hpp"
#include "gst/types.hpp"

namespace gst {

// edge key -> number of triangles containing the edge
using SupportMap = std::unordered_map<std::uint64_t, std::int32_t>;

struct TrussSubgraph {
    std::vector<VertexId> vertices;  // sorted
    std::vector<Edge> edges;         // sorted
    int trussness = 2;
};

/// Triangle support for every edge of the subgraph described by `vertices`
/// and the sorted rows of `adj`. Rows must be closed over `vertices`.
SupportMap compute_support(const AdjacencyList& adj, std::span<const VertexId> vertices);

/// Maximal subgraph in which every edge closes >= c-2 triangles, peeled to a
/// fixpoint and split into connected components. Isolated vertices drop out.
std::vector<TrussSubgraph> extract_ctruss(const AdjacencyList& adj,
                                          std::span<const VertexId> vertices, int c);

/// Pre-pruning: components of the maximal c-truss of the whole graph that
/// also meet the per-keyword member minimums. The search runs inside these.
std::vector<TrussSubgraph> maximal_truss_components(const GeoSocialGraph& g, const Query& q);

/// Live c-truss edge set under vertex deletions. Deleting a vertex removes
/// its edges and cascades: any edge whose support drops below c-2 goes too,
/// with the removal callback fired once per edge in removal order.
class TrussState {
  public:
    TrussState(const std::vector<TrussSubgraph>& components, int c);
    TrussState(std::span<const Edge> edges, int c);

    using RemovalCallback = std::function<bool(const Edge&)>;  // false aborts the cascade

    /// Returns false when the callback aborted mid-cascade. Throws VertexAbsent.
    bool delete_vertex(VertexId u, const RemovalCallback& on_edge_removed);

    /// Wholesale removal of a whole connected component; no callbacks, no
    /// support updates (nothing outside the component shares a triangle).
    void remove_component(std::span<const VertexId> component);

    bool contains(VertexId v) const { return adj_.count(v) != 0; }
    std::size_t degree(VertexId v) const;
    const std::set<VertexId>& neighbors(VertexId v) const { return adj_.at(v); }
    void drop_vertex(VertexId v);  // requires degree 0

    std::size_t edge_count() const { return sup_.size(); }
    std::vector<Edge> edges() const;              // sorted snapshot
    std::vector<VertexId> live_vertices() const;  // degree > 0, sorted

    // fault injection hook for the verification harness: skips the support
    // cascade so deletions leave stale non-truss edges behind
    bool debug_skip_cascade = false;

  private:
    void add_edges(std::span<const Edge> edges);

    int c_;
    std::unordered_map<VertexId, std::set<VertexId>> adj_;
    SupportMap sup_;
};

}  // namespace gst
