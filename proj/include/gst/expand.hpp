#pragma once

#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "gst/graph.hpp"
#include "gst/keyword_dsu.hpp"
#include "gst/spatial_order.hpp"
#include "gst/stats.hpp"
#include "gst/truss.hpp"

namespace gst {

/// Working state of the expanding stage: the radius-bounded subgraph ingested
/// so far, one keyword union-find over all of it, a second one over the
/// maintained truss edges, and the admitted edge set itself.
struct ExpandState {
    explicit ExpandState(const QueryContext& ctx);

    const QueryContext* ctx;
    AdjacencyList h_adj;       // adjacency of the current radius subgraph
    std::vector<char> in_h;
    KeywordDSU uf;             // components of the radius subgraph
    KeywordDSU tuf;            // maintained truss sets
    std::unordered_set<std::uint64_t> truss_edges;
    std::uint64_t edge_count = 0;
    std::uint64_t vertex_count = 0;

    // When set, the truss check runs on the subgraph induced by endpoints of
    // not-yet-admitted edges only. The default additionally pulls in triangle
    // apexes of those edges and pins admitted edges during the peel, which
    // keeps the incremental check exactly equivalent to a from-scratch one.
    bool strict_tp = false;

    // instrumentation for the last round
    std::vector<VertexId> last_tp_vertices;
    std::uint64_t last_tp_edges = 0;
    std::uint64_t last_satisfied_vertices = 0;

    // scratch
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    AdjacencyList tp_adj_;
};

/// One expansion round: ingest the edge slice, rebuild the truss-potential
/// subgraph over the satisfied components, peel it at the query trussness,
/// union the surviving edges into the truss sets, and report a member set
/// meeting the keyword minimums when one exists.
std::optional<Group> expand_step(ExpandState& s, std::span<const SortedEdge> slice);

/// The whole expanding stage: start at the lower-bound radius and grow the
/// edge count by the query's growth factor each round until a round reports
/// a candidate or the array is exhausted.
std::optional<Group> run_expanding(SortedEdgeArray& a, const QueryContext& ctx,
                                   QueryStats& stats, bool strict_tp = false);

}  // namespace gst
