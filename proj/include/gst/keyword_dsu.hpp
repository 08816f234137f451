#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "gst/graph.hpp"
#include "gst/spatial_order.hpp"
#include "gst/types.hpp"

namespace gst {

/// Union-find over vertices with per-set keyword frequency counters: find is
/// path-compressed, union by rank, counters added elementwise on merge.
/// Member lists are kept as mergeable linked lists so a satisfied set can be
/// enumerated without touching the graph.
class KeywordDSU {
  public:
    KeywordDSU(std::size_t universe, std::size_t keyword_slots, int min_per_keyword);

    /// Singleton set; phi_idx < 0 means the vertex carries none of the query
    /// keywords and contributes zero counts. Throws DoubleInsert.
    void insert_vertex(VertexId v, int phi_idx);

    /// Merges the two sets if distinct; returns the merged root when the set
    /// became satisfied by this union. Throws NotInserted.
    std::optional<VertexId> union_edge(VertexId u, VertexId v);

    bool contains(VertexId v) const { return v < parent_.size() && parent_[v] != kAbsent; }
    VertexId find(VertexId v);
    bool satisfied(VertexId root) const { return satisfied_[root]; }
    std::span<const std::uint32_t> counts(VertexId root) const;

    const std::set<VertexId>& satisfied_roots() const { return satisfied_roots_; }
    std::size_t satisfied_count() const { return satisfied_roots_.size(); }
    std::vector<VertexId> members(VertexId root) const;
    std::vector<std::pair<VertexId, std::vector<VertexId>>> satisfied_sets() const;
    std::size_t set_size(VertexId root) const { return size_[root]; }
    std::uint64_t find_steps() const { return find_steps_; }  // parent hops, for cost checks

  private:
    static constexpr VertexId kAbsent = static_cast<VertexId>(-1);

    std::size_t slots_;
    int rho_;
    std::vector<VertexId> parent_;
    std::vector<std::uint32_t> rank_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint32_t> counts_;  // root-indexed, slots_ wide
    std::vector<char> satisfied_;
    std::set<VertexId> satisfied_roots_;
    // intrusive member lists: head/tail/next per root
    std::vector<VertexId> head_, tail_, next_;
    std::uint64_t find_steps_ = 0;

    bool counts_satisfy(VertexId root) const;
};

struct LowerBoundRange {
    double sqdist = 0.0;                // distance of the edge that completed it
    std::vector<VertexId> members;      // the first satisfied connected set
    std::vector<SortedEdge> consumed;   // adjacency material for H up to that radius
};

/// Scans edges in non-decreasing distance order, unioning endpoints, until a
/// connected set meets every keyword minimum. The resulting radius is a lower
/// bound on the optimum answer distance. Returns nothing when the whole
/// stream stays unsatisfied.
std::optional<LowerBoundRange> find_lower_bound_radius(const SortedEdgeArray& a,
                                                       const QueryContext& ctx);

}  // namespace gst
