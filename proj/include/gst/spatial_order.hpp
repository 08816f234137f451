#pragma once

#include <limits>
#include <span>
#include <vector>

#include "gst/graph.hpp"
#include "gst/truss.hpp"
#include "gst/types.hpp"

namespace gst {

// Edge distance is the max of the two endpoint distances to the query
// location; squared values are kept throughout, the ordering is identical.
struct SortedEdge {
    VertexId u = 0;  // u < v
    VertexId v = 0;
    double sqdist = 0.0;
};

/// Edges of the pre-pruned components in non-decreasing distance order, with
/// a forward-only cursor for monotone radius expansion. Ties are broken by
/// (min id, max id) so slices are deterministic.
class SortedEdgeArray {
  public:
    SortedEdgeArray() = default;

    /// Per-component sort, then a k-way merge into one array.
    static SortedEdgeArray build(const std::vector<TrussSubgraph>& components,
                                 const QueryContext& ctx);

    /// Edges with distance <= sqdist_limit not yielded before; advances the
    /// cursor. Throws NonMonotoneRadius when the limit regresses.
    std::span<const SortedEdge> edges_up_to(double sqdist_limit);

    /// Smallest realized edge distance d with >= target edges at distance
    /// <= d; the last distance when target exceeds the total edge count.
    double radius_for_target_edges(std::size_t target) const;

    std::span<const SortedEdge> all() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    std::size_t cursor() const { return cursor_; }
    bool exhausted() const { return cursor_ == edges_.size(); }
    double first_distance() const { return edges_.empty() ? -1.0 : edges_.front().sqdist; }

  private:
    std::vector<SortedEdge> edges_;
    std::size_t cursor_ = 0;
    double last_limit_ = -std::numeric_limits<double>::infinity();
};

}  // namespace gst
