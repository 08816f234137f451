#pragma once

#include <optional>
#include <span>

#include "gst/graph.hpp"
#include "gst/types.hpp"

namespace gst {

// Reference algorithms that find the exact answer with simple machinery.
// They share only the graph model and compute_support with the main
// pipeline, so they double as correctness oracles. `restrict_to` optionally
// confines the search to a vertex subset (the pre-pruned components); the
// answer is the same either way.

/// Adds vertices nearest-first and re-checks the induced subgraph from
/// scratch after every addition.
std::optional<Group> run_incremental(const GeoSocialGraph& g, const Query& q,
                                     std::span<const VertexId> restrict_to = {});

/// Starts from the maximal truss of the whole (restricted) graph and deletes
/// the farthest vertex until nothing satisfying survives.
std::optional<Group> run_decremental(const GeoSocialGraph& g, const Query& q,
                                     std::span<const VertexId> restrict_to = {});

/// Binary search over the sorted distinct vertex distances; each probe is a
/// from-scratch check of the radius-bounded subgraph. Range retrieval uses a
/// sorted distance array rather than a spatial index.
std::optional<Group> run_binary_search(const GeoSocialGraph& g, const Query& q,
                                       std::span<const VertexId> restrict_to = {});

/// Exhaustive oracle: checks every distinct vertex distance ascending and
/// returns the first radius whose bounded subgraph contains a valid group.
/// Refuses instances above the cap. Independent of all shared search code
/// except compute_support.
std::optional<Group> brute_force_optimum(const GeoSocialGraph& g, const Query& q,
                                         std::size_t cap = 64);

}  // namespace gst
