#pragma once

#include "gst/io.hpp"
#include "gst/graph.hpp"

namespace gst {

/// Full search: pre-pruning, expanding, reducing. Returns the optimum group
/// or nothing, always with instrumentation attached.
SearchResult run_query(const GeoSocialGraph& g, const Query& q);

}  // namespace gst
