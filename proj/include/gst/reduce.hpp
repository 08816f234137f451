#pragma once

#include "gst/forest.hpp"
#include "gst/graph.hpp"
#include "gst/stats.hpp"
#include "gst/truss.hpp"

namespace gst {

/// The reducing stage: peel vertices off the candidate farthest-first under
/// decremental truss maintenance, tracking connectivity and keyword counts
/// per surviving component through the spanning forest. Returns the last
/// surviving satisfying component, which is the optimum inside the
/// candidate. Throws InvalidCandidate when no component of the input meets
/// the constraints.
Group run_reducing(const Group& candidate, const QueryContext& ctx, QueryStats& stats);

}  // namespace gst
