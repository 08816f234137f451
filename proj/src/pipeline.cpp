#include "gst/pipeline.hpp"

#include <cassert>

#include "gst/errors.hpp"
#include "gst/expand.hpp"
#include "gst/reduce.hpp"
#include "gst/spatial_order.hpp"
#include "gst/truss.hpp"

namespace gst {

SearchResult run_query(const GeoSocialGraph& g, const Query& q) {
    SearchResult out;
    out.stats.graph_vertices = g.vertex_count();
    out.stats.graph_edges = g.edge_count();

    auto components = maximal_truss_components(g, q);
    out.stats.pruned_components = components.size();
    for (const auto& comp : components) {
        out.stats.pruned_vertices += comp.vertices.size();
        out.stats.pruned_edges += comp.edges.size();
    }
    if (components.empty()) return out;

    QueryContext ctx = QueryContext::make(g, q);
    SortedEdgeArray array = SortedEdgeArray::build(components, ctx);

    auto candidate = run_expanding(array, ctx, out.stats);
    if (!candidate) return out;

    Group result = run_reducing(*candidate, ctx, out.stats);
    assert(validate_group(result, q, g));
    out.group = std::move(result);
    return out;
}

}  // namespace gst
