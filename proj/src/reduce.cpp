#include "gst/reduce.hpp"

#include <algorithm>
#include <cmath>

#include "gst/errors.hpp"

namespace gst {

namespace {

// Current edges of the component holding `members`, copied out of the state.
Group snapshot_group(const KeywordSpanningForest::TreeView& tree, const TrussState& state) {
    Group g;
    g.vertices = tree.members;
    g.dist = std::sqrt(tree.max_sqdist);
    for (VertexId v : tree.members) {
        if (!state.contains(v)) continue;
        for (VertexId w : state.neighbors(v))
            if (v < w) g.edges.emplace_back(v, w);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

}  // namespace

Group run_reducing(const Group& candidate, const QueryContext& ctx, QueryStats& stats) {
    const Query& q = ctx.query;
    if (candidate.vertices.empty() || candidate.edges.empty())
        throw InvalidCandidate("empty candidate");

    // the candidate's edges must already form a truss at the query trussness
    {
        std::unordered_map<VertexId, std::vector<VertexId>> adj;
        for (const Edge& e : candidate.edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        for (auto& [v, row] : adj) std::sort(row.begin(), row.end());
        for (VertexId v : candidate.vertices)
            if (!adj.count(v)) throw InvalidCandidate("vertex without any candidate edge");
        for (const Edge& e : candidate.edges) {
            const auto& a = adj.at(e.u);
            const auto& b = adj.at(e.v);
            int sup = 0;
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] == b[j]) ++sup, ++i, ++j;
                else if (a[i] < b[j]) ++i;
                else ++j;
            }
            if (sup < q.trussness - 2)
                throw InvalidCandidate("edge below the required support");
        }
    }

    TrussState state(candidate.edges, q.trussness);
    KeywordSpanningForest forest(candidate, ctx);
    for (const auto& comp : forest.take_pruned_components()) state.remove_component(comp);
    if (forest.tree_count() == 0)
        throw InvalidCandidate("no component meets the keyword minimums");

    stats.forest_level_cap = forest.level_cap();
    const std::size_t e0 = candidate.edges.size();
    const std::size_t v0 = candidate.vertices.size();
    std::uint32_t log_v = 0;
    while ((std::size_t{1} << log_v) < v0) ++log_v;
    if (log_v == 0) log_v = 1;
    stats.forest_op_budget = 8ull * e0 * log_v * log_v;

    auto best = forest.best_tree();
    Group snapshot = snapshot_group(*best, state);

    // farthest first; ties by higher id so the order is total
    std::vector<VertexId> order = candidate.vertices;
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (ctx.sqdist[a] != ctx.sqdist[b]) return ctx.sqdist[a] > ctx.sqdist[b];
        return a > b;
    });

    for (VertexId u : order) {
        if (!state.contains(u)) continue;
        bool completed = state.delete_vertex(u, [&](const Edge& e) {
            ++stats.reduce_edges_deleted;
            bool ok = forest.delete_edge(e.u, e.v);
            for (const auto& comp : forest.take_pruned_components())
                state.remove_component(comp);
            for (VertexId x : {e.u, e.v}) {
                if (state.contains(x) && state.degree(x) == 0) {
                    state.drop_vertex(x);
                    if (forest.has_vertex(x)) forest.remove_isolated_vertex(x);
                }
            }
            return ok;
        });
        ++stats.reduce_vertices_deleted;
        if (!completed) break;  // no satisfying component anywhere: keep the snapshot
        if (state.contains(u)) {
            state.drop_vertex(u);
            if (forest.has_vertex(u)) forest.remove_isolated_vertex(u);
        }
        if (forest.tree_count() == 0) break;
        best = forest.best_tree();
        if (!best) break;
        snapshot = snapshot_group(*best, state);
    }

    stats.forest_cut_ops = forest.cut_ops();
    stats.forest_link_ops = forest.link_ops();
    stats.forest_max_level = forest.max_level_seen();
    return snapshot;
}

}  // namespace gst
