#include "gst/expand.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace gst {

ExpandState::ExpandState(const QueryContext& c)
    : ctx(&c),
      h_adj(c.graph->vertex_count()),
      in_h(c.graph->vertex_count(), 0),
      uf(c.graph->vertex_count(), c.query.keywords.size(), c.query.min_keyword_count),
      tuf(c.graph->vertex_count(), c.query.keywords.size(), c.query.min_keyword_count),
      mark_(c.graph->vertex_count(), 0),
      tp_adj_(c.graph->vertex_count()) {}

namespace {

// Peel the scanned subgraph to the fixpoint where every surviving edge closes
// >= c-2 triangles. Edges in `anchored` take part in support counting but are
// never removed; returns the non-anchored survivors.
std::vector<Edge> peel_new_edges(const AdjacencyList& adj, std::span<const VertexId> verts,
                                 int c, const std::unordered_set<std::uint64_t>& anchored) {
    SupportMap sup = compute_support(adj, verts);
    std::unordered_map<VertexId, std::set<VertexId>> live;
    for (VertexId u : verts)
        if (!adj[u].empty()) live.emplace(u, std::set<VertexId>(adj[u].begin(), adj[u].end()));

    const std::int32_t need = c - 2;
    std::deque<Edge> queue;
    std::unordered_set<std::uint64_t> queued;
    auto enqueue = [&](const Edge& e) {
        if (anchored.count(edge_key(e))) return;
        if (queued.insert(edge_key(e)).second) queue.push_back(e);
    };
    for (VertexId u : verts)
        for (VertexId v : adj[u])
            if (u < v && sup.at(edge_key(u, v)) < need) enqueue(Edge(u, v));

    while (!queue.empty()) {
        Edge e = queue.front();
        queue.pop_front();
        auto se = sup.find(edge_key(e));
        if (se == sup.end()) continue;
        auto& a = live.at(e.u);
        auto& b = live.at(e.v);
        const auto& small = a.size() <= b.size() ? a : b;
        const auto& big = a.size() <= b.size() ? b : a;
        std::vector<VertexId> common;
        for (VertexId w : small)
            if (w != e.u && w != e.v && big.count(w)) common.push_back(w);
        for (VertexId w : common) {
            for (Edge f : {Edge(e.u, w), Edge(e.v, w)}) {
                auto sf = sup.find(edge_key(f));
                if (sf != sup.end() && --sf->second < need) enqueue(f);
            }
        }
        a.erase(e.v);
        b.erase(e.u);
        sup.erase(se);
    }

    std::vector<Edge> out;
    for (VertexId u : verts) {
        auto lu = live.find(u);
        if (lu == live.end()) continue;
        for (VertexId v : lu->second)
            if (u < v && sup.count(edge_key(u, v)) && !anchored.count(edge_key(u, v)))
                out.emplace_back(u, v);
    }
    return out;
}

}  // namespace

std::optional<Group> expand_step(ExpandState& s, std::span<const SortedEdge> slice) {
    const QueryContext& ctx = *s.ctx;
    for (const SortedEdge& e : slice) {
        for (VertexId x : {e.u, e.v}) {
            if (!s.in_h[x]) {
                s.in_h[x] = 1;
                ++s.vertex_count;
                s.uf.insert_vertex(x, ctx.phi_index[x]);
            }
        }
        s.h_adj[e.u].push_back(e.v);
        s.h_adj[e.v].push_back(e.u);
        s.uf.union_edge(e.u, e.v);
        ++s.edge_count;
    }

    // edges of satisfied components that are not yet admitted
    auto sat = s.uf.satisfied_sets();
    std::vector<Edge> pending;
    s.last_satisfied_vertices = 0;
    for (const auto& [root, members] : sat) {
        s.last_satisfied_vertices += members.size();
        for (VertexId v : members)
            for (VertexId w : s.h_adj[v])
                if (v < w && !s.truss_edges.count(edge_key(v, w))) pending.emplace_back(v, w);
    }

    std::vector<VertexId> tp_vertices;
    if (!pending.empty()) {
        ++s.epoch_;
        auto touch = [&](VertexId v) {
            if (s.mark_[v] != s.epoch_) {
                s.mark_[v] = s.epoch_;
                tp_vertices.push_back(v);
            }
        };
        for (const Edge& e : pending) {
            touch(e.u);
            touch(e.v);
        }
        if (!s.strict_tp) {
            // pull in triangle apexes of the pending edges so every triangle
            // a pending edge participates in is visible to the peel
            std::unordered_set<VertexId> neighbor_set;
            for (const Edge& e : pending) {
                neighbor_set.clear();
                const auto& nu = s.h_adj[e.u];
                const auto& nv = s.h_adj[e.v];
                const auto& smaller = nu.size() <= nv.size() ? nu : nv;
                const auto& larger = nu.size() <= nv.size() ? nv : nu;
                neighbor_set.insert(smaller.begin(), smaller.end());
                for (VertexId w : larger)
                    if (w != e.u && w != e.v && neighbor_set.count(w)) touch(w);
            }
        }
        std::sort(tp_vertices.begin(), tp_vertices.end());

        // induced subgraph over the collected vertices
        std::uint64_t tp_edge_count = 0;
        for (VertexId v : tp_vertices) {
            auto& row = s.tp_adj_[v];
            for (VertexId w : s.h_adj[v])
                if (s.mark_[w] == s.epoch_) row.push_back(w);
            std::sort(row.begin(), row.end());
            tp_edge_count += row.size();
        }
        s.last_tp_edges = tp_edge_count / 2;

        std::vector<Edge> admitted;
        if (s.strict_tp) {
            for (const auto& comp : extract_ctruss(s.tp_adj_, tp_vertices, ctx.query.trussness))
                for (const Edge& e : comp.edges)
                    if (!s.truss_edges.count(edge_key(e))) admitted.push_back(e);
        } else {
            admitted = peel_new_edges(s.tp_adj_, tp_vertices, ctx.query.trussness,
                                      s.truss_edges);
        }
        for (VertexId v : tp_vertices) s.tp_adj_[v].clear();

        for (const Edge& e : admitted) {
            s.truss_edges.insert(edge_key(e));
            for (VertexId x : {e.u, e.v})
                if (!s.tuf.contains(x)) s.tuf.insert_vertex(x, ctx.phi_index[x]);
            s.tuf.union_edge(e.u, e.v);
        }
    } else {
        s.last_tp_edges = 0;
    }
    s.last_tp_vertices = std::move(tp_vertices);

    if (s.tuf.satisfied_count() == 0) return std::nullopt;

    // choose the satisfied truss set with the smallest max member distance
    std::optional<Group> best;
    double best_key = 0.0;
    for (const auto& [root, members] : s.tuf.satisfied_sets()) {
        double maxd = 0.0;
        for (VertexId v : members) maxd = std::max(maxd, ctx.sqdist[v]);
        if (!best || maxd < best_key) {
            Group g;
            g.vertices = members;
            std::sort(g.vertices.begin(), g.vertices.end());
            g.dist = std::sqrt(maxd);
            best = std::move(g);
            best_key = maxd;
        }
    }
    ++s.epoch_;
    for (VertexId v : best->vertices) s.mark_[v] = s.epoch_;
    for (VertexId v : best->vertices)
        for (VertexId w : s.h_adj[v])
            if (v < w && s.mark_[w] == s.epoch_ && s.truss_edges.count(edge_key(v, w)))
                best->edges.emplace_back(v, w);
    std::sort(best->edges.begin(), best->edges.end());
    return best;
}

namespace {

// Fallback when a reported member set fails full validation: re-extract the
// trusses of its induced subgraph and keep the best component that meets the
// keyword minimums on its own.
std::optional<Group> revalidate_candidate(ExpandState& s, const Group& cand);

// The candidate handed to the reducing stage is the union of every satisfied
// truss set: the optimum can sit inside any of them, and the reducer peels
// the union globally farthest-first.
std::optional<Group> assemble_candidate(ExpandState& s, QueryStats& stats) {
    const QueryContext& ctx = *s.ctx;
    Group out;
    for (const auto& [root, members] : s.tuf.satisfied_sets()) {
        Group part;
        part.vertices = members;
        std::sort(part.vertices.begin(), part.vertices.end());
        double maxd = 0.0;
        ++s.epoch_;
        for (VertexId v : part.vertices) {
            s.mark_[v] = s.epoch_;
            maxd = std::max(maxd, ctx.sqdist[v]);
        }
        for (VertexId v : part.vertices)
            for (VertexId w : s.h_adj[v])
                if (v < w && s.mark_[w] == s.epoch_ && s.truss_edges.count(edge_key(v, w)))
                    part.edges.emplace_back(v, w);
        std::sort(part.edges.begin(), part.edges.end());
        part.dist = std::sqrt(maxd);

        if (!validate_group(part, ctx.query, *ctx.graph)) {
            ++stats.candidate_validation_retries;
            auto fixed = revalidate_candidate(s, part);
            if (!fixed) continue;
            part = std::move(*fixed);
        }
        out.vertices.insert(out.vertices.end(), part.vertices.begin(), part.vertices.end());
        out.edges.insert(out.edges.end(), part.edges.begin(), part.edges.end());
        out.dist = std::max(out.dist, part.dist);
    }
    if (out.vertices.empty()) return std::nullopt;
    std::sort(out.vertices.begin(), out.vertices.end());
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

std::optional<Group> revalidate_candidate(ExpandState& s, const Group& cand) {
    const QueryContext& ctx = *s.ctx;
    ++s.epoch_;
    for (VertexId v : cand.vertices) s.mark_[v] = s.epoch_;
    for (VertexId v : cand.vertices) {
        auto& row = s.tp_adj_[v];
        for (VertexId w : s.h_adj[v])
            if (s.mark_[w] == s.epoch_) row.push_back(w);
        std::sort(row.begin(), row.end());
    }
    auto comps = extract_ctruss(s.tp_adj_, cand.vertices, ctx.query.trussness);
    for (VertexId v : cand.vertices) s.tp_adj_[v].clear();

    std::optional<Group> best;
    double best_key = 0.0;
    for (const auto& comp : comps) {
        std::vector<int> counts(ctx.query.keywords.size(), 0);
        double maxd = 0.0;
        for (VertexId v : comp.vertices) {
            if (ctx.phi_index[v] >= 0) ++counts[ctx.phi_index[v]];
            maxd = std::max(maxd, ctx.sqdist[v]);
        }
        bool ok = true;
        for (int c : counts)
            if (c < ctx.query.min_keyword_count) ok = false;
        if (!ok) continue;
        if (!best || maxd < best_key) {
            best = Group{comp.vertices, comp.edges, std::sqrt(maxd)};
            best_key = maxd;
        }
    }
    return best;
}

}  // namespace

std::optional<Group> run_expanding(SortedEdgeArray& a, const QueryContext& ctx,
                                   QueryStats& stats, bool strict_tp) {
    const Query& q = ctx.query;

    auto lb = find_lower_bound_radius(a, ctx);
    stats.lower_bound_found = lb.has_value();
    if (lb) {
        stats.lower_bound_dist = std::sqrt(lb->sqdist);
        stats.lower_bound_edges = lb->consumed.size();
    }
    if (a.size() == 0) return std::nullopt;

    ExpandState state(ctx);
    state.strict_tp = strict_tp;
    double d = lb ? lb->sqdist : a.first_distance();

    std::optional<Group> result;
    while (true) {
        auto slice = a.edges_up_to(d);
        auto cand = expand_step(state, slice);
        if (cand) cand = assemble_candidate(state, stats);
        ExpansionStep step;
        step.edges_total = state.edge_count;
        step.vertices_total = state.vertex_count;
        step.slice_edges = slice.size();
        step.tp_vertices = state.last_tp_vertices.size();
        step.tp_edges = state.last_tp_edges;
        step.found = cand.has_value();
        stats.expansion.push_back(step);
        if (cand) {
            result = std::move(cand);
            break;
        }
        if (a.exhausted()) break;
        auto target = static_cast<std::size_t>(
            std::ceil(q.growth_factor * static_cast<double>(state.edge_count)));
        if (target <= state.edge_count) target = state.edge_count + 1;  // progress guard
        d = a.radius_for_target_edges(target);
    }

    stats.satisfied_component_vertices = state.last_satisfied_vertices;
    std::uint64_t truss_vertices = 0;
    for (std::size_t v = 0; v < ctx.graph->vertex_count(); ++v)
        if (state.tuf.contains(static_cast<VertexId>(v))) ++truss_vertices;
    stats.truss_set_vertices = truss_vertices;

    stats.expansion_edge_sum = 0;
    double work_sum = 0.0;
    for (const auto& step : stats.expansion) {
        stats.expansion_edge_sum += step.edges_total;
        work_sum += std::pow(static_cast<double>(step.edges_total), 1.5);
    }
    if (!stats.expansion.empty() && stats.expansion.back().edges_total > 0) {
        const double last = static_cast<double>(stats.expansion.back().edges_total);
        stats.expansion_bound_factor = static_cast<double>(stats.expansion_edge_sum) / last;
        stats.expansion_work_ratio = work_sum / std::pow(last, 1.5);
    }
    stats.expansion_bound_limit = 1.0 + q.growth_factor / (q.growth_factor - 1.0);
    if (result) {
        stats.candidate_vertices = result->vertices.size();
        stats.candidate_edges = result->edges.size();
    }
    return result;
}

}  // namespace gst
