#include "gst/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "gst/errors.hpp"

namespace gst {

GeoSocialGraph GeoSocialGraph::from_parts(std::vector<VertexAttr> attrs,
                                          const std::vector<Edge>& edges,
                                          std::vector<std::string> keyword_names,
                                          std::vector<std::string> external_ids) {
    GeoSocialGraph g;
    const std::size_t n = attrs.size();
    g.attrs_ = std::move(attrs);
    g.keyword_names_ = std::move(keyword_names);
    for (std::size_t k = 0; k < g.keyword_names_.size(); ++k)
        g.keyword_ids_.emplace(g.keyword_names_[k], static_cast<KeywordId>(k));
    if (external_ids.empty()) {
        external_ids.reserve(n);
        for (std::size_t i = 0; i < n; ++i) external_ids.push_back(std::to_string(i));
    }
    g.external_ids_ = std::move(external_ids);

    for (const auto& a : g.attrs_) {
        if (a.keyword < 0 || static_cast<std::size_t>(a.keyword) >= g.keyword_names_.size())
            throw InvalidParameter("keyword", std::to_string(a.keyword));
    }

    g.adj_.assign(n, {});
    for (const Edge& e : edges) {
        if (e.u == e.v) throw InvalidParameter("edge", "self loop");
        if (e.v >= n) throw InvalidParameter("edge", "vertex out of range");
        g.adj_[e.u].push_back(e.v);
        g.adj_[e.v].push_back(e.u);
    }
    for (auto& list : g.adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    std::size_t degree_sum = 0;
    for (std::size_t v = 0; v < n; ++v) {
        degree_sum += g.adj_[v].size();
#ifndef NDEBUG
        // adjacency symmetry must hold after construction
        for (VertexId w : g.adj_[v])
            assert(std::binary_search(g.adj_[w].begin(), g.adj_[w].end(),
                                      static_cast<VertexId>(v)));
#endif
    }
    g.edge_count_ = degree_sum / 2;
    return g;
}

KeywordId GeoSocialGraph::keyword_id(const std::string& name) const {
    auto it = keyword_ids_.find(name);
    return it == keyword_ids_.end() ? kNoKeyword : it->second;
}

bool GeoSocialGraph::has_edge(VertexId u, VertexId v) const {
    if (u >= adj_.size() || v >= adj_.size()) return false;
    const auto& smaller = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    VertexId other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(smaller.begin(), smaller.end(), other);
}

double squared_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double euclidean_distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

double distance(Point location, VertexId v, const GeoSocialGraph& g) {
    return euclidean_distance(location, g.position(v));
}

double group_distance(Point location, std::span<const VertexId> members,
                      const GeoSocialGraph& g) {
    if (members.empty()) throw EmptyGroup();
    double best = 0.0;
    for (VertexId v : members) best = std::max(best, squared_distance(location, g.position(v)));
    return std::sqrt(best);
}

bool validate_group(const Group& s, const Query& q, const GeoSocialGraph& g) {
    if (s.vertices.empty()) return false;
    std::unordered_set<VertexId> member_set(s.vertices.begin(), s.vertices.end());
    if (member_set.size() != s.vertices.size()) return false;
    for (VertexId v : s.vertices)
        if (v >= g.vertex_count()) return false;

    std::unordered_map<std::uint64_t, int> support;
    std::unordered_map<VertexId, std::vector<VertexId>> adj;
    for (const Edge& e : s.edges) {
        if (!member_set.count(e.u) || !member_set.count(e.v)) return false;
        if (!g.has_edge(e.u, e.v)) return false;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
        support.emplace(edge_key(e), 0);
    }
    if (support.size() != s.edges.size()) return false;  // duplicate edges

    // connectivity over the explicit edge set, covering every member
    if (s.vertices.size() > 1) {
        std::unordered_set<VertexId> seen;
        std::queue<VertexId> bfs;
        bfs.push(s.vertices.front());
        seen.insert(s.vertices.front());
        while (!bfs.empty()) {
            VertexId v = bfs.front();
            bfs.pop();
            auto it = adj.find(v);
            if (it == adj.end()) continue;
            for (VertexId w : it->second)
                if (seen.insert(w).second) bfs.push(w);
        }
        if (seen.size() != s.vertices.size()) return false;
    }

    // per-edge triangle support inside the group
    for (auto& [v, list] : adj) std::sort(list.begin(), list.end());
    for (const Edge& e : s.edges) {
        const auto& a = adj[e.u];
        const auto& b = adj[e.v];
        int sup = 0;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) {
                ++sup;
                ++i;
                ++j;
            } else if (a[i] < b[j]) {
                ++i;
            } else {
                ++j;
            }
        }
        if (sup < q.trussness - 2) return false;
    }

    // keyword minimums
    std::vector<int> counts(q.keywords.size(), 0);
    for (VertexId v : s.vertices) {
        KeywordId kw = g.keyword_of(v);
        for (std::size_t k = 0; k < q.keywords.size(); ++k)
            if (q.keywords[k] == kw) ++counts[k];
    }
    for (int c : counts)
        if (c < q.min_keyword_count) return false;
    return true;
}

QueryContext QueryContext::make(const GeoSocialGraph& g, const Query& q) {
    QueryContext ctx;
    ctx.graph = &g;
    ctx.query = q;
    const std::size_t n = g.vertex_count();
    ctx.sqdist.resize(n);
    ctx.phi_index.assign(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        ctx.sqdist[v] = squared_distance(q.location, g.position(v));
        KeywordId kw = g.keyword_of(static_cast<VertexId>(v));
        for (std::size_t k = 0; k < q.keywords.size(); ++k)
            if (q.keywords[k] == kw) ctx.phi_index[v] = static_cast<std::int16_t>(k);
    }
    return ctx;
}

}  // namespace gst
