#include "gst/truss.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_set>

#include "gst/errors.hpp"

namespace gst {

SupportMap compute_support(const AdjacencyList& adj, std::span<const VertexId> vertices) {
    SupportMap sup;
    for (VertexId u : vertices) {
        const auto& nu = adj[u];
        for (VertexId v : nu) {
            if (v <= u) continue;
            const auto& nv = adj[v];
            // merge over the two sorted lists
            std::int32_t count = 0;
            std::size_t i = 0, j = 0;
            while (i < nu.size() && j < nv.size()) {
                if (nu[i] == nv[j]) {
                    ++count;
                    ++i;
                    ++j;
                } else if (nu[i] < nv[j]) {
                    ++i;
                } else {
                    ++j;
                }
            }
            sup.emplace(edge_key(u, v), count);
        }
    }
    return sup;
}

namespace {

// Connected components over an explicit surviving edge set.
std::vector<TrussSubgraph> split_components(const std::vector<Edge>& edges, int c) {
    std::unordered_map<VertexId, VertexId> parent;
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
        VertexId r = x;
        while (parent[r] != r) r = parent[r];
        while (parent[x] != r) {
            VertexId nx = parent[x];
            parent[x] = r;
            x = nx;
        }
        return r;
    };
    for (const Edge& e : edges) {
        parent.try_emplace(e.u, e.u);
        parent.try_emplace(e.v, e.v);
        VertexId ru = find(e.u), rv = find(e.v);
        if (ru != rv) parent[ru] = rv;
    }
    std::unordered_map<VertexId, std::size_t> comp_index;
    std::vector<TrussSubgraph> comps;
    for (const Edge& e : edges) {
        VertexId r = find(e.u);
        auto [it, fresh] = comp_index.try_emplace(r, comps.size());
        if (fresh) comps.push_back(TrussSubgraph{{}, {}, c});
        comps[it->second].edges.push_back(e);
    }
    for (auto& comp : comps) {
        std::sort(comp.edges.begin(), comp.edges.end());
        std::vector<VertexId> verts;
        for (const Edge& e : comp.edges) {
            verts.push_back(e.u);
            verts.push_back(e.v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        comp.vertices = std::move(verts);
    }
    std::sort(comps.begin(), comps.end(), [](const TrussSubgraph& a, const TrussSubgraph& b) {
        return a.vertices.front() < b.vertices.front();
    });
    return comps;
}

}  // namespace

std::vector<TrussSubgraph> extract_ctruss(const AdjacencyList& adj,
                                          std::span<const VertexId> vertices, int c) {
    SupportMap sup = compute_support(adj, vertices);

    std::unordered_map<VertexId, std::set<VertexId>> live;
    for (VertexId u : vertices)
        if (!adj[u].empty()) live.emplace(u, std::set<VertexId>(adj[u].begin(), adj[u].end()));

    const std::int32_t need = c - 2;
    std::deque<Edge> queue;
    std::unordered_set<std::uint64_t> queued;
    for (VertexId u : vertices) {
        for (VertexId v : adj[u]) {
            if (v <= u) continue;
            if (sup.at(edge_key(u, v)) < need) {
                queue.emplace_back(u, v);
                queued.insert(edge_key(u, v));
            }
        }
    }
    while (!queue.empty()) {
        Edge e = queue.front();
        queue.pop_front();
        auto se = sup.find(edge_key(e));
        if (se == sup.end()) continue;
        auto& a = live.at(e.u);
        auto& b = live.at(e.v);
        const auto& small = a.size() <= b.size() ? a : b;
        const auto& big = a.size() <= b.size() ? b : a;
        for (VertexId w : small) {
            if (w == e.u || w == e.v || !big.count(w)) continue;
            for (Edge f : {Edge(e.u, w), Edge(e.v, w)}) {
                auto sf = sup.find(edge_key(f));
                if (sf != sup.end() && --sf->second < need &&
                    queued.insert(edge_key(f)).second)
                    queue.push_back(f);
            }
        }
        a.erase(e.v);
        b.erase(e.u);
        sup.erase(se);
    }

    std::vector<Edge> survivors;
    survivors.reserve(sup.size());
    for (VertexId u : vertices) {
        auto lu = live.find(u);
        if (lu == live.end()) continue;
        for (VertexId v : lu->second)
            if (u < v && sup.count(edge_key(u, v))) survivors.emplace_back(u, v);
    }
    return split_components(survivors, c);
}

std::vector<TrussSubgraph> maximal_truss_components(const GeoSocialGraph& g, const Query& q) {
    std::vector<VertexId> all(g.vertex_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<VertexId>(i);
    auto comps = extract_ctruss(g.adjacency(), all, q.trussness);

    std::vector<TrussSubgraph> kept;
    for (auto& comp : comps) {
        std::vector<int> counts(q.keywords.size(), 0);
        for (VertexId v : comp.vertices) {
            KeywordId kw = g.keyword_of(v);
            for (std::size_t k = 0; k < q.keywords.size(); ++k)
                if (q.keywords[k] == kw) ++counts[k];
        }
        bool ok = true;
        for (int cnt : counts)
            if (cnt < q.min_keyword_count) ok = false;
        if (ok) kept.push_back(std::move(comp));
    }
    return kept;
}

TrussState::TrussState(const std::vector<TrussSubgraph>& components, int c) : c_(c) {
    std::vector<Edge> edges;
    for (const auto& comp : components)
        edges.insert(edges.end(), comp.edges.begin(), comp.edges.end());
    add_edges(edges);
}

TrussState::TrussState(std::span<const Edge> edges, int c) : c_(c) { add_edges(edges); }

void TrussState::add_edges(std::span<const Edge> edges) {
    for (const Edge& e : edges) {
        adj_[e.u].insert(e.v);
        adj_[e.v].insert(e.u);
    }
    for (const Edge& e : edges) {
        const auto& a = adj_.at(e.u);
        const auto& b = adj_.at(e.v);
        const auto& small = a.size() <= b.size() ? a : b;
        const auto& big = a.size() <= b.size() ? b : a;
        std::int32_t count = 0;
        for (VertexId w : small)
            if (w != e.u && w != e.v && big.count(w)) ++count;
        sup_[edge_key(e)] = count;
    }
}

std::size_t TrussState::degree(VertexId v) const {
    auto it = adj_.find(v);
    return it == adj_.end() ? 0 : it->second.size();
}

void TrussState::drop_vertex(VertexId v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) return;
    assert(it->second.empty());
    adj_.erase(it);
}

bool TrussState::delete_vertex(VertexId u, const RemovalCallback& on_edge_removed) {
    auto it = adj_.find(u);
    if (it == adj_.end()) throw VertexAbsent(u);

    const std::int32_t need = c_ - 2;
    std::deque<Edge> queue;
    std::unordered_set<std::uint64_t> queued;
    for (VertexId v : it->second) {
        queue.emplace_back(u, v);
        queued.insert(edge_key(u, v));
    }
    while (!queue.empty()) {
        Edge e = queue.front();
        queue.pop_front();
        auto se = sup_.find(edge_key(e));
        if (se == sup_.end()) continue;  // removed meanwhile (cascade or component prune)
        auto& a = adj_.at(e.u);
        auto& b = adj_.at(e.v);
        if (!debug_skip_cascade) {
            const auto& small = a.size() <= b.size() ? a : b;
            const auto& big = a.size() <= b.size() ? b : a;
            std::vector<VertexId> common;
            for (VertexId w : small)
                if (w != e.u && w != e.v && big.count(w)) common.push_back(w);
            for (VertexId w : common) {
                for (Edge f : {Edge(e.u, w), Edge(e.v, w)}) {
                    auto sf = sup_.find(edge_key(f));
                    if (sf != sup_.end() && --sf->second < need &&
                        queued.insert(edge_key(f)).second)
                        queue.push_back(f);
                }
            }
        }
        a.erase(e.v);
        b.erase(e.u);
        sup_.erase(edge_key(e));
        if (!on_edge_removed(e)) return false;
    }
    return true;
}

void TrussState::remove_component(std::span<const VertexId> component) {
    for (VertexId v : component) {
        auto it = adj_.find(v);
        if (it == adj_.end()) continue;
        for (VertexId w : it->second) {
            sup_.erase(edge_key(v, w));
            auto wt = adj_.find(w);
            if (wt != adj_.end()) wt->second.erase(v);
        }
        adj_.erase(it);
    }
}

std::vector<Edge> TrussState::edges() const {
    std::vector<Edge> out;
    out.reserve(sup_.size());
    for (const auto& [v, nbrs] : adj_)
        for (VertexId w : nbrs)
            if (v < w) out.emplace_back(v, w);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> TrussState::live_vertices() const {
    std::vector<VertexId> out;
    for (const auto& [v, nbrs] : adj_)
        if (!nbrs.empty()) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gst
