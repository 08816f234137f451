#include "gst/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "gst/errors.hpp"

namespace gst {

namespace {

// Round-based peel: recompute every support from scratch, drop all violating
// edges at once, repeat to the fixpoint. Deliberately written differently
// from the engine's decrementing cascade.
std::unordered_set<std::uint64_t> naive_max_truss(const GeoSocialGraph& g,
                                                  const std::vector<char>& member, int c) {
    std::unordered_set<std::uint64_t> alive;
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        if (!member[u]) continue;
        for (VertexId v : g.neighbors(static_cast<VertexId>(u)))
            if (u < v && member[v]) alive.insert(edge_key(static_cast<VertexId>(u), v));
    }
    const int need = c - 2;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::uint64_t> drop;
        for (std::uint64_t key : alive) {
            auto u = static_cast<VertexId>(key >> 32);
            auto v = static_cast<VertexId>(key & 0xffffffffu);
            const auto& nu = g.neighbors(u);
            const auto& nv = g.neighbors(v);
            int sup = 0;
            std::size_t i = 0, j = 0;
            while (i < nu.size() && j < nv.size()) {
                if (nu[i] == nv[j]) {
                    VertexId w = nu[i];
                    if (member[w] && alive.count(edge_key(u, w)) && alive.count(edge_key(v, w)))
                        ++sup;
                    ++i;
                    ++j;
                } else if (nu[i] < nv[j]) {
                    ++i;
                } else {
                    ++j;
                }
            }
            if (sup < need) drop.push_back(key);
        }
        for (std::uint64_t key : drop) alive.erase(key);
        changed = !drop.empty();
    }
    return alive;
}

struct NaiveComponent {
    std::vector<VertexId> vertices;
    std::vector<Edge> edges;
    double max_sqdist = 0.0;
};

std::vector<NaiveComponent> naive_components(const GeoSocialGraph& g, const Query& q,
                                             const std::unordered_set<std::uint64_t>& alive) {
    std::unordered_map<VertexId, std::vector<VertexId>> adj;
    for (std::uint64_t key : alive) {
        auto u = static_cast<VertexId>(key >> 32);
        auto v = static_cast<VertexId>(key & 0xffffffffu);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<VertexId> verts;
    for (const auto& [v, _] : adj) verts.push_back(v);
    std::sort(verts.begin(), verts.end());

    std::vector<NaiveComponent> comps;
    std::unordered_set<VertexId> seen;
    for (VertexId src : verts) {
        if (seen.count(src)) continue;
        NaiveComponent comp;
        std::vector<VertexId> stack{src};
        seen.insert(src);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            comp.vertices.push_back(v);
            comp.max_sqdist =
                std::max(comp.max_sqdist, squared_distance(q.location, g.position(v)));
            for (VertexId w : adj.at(v))
                if (seen.insert(w).second) stack.push_back(w);
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        for (VertexId v : comp.vertices)
            for (VertexId w : adj.at(v))
                if (v < w) comp.edges.emplace_back(v, w);
        std::sort(comp.edges.begin(), comp.edges.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool keyword_ok(const GeoSocialGraph& g, const Query& q, const std::vector<VertexId>& verts) {
    std::vector<int> counts(q.keywords.size(), 0);
    for (VertexId v : verts) {
        KeywordId kw = g.keyword_of(v);
        for (std::size_t k = 0; k < q.keywords.size(); ++k)
            if (q.keywords[k] == kw) ++counts[k];
    }
    for (int c : counts)
        if (c < q.min_keyword_count) return false;
    return true;
}

// Best satisfying component of the member-induced subgraph, or nothing.
std::optional<Group> best_valid_group(const GeoSocialGraph& g, const Query& q,
                                      const std::vector<char>& member) {
    auto alive = naive_max_truss(g, member, q.trussness);
    if (alive.empty()) return std::nullopt;
    std::optional<Group> best;
    double best_key = 0.0;
    for (const auto& comp : naive_components(g, q, alive)) {
        if (!keyword_ok(g, q, comp.vertices)) continue;
        if (!best || comp.max_sqdist < best_key) {
            best = Group{comp.vertices, comp.edges, std::sqrt(comp.max_sqdist)};
            best_key = comp.max_sqdist;
        }
    }
    return best;
}

std::vector<VertexId> universe(const GeoSocialGraph& g, std::span<const VertexId> restrict_to) {
    if (!restrict_to.empty()) return {restrict_to.begin(), restrict_to.end()};
    std::vector<VertexId> all(g.vertex_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<VertexId>(i);
    return all;
}

std::vector<VertexId> by_distance(const GeoSocialGraph& g, const Query& q,
                                  std::vector<VertexId> verts) {
    std::sort(verts.begin(), verts.end(), [&](VertexId a, VertexId b) {
        double da = squared_distance(q.location, g.position(a));
        double db = squared_distance(q.location, g.position(b));
        if (da != db) return da < db;
        return a < b;
    });
    return verts;
}

}  // namespace

std::optional<Group> run_incremental(const GeoSocialGraph& g, const Query& q,
                                     std::span<const VertexId> restrict_to) {
    auto order = by_distance(g, q, universe(g, restrict_to));
    std::vector<char> member(g.vertex_count(), 0);
    for (VertexId v : order) {
        member[v] = 1;
        if (auto ans = best_valid_group(g, q, member)) return ans;
    }
    return std::nullopt;
}

std::optional<Group> run_decremental(const GeoSocialGraph& g, const Query& q,
                                     std::span<const VertexId> restrict_to) {
    auto order = by_distance(g, q, universe(g, restrict_to));
    std::vector<char> member(g.vertex_count(), 0);
    for (VertexId v : order) member[v] = 1;

    std::optional<Group> last;
    while (!order.empty()) {
        auto alive = naive_max_truss(g, member, q.trussness);
        if (alive.empty()) break;
        std::optional<Group> now;
        double now_key = 0.0;
        std::unordered_set<VertexId> surviving;
        for (const auto& comp : naive_components(g, q, alive)) {
            surviving.insert(comp.vertices.begin(), comp.vertices.end());
            if (!keyword_ok(g, q, comp.vertices)) continue;
            if (!now || comp.max_sqdist < now_key) {
                now = Group{comp.vertices, comp.edges, std::sqrt(comp.max_sqdist)};
                now_key = comp.max_sqdist;
            }
        }
        if (!now) break;  // counts only shrink from here on
        last = now;
        // delete the farthest vertex of the surviving truss subgraph
        while (!order.empty() && !surviving.count(order.back())) {
            member[order.back()] = 0;
            order.pop_back();
        }
        if (order.empty()) break;
        member[order.back()] = 0;
        order.pop_back();
    }
    return last;
}

std::optional<Group> run_binary_search(const GeoSocialGraph& g, const Query& q,
                                       std::span<const VertexId> restrict_to) {
    auto order = by_distance(g, q, universe(g, restrict_to));
    std::vector<double> dists;
    for (VertexId v : order) {
        double d = squared_distance(q.location, g.position(v));
        if (dists.empty() || dists.back() != d) dists.push_back(d);
    }
    if (dists.empty()) return std::nullopt;

    auto probe = [&](double limit) {
        std::vector<char> member(g.vertex_count(), 0);
        for (VertexId v : order) {
            if (squared_distance(q.location, g.position(v)) > limit) break;
            member[v] = 1;
        }
        return best_valid_group(g, q, member);
    };

    if (!probe(dists.back())) return std::nullopt;
    std::size_t lo = 0, hi = dists.size() - 1;
    std::optional<Group> best;
    while (lo <= hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        auto ans = probe(dists[mid]);
        if (ans) {
            best = ans;
            if (mid == 0) break;
            hi = mid - 1;
        } else {
            lo = mid + 1;
        }
    }
    return best;
}

std::optional<Group> brute_force_optimum(const GeoSocialGraph& g, const Query& q,
                                         std::size_t cap) {
    if (g.vertex_count() > cap) throw InstanceTooLarge(g.vertex_count(), cap);
    std::vector<VertexId> all(g.vertex_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<VertexId>(i);
    auto order = by_distance(g, q, all);

    std::vector<char> member(g.vertex_count(), 0);
    std::size_t i = 0;
    while (i < order.size()) {
        double d = squared_distance(q.location, g.position(order[i]));
        // all vertices at this distance enter together
        while (i < order.size() && squared_distance(q.location, g.position(order[i])) == d) {
            member[order[i]] = 1;
            ++i;
        }
        if (auto ans = best_valid_group(g, q, member)) return ans;
    }
    return std::nullopt;
}

}  // namespace gst
