#include "gst/spatial_order.hpp"

#include <algorithm>
#include <queue>

#include "gst/errors.hpp"

namespace gst {

namespace {

struct EdgeLess {
    bool operator()(const SortedEdge& a, const SortedEdge& b) const {
        if (a.sqdist != b.sqdist) return a.sqdist < b.sqdist;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    }
};

// Sort one component: order vertices by (distance, id), then emit each edge
// at its later endpoint. That leaves runs of equal distance possibly out of
// tie order, so equal-distance runs get a final small sort.
std::vector<SortedEdge> sort_component(const TrussSubgraph& comp, const QueryContext& ctx) {
    std::vector<VertexId> order(comp.vertices);
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (ctx.sqdist[a] != ctx.sqdist[b]) return ctx.sqdist[a] < ctx.sqdist[b];
        return a < b;
    });
    std::unordered_map<VertexId, std::uint32_t> pos;
    pos.reserve(order.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

    std::vector<std::vector<Edge>> at(order.size());
    for (const Edge& e : comp.edges) {
        std::uint32_t later = std::max(pos.at(e.u), pos.at(e.v));
        at[later].push_back(e);
    }
    std::vector<SortedEdge> out;
    out.reserve(comp.edges.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        double d = ctx.sqdist[order[i]];
        for (const Edge& e : at[i]) out.push_back({e.u, e.v, d});
    }
    // fix tie order inside equal-distance runs
    std::size_t start = 0;
    while (start < out.size()) {
        std::size_t end = start + 1;
        while (end < out.size() && out[end].sqdist == out[start].sqdist) ++end;
        std::sort(out.begin() + start, out.begin() + end, EdgeLess{});
        start = end;
    }
    return out;
}

}  // namespace

SortedEdgeArray SortedEdgeArray::build(const std::vector<TrussSubgraph>& components,
                                       const QueryContext& ctx) {
    std::vector<std::vector<SortedEdge>> sorted;
    sorted.reserve(components.size());
    std::size_t total = 0;
    for (const auto& comp : components) {
        sorted.push_back(sort_component(comp, ctx));
        total += comp.edges.size();
    }

    SortedEdgeArray a;
    a.edges_.reserve(total);
    using HeapItem = std::pair<SortedEdge, std::size_t>;  // head, component index
    auto heap_greater = [](const HeapItem& x, const HeapItem& y) {
        return EdgeLess{}(y.first, x.first);
    };
    std::priority_queue<HeapItem, std::vector<HeapItem>, decltype(heap_greater)> heap(
        heap_greater);
    std::vector<std::size_t> next(sorted.size(), 0);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (!sorted[i].empty()) heap.push({sorted[i][0], i});
    while (!heap.empty()) {
        auto [e, i] = heap.top();
        heap.pop();
        a.edges_.push_back(e);
        if (++next[i] < sorted[i].size()) heap.push({sorted[i][next[i]], i});
    }
    return a;
}

std::span<const SortedEdge> SortedEdgeArray::edges_up_to(double sqdist_limit) {
    if (sqdist_limit < last_limit_) throw NonMonotoneRadius();
    last_limit_ = sqdist_limit;
    std::size_t begin = cursor_;
    while (cursor_ < edges_.size() && edges_[cursor_].sqdist <= sqdist_limit) ++cursor_;
    return {edges_.data() + begin, cursor_ - begin};
}

double SortedEdgeArray::radius_for_target_edges(std::size_t target) const {
    if (edges_.empty()) return -1.0;
    if (target == 0) target = 1;
    if (target > edges_.size()) return edges_.back().sqdist;
    return edges_[target - 1].sqdist;
}

}  // namespace gst
