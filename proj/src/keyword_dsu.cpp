#include "gst/keyword_dsu.hpp"

#include <algorithm>

#include "gst/errors.hpp"

namespace gst {

KeywordDSU::KeywordDSU(std::size_t universe, std::size_t keyword_slots, int min_per_keyword)
    : slots_(keyword_slots),
      rho_(min_per_keyword),
      parent_(universe, kAbsent),
      rank_(universe, 0),
      size_(universe, 0),
      counts_(universe * keyword_slots, 0),
      satisfied_(universe, 0),
      head_(universe, kAbsent),
      tail_(universe, kAbsent),
      next_(universe, kAbsent) {}

bool KeywordDSU::counts_satisfy(VertexId root) const {
    const std::uint32_t* c = counts_.data() + static_cast<std::size_t>(root) * slots_;
    for (std::size_t k = 0; k < slots_; ++k)
        if (c[k] < static_cast<std::uint32_t>(rho_)) return false;
    return true;
}

void KeywordDSU::insert_vertex(VertexId v, int phi_idx) {
    if (contains(v)) throw DoubleInsert(v);
    parent_[v] = v;
    rank_[v] = 0;
    size_[v] = 1;
    head_[v] = tail_[v] = v;
    next_[v] = kAbsent;
    if (phi_idx >= 0) counts_[static_cast<std::size_t>(v) * slots_ + phi_idx] = 1;
    if (counts_satisfy(v)) {
        satisfied_[v] = 1;
        satisfied_roots_.insert(v);
    }
}

VertexId KeywordDSU::find(VertexId v) {
    if (!contains(v)) throw NotInserted(v);
    VertexId r = v;
    while (parent_[r] != r) {
        r = parent_[r];
        ++find_steps_;
    }
    while (parent_[v] != r) {
        VertexId nv = parent_[v];
        parent_[v] = r;
        v = nv;
    }
    return r;
}

std::optional<VertexId> KeywordDSU::union_edge(VertexId u, VertexId v) {
    VertexId ru = find(u), rv = find(v);
    if (ru == rv) return std::nullopt;
    bool was_satisfied = satisfied_[ru] || satisfied_[rv];
    if (rank_[ru] < rank_[rv]) std::swap(ru, rv);
    // rv merges into ru
    parent_[rv] = ru;
    if (rank_[ru] == rank_[rv]) ++rank_[ru];
    size_[ru] += size_[rv];
    std::uint32_t* cu = counts_.data() + static_cast<std::size_t>(ru) * slots_;
    const std::uint32_t* cv = counts_.data() + static_cast<std::size_t>(rv) * slots_;
    for (std::size_t k = 0; k < slots_; ++k) cu[k] += cv[k];
    // splice member lists (O(1) with tail pointers)
    next_[tail_[ru]] = head_[rv];
    tail_[ru] = tail_[rv];
    if (satisfied_[rv]) {
        satisfied_roots_.erase(rv);
        satisfied_[rv] = 0;
    }
    bool now = counts_satisfy(ru);
    if (now && !satisfied_[ru]) {
        satisfied_[ru] = 1;
        satisfied_roots_.insert(ru);
    }
    if (now && !was_satisfied) return ru;
    return std::nullopt;
}

std::span<const std::uint32_t> KeywordDSU::counts(VertexId root) const {
    return {counts_.data() + static_cast<std::size_t>(root) * slots_, slots_};
}

std::vector<VertexId> KeywordDSU::members(VertexId root) const {
    std::vector<VertexId> out;
    out.reserve(size_[root]);
    for (VertexId v = head_[root]; v != kAbsent; v = next_[v]) out.push_back(v);
    return out;
}

std::vector<std::pair<VertexId, std::vector<VertexId>>> KeywordDSU::satisfied_sets() const {
    std::vector<std::pair<VertexId, std::vector<VertexId>>> out;
    out.reserve(satisfied_roots_.size());
    for (VertexId r : satisfied_roots_) out.emplace_back(r, members(r));
    return out;
}

std::optional<LowerBoundRange> find_lower_bound_radius(const SortedEdgeArray& a,
                                                       const QueryContext& ctx) {
    KeywordDSU dsu(ctx.graph->vertex_count(), ctx.query.keywords.size(),
                   ctx.query.min_keyword_count);
    LowerBoundRange out;
    for (const SortedEdge& e : a.all()) {
        if (!dsu.contains(e.u)) dsu.insert_vertex(e.u, ctx.phi_index[e.u]);
        if (!dsu.contains(e.v)) dsu.insert_vertex(e.v, ctx.phi_index[e.v]);
        auto fresh = dsu.union_edge(e.u, e.v);
        out.consumed.push_back(e);
        if (dsu.satisfied_count() > 0) {
            VertexId root = fresh ? *fresh : *dsu.satisfied_roots().begin();
            out.sqdist = e.sqdist;
            out.members = dsu.members(root);
            std::sort(out.members.begin(), out.members.end());
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace gst
