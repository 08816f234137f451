#include "gst/forest.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <queue>
#include <utility>

#include "gst/errors.hpp"

namespace gst {

namespace detail {

struct EttNode {
    EttNode* l = nullptr;
    EttNode* r = nullptr;
    EttNode* p = nullptr;
    std::uint64_t prio = 0;
    std::uint32_t sub_nodes = 1;
    std::uint32_t sub_vertices = 0;
    std::uint32_t va = 0, vb = 0;  // local ids; self node iff va == vb
    std::int16_t self_phi = -1;
    bool exact_flag = false;  // canonical arc of a tree edge whose level == structure level
    bool sub_exact = false;
    bool track_counts = false;  // level 0 only
    double self_maxd = -1.0;
    double sub_maxd = -1.0;
    std::vector<std::uint32_t> counts;  // aggregate keyword counters when tracked

    bool is_self() const { return va == vb; }
};

namespace {

inline std::uint32_t nsize(const EttNode* n) { return n ? n->sub_nodes : 0; }

void pull(EttNode* n, std::size_t slots) {
    n->sub_nodes = 1 + nsize(n->l) + nsize(n->r);
    n->sub_vertices = n->is_self() ? 1 : 0;
    n->sub_maxd = n->self_maxd;
    n->sub_exact = n->exact_flag;
    if (n->track_counts) {
        std::fill(n->counts.begin(), n->counts.end(), 0u);
        if (n->is_self() && n->self_phi >= 0) n->counts[n->self_phi] = 1;
    }
    for (EttNode* c : {n->l, n->r}) {
        if (!c) continue;
        n->sub_vertices += c->sub_vertices;
        n->sub_maxd = std::max(n->sub_maxd, c->sub_maxd);
        n->sub_exact = n->sub_exact || c->sub_exact;
        if (n->track_counts)
            for (std::size_t k = 0; k < slots; ++k) n->counts[k] += c->counts[k];
    }
}

EttNode* merge(EttNode* a, EttNode* b, std::size_t slots) {
    if (!a) return b;
    if (!b) return a;
    if (a->prio >= b->prio) {
        EttNode* sub = merge(a->r, b, slots);
        a->r = sub;
        sub->p = a;
        pull(a, slots);
        return a;
    }
    EttNode* sub = merge(a, b->l, slots);
    b->l = sub;
    sub->p = b;
    pull(b, slots);
    return b;
}

EttNode* merge_root(EttNode* a, EttNode* b, std::size_t slots) {
    if (a) a->p = nullptr;
    if (b) b->p = nullptr;
    EttNode* r = merge(a, b, slots);
    if (r) r->p = nullptr;
    return r;
}

// first k nodes of the sequence, rest
std::pair<EttNode*, EttNode*> split(EttNode* t, std::size_t k, std::size_t slots) {
    if (!t) return {nullptr, nullptr};
    if (k <= nsize(t->l)) {
        auto [a, b] = split(t->l, k, slots);
        t->l = b;
        if (b) b->p = t;
        pull(t, slots);
        if (a) a->p = nullptr;
        return {a, t};
    }
    auto [a, b] = split(t->r, k - nsize(t->l) - 1, slots);
    t->r = a;
    if (a) a->p = t;
    pull(t, slots);
    if (b) b->p = nullptr;
    return {t, b};
}

std::pair<EttNode*, EttNode*> split_root(EttNode* t, std::size_t k, std::size_t slots) {
    auto [a, b] = split(t, k, slots);
    if (a) a->p = nullptr;
    if (b) b->p = nullptr;
    return {a, b};
}

EttNode* root_of(EttNode* n) {
    while (n->p) n = n->p;
    return n;
}

std::size_t index_of(const EttNode* n) {
    std::size_t idx = nsize(n->l);
    for (const EttNode* c = n; c->p; c = c->p)
        if (c == c->p->r) idx += nsize(c->p->l) + 1;
    return idx;
}

void update_to_root(EttNode* n, std::size_t slots) {
    for (; n; n = n->p) pull(n, slots);
}

void collect_selfs(const EttNode* t, std::vector<std::uint32_t>& out) {
    if (!t || t->sub_vertices == 0) return;
    collect_selfs(t->l, out);
    if (t->is_self()) out.push_back(t->va);
    collect_selfs(t->r, out);
}

void collect_exact(EttNode* t, std::vector<EttNode*>& out) {
    if (!t || !t->sub_exact) return;
    collect_exact(t->l, out);
    if (t->exact_flag) out.push_back(t);
    collect_exact(t->r, out);
}

void collect_arcs(const EttNode* t, std::vector<const EttNode*>& out) {
    if (!t) return;
    collect_arcs(t->l, out);
    if (!t->is_self()) out.push_back(t);
    collect_arcs(t->r, out);
}

std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

}  // namespace detail

using detail::EttNode;

KeywordSpanningForest::KeywordSpanningForest(const Group& s, const QueryContext& ctx)
    : ctx_(&ctx),
      slots_(ctx.query.keywords.size()),
      rho_(ctx.query.min_keyword_count),
      prio_state_(0x6b43A9B1DEADBEEFull ^ (s.vertices.size() * 0x100000001B3ull)) {
    const std::size_t n = s.vertices.size();
    global_of_ = s.vertices;
    local_of_.reserve(n);
    for (Local i = 0; i < n; ++i) local_of_.emplace(s.vertices[i], i);
    alive_.assign(n, 1);
    alive_count_ = n;
    phi_.resize(n);
    sqd_.resize(n);
    for (Local i = 0; i < n; ++i) {
        phi_[i] = ctx.phi_index[s.vertices[i]];
        sqd_[i] = ctx.sqdist[s.vertices[i]];
    }
    level_cap_ = 0;
    while ((std::size_t{1} << level_cap_) < n) ++level_cap_;

    selfs_.assign(level_cap_ + 1, std::vector<EttNode*>(n, nullptr));
    nontree_.assign(level_cap_ + 1, std::vector<std::set<Local>>(n));
    small_mark_.assign(n, 0);

    for (Local v = 0; v < n; ++v) ensure_self(v, 0);
    num_trees_ = n;  // every vertex starts as a singleton tree; links merge

    // local sorted adjacency
    std::vector<std::vector<Local>> adj(n);
    for (const Edge& e : s.edges) {
        Local a = local_of_.at(e.u), b = local_of_.at(e.v);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());

    // BFS spanning tree per component; remaining edges become non-tree
    std::vector<char> visited(n, 0);
    for (Local src = 0; src < n; ++src) {
        if (visited[src]) continue;
        visited[src] = 1;
        std::queue<Local> bfs;
        bfs.push(src);
        while (!bfs.empty()) {
            Local v = bfs.front();
            bfs.pop();
            for (Local w : adj[v]) {
                if (visited[w]) continue;
                visited[w] = 1;
                EdgeRec& rec = edges_[edge_key(global_of_[v], global_of_[w])];
                rec.level = 0;
                add_tree_edge(v, w, rec);
                bfs.push(w);
            }
        }
    }
    for (Local v = 0; v < n; ++v) {
        for (Local w : adj[v]) {
            if (v > w) continue;
            std::uint64_t key = edge_key(global_of_[v], global_of_[w]);
            if (edges_.count(key)) continue;  // tree edge
            EdgeRec& rec = edges_[key];
            rec.level = 0;
            rec.tree = false;
            nontree_[0][v].insert(w);
            nontree_[0][w].insert(v);
        }
    }

    // drop components that do not meet the keyword minimums up front
    std::vector<EttNode*> roots;
    for (Local v = 0; v < n; ++v) {
        EttNode* r = detail::root_of(selfs_[0][v]);
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    for (EttNode* r : roots)
        if (!counts_satisfy(r)) prune_tree(r);
}

KeywordSpanningForest::~KeywordSpanningForest() {
    for (EttNode* n : all_nodes_) delete n;
}

EttNode* KeywordSpanningForest::alloc_self(Local v, std::uint32_t level) {
    EttNode* n;
    if (!free_list_.empty()) {
        n = free_list_.back();
        free_list_.pop_back();
        *n = EttNode{};
    } else {
        n = new EttNode();
        all_nodes_.push_back(n);
    }
    n->va = n->vb = v;
    n->prio = detail::splitmix(prio_state_);
    n->self_phi = phi_[v];
    n->self_maxd = sqd_[v];
    n->sub_maxd = n->self_maxd;
    n->sub_vertices = 1;
    n->track_counts = (level == 0);
    if (n->track_counts) {
        n->counts.assign(slots_, 0);
        if (n->self_phi >= 0) n->counts[n->self_phi] = 1;
    }
    return n;
}

EttNode* KeywordSpanningForest::alloc_arc(Local a, Local b, std::uint32_t level) {
    EttNode* n;
    if (!free_list_.empty()) {
        n = free_list_.back();
        free_list_.pop_back();
        *n = EttNode{};
    } else {
        n = new EttNode();
        all_nodes_.push_back(n);
    }
    n->va = a;
    n->vb = b;
    n->prio = detail::splitmix(prio_state_);
    n->self_phi = -1;
    n->self_maxd = -1.0;
    n->sub_maxd = -1.0;
    n->track_counts = (level == 0);
    if (n->track_counts) n->counts.assign(slots_, 0);
    return n;
}

void KeywordSpanningForest::free_node(EttNode* n) {
    n->l = n->r = n->p = nullptr;
    free_list_.push_back(n);
}

void KeywordSpanningForest::free_tree(EttNode* root) {
    if (!root) return;
    free_tree(root->l);
    free_tree(root->r);
    free_node(root);
}

EttNode* KeywordSpanningForest::ensure_self(Local v, std::uint32_t level) {
    EttNode*& slot = selfs_[level][v];
    if (!slot) slot = alloc_self(v, level);
    return slot;
}

EttNode* KeywordSpanningForest::reroot(EttNode* self_node) {
    EttNode* root = detail::root_of(self_node);
    std::size_t idx = detail::index_of(self_node);
    if (idx == 0) return root;
    auto [a, b] = detail::split_root(root, idx, slots_);
    return detail::merge_root(b, a, slots_);
}

std::pair<EttNode*, EttNode*> KeywordSpanningForest::link_at(Local u, Local v,
                                                             std::uint32_t level) {
    EttNode* tu = reroot(ensure_self(u, level));
    EttNode* tv = reroot(ensure_self(v, level));
    EttNode* a1 = alloc_arc(u, v, level);
    EttNode* a2 = alloc_arc(v, u, level);
    EttNode* t = detail::merge_root(tu, a1, slots_);
    t = detail::merge_root(t, tv, slots_);
    detail::merge_root(t, a2, slots_);
    ++link_ops_;
    if (level == 0) --num_trees_;
    return {a1, a2};
}

void KeywordSpanningForest::cut_at(EttNode* arc1, EttNode* arc2, std::uint32_t level) {
    std::size_t i1 = detail::index_of(arc1);
    std::size_t i2 = detail::index_of(arc2);
    if (i1 > i2) {
        std::swap(arc1, arc2);
        std::swap(i1, i2);
    }
    EttNode* root = detail::root_of(arc1);
    auto [left, rest1] = detail::split_root(root, i1, slots_);
    auto [seg1, rest2] = detail::split_root(rest1, 1, slots_);
    auto [mid, rest3] = detail::split_root(rest2, i2 - i1 - 1, slots_);
    auto [seg2, right] = detail::split_root(rest3, 1, slots_);
    assert(seg1 == arc1 && seg2 == arc2);
    (void)mid;
    free_node(seg1);
    free_node(seg2);
    detail::merge_root(left, right, slots_);
    ++cut_ops_;
    if (level == 0) ++num_trees_;
}

void KeywordSpanningForest::set_exact_flag(EdgeRec& rec, std::uint32_t level, bool value) {
    auto [a1, a2] = rec.arcs[level];
    EttNode* canonical = a1->va < a1->vb ? a1 : a2;
    canonical->exact_flag = value;
    detail::update_to_root(canonical, slots_);
}

void KeywordSpanningForest::add_tree_edge(Local u, Local v, EdgeRec& rec) {
    rec.tree = true;
    rec.arcs.clear();
    for (std::uint32_t j = 0; j <= rec.level; ++j) rec.arcs.push_back(link_at(u, v, j));
    set_exact_flag(rec, rec.level, true);
}

bool KeywordSpanningForest::counts_satisfy(const EttNode* root) const {
    if (slots_ == 0) return true;
    for (std::size_t k = 0; k < slots_; ++k)
        if (root->counts[k] < static_cast<std::uint32_t>(rho_)) return false;
    return true;
}

void KeywordSpanningForest::prune_tree(EttNode* level0_root) {
    std::vector<Local> members;
    detail::collect_selfs(level0_root, members);

    // tree edges of the component, via the level-0 arcs
    std::vector<const EttNode*> arcs;
    detail::collect_arcs(level0_root, arcs);
    for (const EttNode* a : arcs)
        if (a->va < a->vb) edges_.erase(edge_key(global_of_[a->va], global_of_[a->vb]));

    // non-tree edges at every level
    for (Local v : members) {
        for (std::uint32_t i = 0; i <= level_cap_; ++i) {
            for (Local w : nontree_[i][v]) {
                edges_.erase(edge_key(global_of_[v], global_of_[w]));
                if (w != v) nontree_[i][w].erase(v);
            }
            nontree_[i][v].clear();
        }
    }

    // release every treap this component owns, level by level
    for (std::uint32_t i = 0; i <= level_cap_; ++i) {
        std::vector<EttNode*> roots;
        for (Local v : members) {
            if (!selfs_[i][v]) continue;
            EttNode* r = detail::root_of(selfs_[i][v]);
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            selfs_[i][v] = nullptr;
        }
        for (EttNode* r : roots) free_tree(r);
    }

    std::vector<VertexId> out;
    out.reserve(members.size());
    for (Local v : members) {
        alive_[v] = 0;
        --alive_count_;
        out.push_back(global_of_[v]);
    }
    std::sort(out.begin(), out.end());
    pruned_.push_back(std::move(out));
    --num_trees_;
}

std::vector<std::vector<VertexId>> KeywordSpanningForest::take_pruned_components() {
    return std::exchange(pruned_, {});
}

bool KeywordSpanningForest::has_vertex(VertexId v) const {
    auto it = local_of_.find(v);
    return it != local_of_.end() && alive_[it->second];
}

bool KeywordSpanningForest::has_edge(VertexId u, VertexId v) const {
    return edges_.count(edge_key(u, v)) != 0;
}

void KeywordSpanningForest::remove_isolated_vertex(VertexId gv) {
    auto it = local_of_.find(gv);
    if (it == local_of_.end() || !alive_[it->second]) return;
    Local v = it->second;
    EttNode* self0 = selfs_[0][v];
    if (self0->p || self0->l || self0->r)
        throw Error("vertex " + std::to_string(gv) + " still has tree edges");
    for (std::uint32_t i = 0; i <= level_cap_; ++i) {
        if (!nontree_[i][v].empty())
            throw Error("vertex " + std::to_string(gv) + " still has non-tree edges");
        if (selfs_[i][v]) {
            free_node(selfs_[i][v]);
            selfs_[i][v] = nullptr;
        }
    }
    alive_[v] = 0;
    --alive_count_;
    --num_trees_;
}

bool KeywordSpanningForest::delete_edge(VertexId gu, VertexId gv) {
    auto iu = local_of_.find(gu);
    auto iv = local_of_.find(gv);
    auto rec_it = edges_.find(edge_key(gu, gv));
    if (iu == local_of_.end() || iv == local_of_.end() || rec_it == edges_.end())
        throw EdgeAbsent(gu, gv);
    Local u = iu->second, v = iv->second;
    if (u > v) std::swap(u, v);
    EdgeRec rec = std::move(rec_it->second);
    edges_.erase(rec_it);

    if (!rec.tree) {
        nontree_[rec.level][u].erase(v);
        nontree_[rec.level][v].erase(u);
        return num_trees_ > 0;
    }

    const std::uint32_t lvl = rec.level;
    for (std::uint32_t i = lvl + 1; i-- > 0;) cut_at(rec.arcs[i].first, rec.arcs[i].second, i);

    // Replacement search from the edge's level downward. The smaller side is
    // recomputed per level: an edge leaving the level-l small side can still
    // land on the same side of a lower-level cut, so a single fixed side is
    // neither sound to relink nor complete to scan.
    Local rx = 0, ry = 0;
    std::uint32_t rlevel = 0;
    bool found = false;
    for (std::uint32_t i = lvl + 1; i-- > 0 && !found;) {
        EttNode* ru = detail::root_of(selfs_[i][u]);
        EttNode* rv = detail::root_of(selfs_[i][v]);
        EttNode* small_root = rv->sub_vertices < ru->sub_vertices ? rv : ru;
        std::vector<Local> small;
        detail::collect_selfs(small_root, small);

        // move the small side's tree edges pinned at this level one level up
        std::vector<EttNode*> exact;
        detail::collect_exact(small_root, exact);
        for (EttNode* arc : exact) {
            std::uint64_t key = edge_key(global_of_[arc->va], global_of_[arc->vb]);
            EdgeRec& trec = edges_.at(key);
            set_exact_flag(trec, trec.level, false);
            trec.level += 1;
            if (trec.level > level_cap_) throw Error("edge level exceeded the cap");
            max_level_seen_ = std::max(max_level_seen_, trec.level);
            trec.arcs.push_back(link_at(arc->va, arc->vb, trec.level));
            set_exact_flag(trec, trec.level, true);
        }

        ++small_epoch_;
        for (Local x : small) small_mark_[x] = small_epoch_;

        for (Local x : small) {
            std::vector<Local> snapshot(nontree_[i][x].begin(), nontree_[i][x].end());
            for (Local y : snapshot) {
                if (!nontree_[i][x].count(y)) continue;  // promoted via the other endpoint
                if (small_mark_[y] == small_epoch_) {
                    // stays inside the small side: promote one level
                    EdgeRec& nrec = edges_.at(edge_key(global_of_[x], global_of_[y]));
                    nontree_[i][x].erase(y);
                    nontree_[i][y].erase(x);
                    nrec.level = i + 1;
                    if (nrec.level > level_cap_) throw Error("edge level exceeded the cap");
                    max_level_seen_ = std::max(max_level_seen_, nrec.level);
                    nontree_[i + 1][x].insert(y);
                    nontree_[i + 1][y].insert(x);
                } else {
                    rx = x;
                    ry = y;
                    rlevel = i;
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
    }

    if (found) {
        nontree_[rlevel][rx].erase(ry);
        nontree_[rlevel][ry].erase(rx);
        EdgeRec& rrec = edges_.at(edge_key(global_of_[rx], global_of_[ry]));
        rrec.level = rlevel;
        add_tree_edge(rx, ry, rrec);
        return num_trees_ > 0;
    }

    // genuine split: examine both level-0 sides, prune the unsatisfying ones
    EttNode* tu = detail::root_of(selfs_[0][u]);
    EttNode* tv = detail::root_of(selfs_[0][v]);
    for (EttNode* side : {tu, tv})
        if (!counts_satisfy(side)) prune_tree(side);
    return num_trees_ > 0;
}

std::optional<KeywordSpanningForest::TreeView> KeywordSpanningForest::best_tree() const {
    std::optional<TreeView> best;
    std::vector<const EttNode*> seen;
    for (Local v = 0; v < alive_.size(); ++v) {
        if (!alive_[v]) continue;
        const EttNode* r = detail::root_of(selfs_[0][v]);
        if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
        seen.push_back(r);
        if (!best || r->sub_maxd < best->max_sqdist) {
            TreeView t;
            std::vector<Local> members;
            detail::collect_selfs(r, members);
            t.members.reserve(members.size());
            for (Local m : members) t.members.push_back(global_of_[m]);
            std::sort(t.members.begin(), t.members.end());
            t.counts = r->counts;
            t.max_sqdist = r->sub_maxd;
            best = std::move(t);
        }
    }
    return best;
}

std::vector<KeywordSpanningForest::TreeView> KeywordSpanningForest::trees() const {
    std::vector<TreeView> out;
    std::vector<const EttNode*> seen;
    for (Local v = 0; v < alive_.size(); ++v) {
        if (!alive_[v]) continue;
        const EttNode* r = detail::root_of(selfs_[0][v]);
        if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
        seen.push_back(r);
        TreeView t;
        std::vector<Local> members;
        detail::collect_selfs(r, members);
        for (Local m : members) t.members.push_back(global_of_[m]);
        std::sort(t.members.begin(), t.members.end());
        t.counts = r->counts;
        t.max_sqdist = r->sub_maxd;
        out.push_back(std::move(t));
    }
    return out;
}

void KeywordSpanningForest::check_invariants() const {
    const std::size_t n = alive_.size();
    // spanning property per level: treap components must equal connectivity
    // over edges of level >= i, restricted to alive vertices
    for (std::uint32_t i = 0; i <= level_cap_; ++i) {
        std::vector<Local> parent(n);
        for (Local v = 0; v < n; ++v) parent[v] = v;
        std::function<Local(Local)> find = [&](Local x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& [key, rec] : edges_) {
            if (rec.level < i) continue;
            Local a = local_of_.at(static_cast<VertexId>(key >> 32));
            Local b = local_of_.at(static_cast<VertexId>(key & 0xffffffffu));
            parent[find(a)] = find(b);
        }
        for (Local v = 0; v < n; ++v) {
            if (!alive_[v] || !selfs_[i][v]) continue;
            for (Local w = v + 1; w < n; ++w) {
                if (!alive_[w] || !selfs_[i][w]) continue;
                bool same_treap =
                    detail::root_of(selfs_[i][v]) == detail::root_of(selfs_[i][w]);
                bool same_comp = find(v) == find(w);
                if (same_treap != same_comp)
                    throw Error("level " + std::to_string(i) + " forest disagrees with edges");
            }
        }
        // tree edges at level >= i must have arcs at level i (nesting)
        for (const auto& [key, rec] : edges_) {
            if (!rec.tree) continue;
            if (rec.arcs.size() != rec.level + 1) throw Error("arc vector size mismatch");
        }
        // every edge of level >= i must connect vertices of one level-i tree
        for (const auto& [key, rec] : edges_) {
            if (rec.level < i) continue;
            Local a = local_of_.at(static_cast<VertexId>(key >> 32));
            Local b = local_of_.at(static_cast<VertexId>(key & 0xffffffffu));
            if (!selfs_[i][a] || !selfs_[i][b] ||
                detail::root_of(selfs_[i][a]) != detail::root_of(selfs_[i][b]))
                throw Error("level " + std::to_string(i) + " edge spans two trees");
        }
        // size bound
        std::vector<const EttNode*> seen;
        for (Local v = 0; v < n; ++v) {
            if (!alive_[v] || !selfs_[i][v]) continue;
            const EttNode* r = detail::root_of(selfs_[i][v]);
            if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
            seen.push_back(r);
            if (r->sub_vertices > global_of_.size() / (std::size_t{1} << i))
                throw Error("level " + std::to_string(i) + " tree too large");
        }
    }
    // keyword counters at level 0 match a recount
    for (const TreeView& t : trees()) {
        std::vector<std::uint32_t> recount(slots_, 0);
        for (VertexId g : t.members) {
            std::int16_t k = ctx_->phi_index[g];
            if (k >= 0) ++recount[k];
        }
        if (recount != t.counts) throw Error("keyword counters diverge from recount");
    }
}

}  // namespace gst
