#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "gst/graph.hpp"
#include "gst/types.hpp"

namespace gst {

namespace detail {
struct EttNode;
}

/// Leveled spanning forest with per-tree keyword counters, used to answer
/// "does a connected set meeting the keyword minimums survive?" after every
/// edge deletion. Spanning trees are kept as Euler tours over implicit
/// treaps, one structure per edge level, so cut and link cost O(log n) each.
/// Replacement search follows the edge-level scheme of Holm, de Lichtenberg
/// and Thorup: deleting a level-l tree edge promotes the smaller side's
/// level-l tree edges, then scans non-tree edges level by level, promoting
/// edges that stay inside the small side. Trees whose counters fall below
/// the query minimums are pruned wholesale since nothing inside them can be
/// part of an answer.
class KeywordSpanningForest {
  public:
    KeywordSpanningForest(const Group& s, const QueryContext& ctx);
    ~KeywordSpanningForest();

    KeywordSpanningForest(const KeywordSpanningForest&) = delete;
    KeywordSpanningForest& operator=(const KeywordSpanningForest&) = delete;

    /// Deletes the edge and maintains the forest; returns true iff at least
    /// one satisfying tree remains anywhere. Throws EdgeAbsent.
    bool delete_edge(VertexId u, VertexId v);

    /// Components pruned since the last call (global vertex ids); the caller
    /// mirrors these into the truss state.
    std::vector<std::vector<VertexId>> take_pruned_components();

    /// Drops a vertex that no longer has any tracked edge (a singleton tree).
    void remove_isolated_vertex(VertexId v);

    bool has_vertex(VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const;
    std::size_t tree_count() const { return num_trees_; }
    std::size_t alive_vertices() const { return alive_count_; }

    struct TreeView {
        std::vector<VertexId> members;  // global ids, sorted
        std::vector<std::uint32_t> counts;
        double max_sqdist = 0.0;
    };
    /// The satisfying tree with the smallest max member distance (ties: the
    /// one containing the smallest vertex id).
    std::optional<TreeView> best_tree() const;
    std::vector<TreeView> trees() const;  // deterministic order

    std::uint64_t cut_ops() const { return cut_ops_; }
    std::uint64_t link_ops() const { return link_ops_; }
    std::uint32_t max_level_seen() const { return max_level_seen_; }
    std::uint32_t level_cap() const { return level_cap_; }

    /// Test hook: full structural audit (level nesting, spanning property,
    /// tree size bounds, counter consistency). Throws Error on violation.
    void check_invariants() const;

  private:
    struct EdgeRec {
        std::uint32_t level = 0;
        bool tree = false;
        std::vector<std::pair<detail::EttNode*, detail::EttNode*>> arcs;  // per level
    };

    using Local = std::uint32_t;

    detail::EttNode* alloc_self(Local v, std::uint32_t level);
    detail::EttNode* alloc_arc(Local a, Local b, std::uint32_t level);
    void free_node(detail::EttNode* n);
    void free_tree(detail::EttNode* root);
    detail::EttNode* ensure_self(Local v, std::uint32_t level);

    std::pair<detail::EttNode*, detail::EttNode*> link_at(Local u, Local v,
                                                          std::uint32_t level);
    void cut_at(detail::EttNode* arc1, detail::EttNode* arc2, std::uint32_t level);
    detail::EttNode* reroot(detail::EttNode* self_node);

    void add_tree_edge(Local u, Local v, EdgeRec& rec);
    bool counts_satisfy(const detail::EttNode* root) const;
    void prune_tree(detail::EttNode* level0_root);
    void set_exact_flag(EdgeRec& rec, std::uint32_t level, bool value);

    const QueryContext* ctx_;
    std::size_t slots_;
    int rho_;
    std::uint32_t level_cap_ = 0;

    std::vector<VertexId> global_of_;            // local -> global
    std::unordered_map<VertexId, Local> local_of_;
    std::vector<char> alive_;
    std::vector<std::int16_t> phi_;
    std::vector<double> sqd_;
    std::size_t alive_count_ = 0;

    std::vector<std::vector<detail::EttNode*>> selfs_;     // [level][local]
    std::vector<std::vector<std::set<Local>>> nontree_;    // [level][local]
    std::unordered_map<std::uint64_t, EdgeRec> edges_;

    std::size_t num_trees_ = 0;
    std::vector<std::vector<VertexId>> pruned_;
    std::uint64_t cut_ops_ = 0;
    std::uint64_t link_ops_ = 0;
    std::uint32_t max_level_seen_ = 0;

    std::vector<detail::EttNode*> free_list_;
    std::vector<detail::EttNode*> all_nodes_;
    std::uint64_t prio_state_;

    std::vector<std::uint32_t> small_mark_;
    std::uint32_t small_epoch_ = 0;
};

}  // namespace gst
