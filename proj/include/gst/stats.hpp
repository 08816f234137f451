#pragma once

#include <cstdint>
#include <vector>

namespace gst {

struct ExpansionStep {
    std::uint64_t edges_total = 0;     // |E(H_{<=d})| after this round
    std::uint64_t vertices_total = 0;  // |V(H_{<=d})| after this round
    std::uint64_t slice_edges = 0;     // edges ingested this round
    std::uint64_t tp_vertices = 0;     // vertices handed to the truss check
    std::uint64_t tp_edges = 0;        // edges handed to the truss check
    bool found = false;
};

// Instrumentation carried alongside every answer (also on "no result").
struct QueryStats {
    std::uint64_t graph_vertices = 0;
    std::uint64_t graph_edges = 0;

    // pre-pruning: maximal truss components meeting the keyword minimums
    std::uint64_t pruned_components = 0;
    std::uint64_t pruned_vertices = 0;
    std::uint64_t pruned_edges = 0;

    bool lower_bound_found = false;
    double lower_bound_dist = -1.0;
    std::uint64_t lower_bound_edges = 0;  // edges consumed to reach it

    std::vector<ExpansionStep> expansion;
    std::uint64_t expansion_edge_sum = 0;    // sum of |E(H_{<=d_j})| over rounds
    double expansion_bound_factor = 0.0;     // edge_sum / final |E|
    double expansion_bound_limit = 0.0;      // 1 + growth/(growth-1)
    double expansion_work_ratio = 0.0;       // sum E_j^1.5 / E_last^1.5, reported only
    std::uint64_t satisfied_component_vertices = 0;  // vertices in satisfied UF sets, last round
    std::uint64_t truss_set_vertices = 0;            // vertices in maintained truss sets
    std::uint64_t candidate_validation_retries = 0;

    std::uint64_t candidate_vertices = 0;
    std::uint64_t candidate_edges = 0;

    std::uint64_t reduce_vertices_deleted = 0;
    std::uint64_t reduce_edges_deleted = 0;
    std::uint64_t forest_cut_ops = 0;
    std::uint64_t forest_link_ops = 0;
    std::uint64_t forest_op_budget = 0;   // 8 * |E(S)| * ceil(log2 |V(S)|)^2
    std::uint32_t forest_max_level = 0;
    std::uint32_t forest_level_cap = 0;
};

}  // namespace gst
