#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gst/graph.hpp"
#include "gst/truss.hpp"
#include "gst/io.hpp"

namespace gst {

/// Stage entry point used by the benchmark so pre-pruning can be timed
/// separately; equivalent to run_query when handed the components of
/// maximal_truss_components(g, q).
SearchResult run_query_pruned(const GeoSocialGraph& g, const Query& q,
                              const std::vector<TrussSubgraph>& components);

struct BenchPlan {
    std::vector<std::string> algos = {"mkasg", "inc", "dec", "bin"};
    std::vector<int> c_values = {6};
    std::vector<int> phi_values = {3};
    std::vector<int> rho_values = {3};
    int queries_per_cell = 10;
    std::uint64_t seed = 1;
    double delta = 2.0;
};

/// Sweeps the parameter grid with random queries (locations uniform over the
/// data bounding box, keywords sampled without replacement). Returns the TSV
/// result table, which is byte-stable under a fixed seed; wall-clock means
/// per algorithm are written to `timing_report`, kept out of the table.
std::string run_bench(const GeoSocialGraph& g, const BenchPlan& plan,
                      std::string* timing_report = nullptr);

}  // namespace gst
