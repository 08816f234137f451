#include "gst/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gst/baselines.hpp"
#include "gst/expand.hpp"
#include "gst/instances.hpp"
#include "gst/pipeline.hpp"
#include "gst/reduce.hpp"
#include "gst/spatial_order.hpp"

namespace gst {

SearchResult run_query_pruned(const GeoSocialGraph& g, const Query& q,
                              const std::vector<TrussSubgraph>& components) {
    SearchResult out;
    out.stats.graph_vertices = g.vertex_count();
    out.stats.graph_edges = g.edge_count();
    out.stats.pruned_components = components.size();
    for (const auto& comp : components) {
        out.stats.pruned_vertices += comp.vertices.size();
        out.stats.pruned_edges += comp.edges.size();
    }
    if (components.empty()) return out;

    QueryContext ctx = QueryContext::make(g, q);
    SortedEdgeArray array = SortedEdgeArray::build(components, ctx);
    auto candidate = run_expanding(array, ctx, out.stats);
    if (!candidate) return out;
    out.group = run_reducing(*candidate, ctx, out.stats);
    return out;
}

namespace {

struct QueryOutcome {
    bool ran = false;
    bool found = false;
    bool agree = true;
    double dist = 0.0;
    double h_ratio = 0.0;
    double expand_ratio = 0.0;
    double satisfied_ratio = 0.0;
    double truss_ratio = 0.0;
    double bound_factor = 0.0;
    double ms_prune = 0.0;
    std::vector<double> ms_algo;
};

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string fmt(double v) { return nlohmann::json(v).dump(); }

std::size_t thread_budget() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GST_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(v));
    }
    return std::min<std::size_t>(hw, 8);
}

}  // namespace

std::string run_bench(const GeoSocialGraph& g, const BenchPlan& plan,
                      std::string* timing_report) {
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        Point pt = g.position(static_cast<VertexId>(v));
        if (v == 0 || pt.x < min_x) min_x = pt.x;
        if (v == 0 || pt.x > max_x) max_x = pt.x;
        if (v == 0 || pt.y < min_y) min_y = pt.y;
        if (v == 0 || pt.y > max_y) max_y = pt.y;
    }

    std::ostringstream table;
    std::ostringstream timings;
    table << "c\tphi\trho\tqueries\tfound\tagree\tmean_dist\th_ratio\texpand_ratio"
          << "\tsatisfied_ratio\ttruss_ratio\tbound_max\n";

    const auto& algos = plan.algos;
    std::size_t cell_index = 0;
    for (int c : plan.c_values) {
        for (int phi : plan.phi_values) {
            for (int rho : plan.rho_values) {
                ++cell_index;
                const int n_queries = plan.queries_per_cell;
                std::vector<QueryOutcome> outcomes(n_queries);

                auto work = [&](int qi) {
                    Rng rng(plan.seed ^ (0x51ull * cell_index) ^
                            (0x9E3779B97F4A7C15ull * (qi + 1)));
                    Query q;
                    q.location = {rng.uniform(min_x, max_x), rng.uniform(min_y, max_y)};
                    q.trussness = c;
                    q.min_keyword_count = rho;
                    q.growth_factor = plan.delta;
                    const int universe = static_cast<int>(g.keyword_count());
                    int want = std::min(phi, universe);
                    std::vector<KeywordId> pool(universe);
                    for (int k = 0; k < universe; ++k) pool[k] = k;
                    for (int k = 0; k < want; ++k) {
                        std::size_t pick = k + rng.below(pool.size() - k);
                        std::swap(pool[k], pool[pick]);
                    }
                    q.keywords.assign(pool.begin(), pool.begin() + want);
                    std::sort(q.keywords.begin(), q.keywords.end());

                    QueryOutcome& out = outcomes[qi];
                    out.ran = true;
                    out.ms_algo.assign(algos.size(), 0.0);

                    double t0 = now_ms();
                    auto components = maximal_truss_components(g, q);
                    out.ms_prune = now_ms() - t0;
                    std::vector<VertexId> restrict_to;
                    for (const auto& comp : components)
                        restrict_to.insert(restrict_to.end(), comp.vertices.begin(),
                                           comp.vertices.end());
                    std::sort(restrict_to.begin(), restrict_to.end());

                    bool have_ref = false;
                    double ref_dist = 0.0;
                    bool ref_found = false;
                    for (std::size_t ai = 0; ai < algos.size(); ++ai) {
                        const std::string& algo = algos[ai];
                        std::optional<Group> got;
                        double start = now_ms();
                        if (algo == "mkasg") {
                            SearchResult r = run_query_pruned(g, q, components);
                            out.ms_algo[ai] = now_ms() - start;
                            got = r.group;
                            const QueryStats& st = r.stats;
                            if (st.graph_vertices)
                                out.h_ratio = static_cast<double>(st.pruned_vertices) /
                                              static_cast<double>(st.graph_vertices);
                            if (st.pruned_edges)
                                out.expand_ratio =
                                    static_cast<double>(st.expansion_edge_sum) /
                                    static_cast<double>(st.pruned_edges);
                            if (!st.expansion.empty() && st.expansion.back().vertices_total)
                                out.satisfied_ratio =
                                    static_cast<double>(st.satisfied_component_vertices) /
                                    static_cast<double>(st.expansion.back().vertices_total);
                            if (st.satisfied_component_vertices)
                                out.truss_ratio =
                                    static_cast<double>(st.truss_set_vertices) /
                                    static_cast<double>(st.satisfied_component_vertices);
                            out.bound_factor = st.expansion_bound_factor;
                        } else if (algo == "inc") {
                            got = run_incremental(g, q, restrict_to);
                            out.ms_algo[ai] = now_ms() - start;
                        } else if (algo == "dec") {
                            got = run_decremental(g, q, restrict_to);
                            out.ms_algo[ai] = now_ms() - start;
                        } else if (algo == "bin") {
                            got = run_binary_search(g, q, restrict_to);
                            out.ms_algo[ai] = now_ms() - start;
                        }
                        if (!have_ref) {
                            have_ref = true;
                            ref_found = got.has_value();
                            ref_dist = got ? got->dist : 0.0;
                            out.found = ref_found;
                            out.dist = ref_dist;
                        } else if (got.has_value() != ref_found ||
                                   (got && got->dist != ref_dist)) {
                            out.agree = false;
                        }
                    }
                };

                const std::size_t threads = std::min(thread_budget(),
                                                     static_cast<std::size_t>(n_queries));
                if (threads <= 1) {
                    for (int qi = 0; qi < n_queries; ++qi) work(qi);
                } else {
                    std::atomic<int> next{0};
                    std::vector<std::thread> pool;
                    for (std::size_t t = 0; t < threads; ++t)
                        pool.emplace_back([&]() {
                            int qi;
                            while ((qi = next.fetch_add(1)) < n_queries) work(qi);
                        });
                    for (auto& th : pool) th.join();
                }

                std::size_t found = 0, agree = 0;
                double dist_sum = 0.0, h_sum = 0.0, exp_sum = 0.0, sat_sum = 0.0,
                       truss_sum = 0.0, bound_max = 0.0;
                std::vector<double> ms_sums(algos.size(), 0.0);
                double prune_sum = 0.0;
                for (const QueryOutcome& o : outcomes) {
                    if (o.found) {
                        ++found;
                        dist_sum += o.dist;
                    }
                    if (o.agree) ++agree;
                    h_sum += o.h_ratio;
                    exp_sum += o.expand_ratio;
                    sat_sum += o.satisfied_ratio;
                    truss_sum += o.truss_ratio;
                    bound_max = std::max(bound_max, o.bound_factor);
                    prune_sum += o.ms_prune;
                    for (std::size_t ai = 0; ai < algos.size(); ++ai)
                        ms_sums[ai] += o.ms_algo[ai];
                }
                const double nq = std::max(1, n_queries);
                table << c << "\t" << phi << "\t" << rho << "\t" << n_queries << "\t" << found
                      << "\t" << agree << "\t" << fmt(found ? dist_sum / found : 0.0) << "\t"
                      << fmt(h_sum / nq) << "\t" << fmt(exp_sum / nq) << "\t"
                      << fmt(sat_sum / nq) << "\t" << fmt(truss_sum / nq) << "\t"
                      << fmt(bound_max) << "\n";
                timings << "cell c=" << c << " phi=" << phi << " rho=" << rho
                        << " prune_ms=" << prune_sum / nq;
                for (std::size_t ai = 0; ai < algos.size(); ++ai)
                    timings << " " << algos[ai] << "_ms=" << ms_sums[ai] / nq;
                timings << "\n";
            }
        }
    }
    if (timing_report) *timing_report = timings.str();
    return table.str();
}

}  // namespace gst
