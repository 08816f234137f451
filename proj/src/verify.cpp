#include "gst/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "gst/baselines.hpp"
#include "gst/errors.hpp"
#include "gst/forest.hpp"
#include "gst/keyword_dsu.hpp"
#include "gst/pipeline.hpp"
#include "gst/spatial_order.hpp"
#include "gst/truss.hpp"

namespace gst {

namespace {

std::string fmt(double v) { return nlohmann::json(v).dump(); }

std::string describe(const std::optional<Group>& g) {
    if (!g) return "none";
    return "dist=" + fmt(g->dist) + " |V|=" + std::to_string(g->vertices.size());
}

}  // namespace

AgreementReport run_agreement_suite(std::uint64_t seed, int trials,
                                    const InstanceOptions& iopt, const QueryOptions& qopt) {
    AgreementReport rep;
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed + 0x1000ull * (t + 1));
        GeoSocialGraph g = random_graph(rng, iopt);
        Query q = random_query(rng, g, qopt);
        ++rep.trials;

        auto oracle = brute_force_optimum(g, q);
        SearchResult pipe = run_query(g, q);
        auto inc = run_incremental(g, q);
        auto dec = run_decremental(g, q);
        auto bin = run_binary_search(g, q);

        auto fail = [&](const std::string& why) {
            rep.ok = false;
            rep.failure = why + "\ninstance: " + dump_instance(g, q);
        };

        const bool found = oracle.has_value();
        if (pipe.group.has_value() != found || inc.has_value() != found ||
            dec.has_value() != found || bin.has_value() != found) {
            fail("found/none mismatch: oracle=" + describe(oracle) +
                 " pipeline=" + describe(pipe.group) + " inc=" + describe(inc) +
                 " dec=" + describe(dec) + " bin=" + describe(bin));
            return rep;
        }
        if (found) {
            ++rep.found_cases;
            const double want = oracle->dist;
            for (const auto& [name, got] :
                 std::initializer_list<std::pair<const char*, double>>{
                     {"pipeline", pipe.group->dist},
                     {"incremental", inc->dist},
                     {"decremental", dec->dist},
                     {"binary", bin->dist}}) {
                if (got != want) {
                    fail(std::string(name) + " dist " + fmt(got) + " != oracle " + fmt(want));
                    return rep;
                }
            }
            for (const auto& [name, grp] :
                 std::initializer_list<std::pair<const char*, const Group*>>{
                     {"oracle", &*oracle},
                     {"pipeline", &*pipe.group},
                     {"incremental", &*inc},
                     {"decremental", &*dec},
                     {"binary", &*bin}}) {
                if (!validate_group(*grp, q, g)) {
                    fail(std::string(name) + " returned an invalid group");
                    return rep;
                }
            }
        } else {
            ++rep.none_cases;
        }

        // instrumented bound checks ride along on the pipeline run
        const QueryStats& st = pipe.stats;
        rep.bound_limit = st.expansion_bound_limit;
        if (!st.expansion.empty()) {
            rep.worst_bound_factor = std::max(rep.worst_bound_factor,
                                              st.expansion_bound_factor);
            if (st.expansion_bound_factor > st.expansion_bound_limit) {
                ++rep.bound_violations;
                fail("expansion sum factor " + fmt(st.expansion_bound_factor) +
                     " exceeds limit " + fmt(st.expansion_bound_limit));
                return rep;
            }
        }
        if (found && st.lower_bound_found && pipe.group &&
            st.lower_bound_dist > pipe.group->dist + 1e-12) {
            ++rep.lower_bound_violations;
            fail("lower bound " + fmt(st.lower_bound_dist) + " above answer " +
                 fmt(pipe.group->dist));
            return rep;
        }
        if (found && st.expansion.size() >= 2) {
            ++rep.multi_round_cases;
            if (st.expansion[st.expansion.size() - 2].found) {
                ++rep.bracket_violations;
                fail("penultimate expansion round already reported a candidate");
                return rep;
            }
        }
        // the final region may exceed the optimum region by at most the
        // growth factor, plus whatever ties at the last radius pull in
        if (found && !st.expansion.empty()) {
            auto comps = maximal_truss_components(g, q);
            QueryContext ctx = QueryContext::make(g, q);
            auto array = SortedEdgeArray::build(comps, ctx);
            const double opt_sq = oracle->dist * oracle->dist;
            std::size_t edges_opt = 0;
            for (const auto& e : array.all())
                if (e.sqdist <= opt_sq + 1e-9) ++edges_opt;
            const std::uint64_t e_last = st.expansion.back().edges_total;
            double last_radius = -1.0;
            std::size_t ties = 0;
            if (e_last > 0 && e_last <= array.size()) {
                last_radius = array.all()[e_last - 1].sqdist;
                for (const auto& e : array.all())
                    if (e.sqdist == last_radius) ++ties;
            }
            if (edges_opt > 0) {
                double ratio = static_cast<double>(e_last) / static_cast<double>(edges_opt);
                rep.worst_overshoot_ratio = std::max(rep.worst_overshoot_ratio, ratio);
                double allowed = q.growth_factor +
                                 static_cast<double>(ties) / static_cast<double>(edges_opt);
                if (st.expansion.size() >= 2 && ratio > allowed + 1e-9) {
                    ++rep.overshoot_violations;
                    fail("final region " + std::to_string(e_last) + " edges vs optimum " +
                         std::to_string(edges_opt) + " exceeds the growth bound");
                    return rep;
                }
            }
        }
        if (found && st.forest_op_budget > 0) {
            double ratio = static_cast<double>(st.forest_cut_ops + st.forest_link_ops) /
                           static_cast<double>(st.forest_op_budget);
            rep.worst_budget_ratio = std::max(rep.worst_budget_ratio, ratio);
            if (ratio > 1.0) {
                ++rep.budget_violations;
                fail("forest operations " +
                     std::to_string(st.forest_cut_ops + st.forest_link_ops) +
                     " exceed budget " + std::to_string(st.forest_op_budget));
                return rep;
            }
            rep.max_forest_level = std::max(rep.max_forest_level, st.forest_max_level);
            if (st.forest_max_level > st.forest_level_cap) {
                fail("forest level " + std::to_string(st.forest_max_level) + " over cap " +
                     std::to_string(st.forest_level_cap));
                return rep;
            }
        }
    }
    return rep;
}

namespace {

// cubic triangle recount, used only here
int cubic_support(const GeoSocialGraph& g, const std::set<std::uint64_t>& alive, VertexId u,
                  VertexId v) {
    int sup = 0;
    for (std::size_t w = 0; w < g.vertex_count(); ++w) {
        VertexId wi = static_cast<VertexId>(w);
        if (wi == u || wi == v) continue;
        if (alive.count(edge_key(u, wi)) && alive.count(edge_key(v, wi))) ++sup;
    }
    return sup;
}

std::set<std::uint64_t> cubic_truss(const GeoSocialGraph& g, int c) {
    std::set<std::uint64_t> alive;
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
        for (VertexId v : g.neighbors(static_cast<VertexId>(u)))
            if (u < v) alive.insert(edge_key(static_cast<VertexId>(u), v));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::uint64_t> drop;
        for (std::uint64_t key : alive) {
            auto u = static_cast<VertexId>(key >> 32);
            auto v = static_cast<VertexId>(key & 0xffffffffu);
            if (cubic_support(g, alive, u, v) < c - 2) drop.push_back(key);
        }
        for (auto key : drop) alive.erase(key);
        changed = !drop.empty();
    }
    return alive;
}

std::set<std::uint64_t> engine_edge_set(const std::vector<TrussSubgraph>& comps) {
    std::set<std::uint64_t> out;
    for (const auto& comp : comps)
        for (const Edge& e : comp.edges) out.insert(edge_key(e));
    return out;
}

}  // namespace

TrussOracleReport run_truss_suite(std::uint64_t seed, int trials, Fault fault) {
    TrussOracleReport rep;
    InstanceOptions iopt;
    iopt.min_vertices = 6;
    iopt.max_vertices = 30;
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed + 0x2000ull * (t + 1));
        GeoSocialGraph g = random_graph(rng, iopt);
        int c = 3 + static_cast<int>(rng.below(3));  // 3..5
        ++rep.extraction_trials;

        std::vector<VertexId> all(g.vertex_count());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<VertexId>(i);
        auto comps = extract_ctruss(g.adjacency(), all, c);
        if (engine_edge_set(comps) != cubic_truss(g, c)) {
            rep.ok = false;
            rep.failure = "extraction disagrees with cubic peeling at c=" + std::to_string(c);
            return rep;
        }

        // decremental maintenance against from-scratch extraction
        ++rep.deletion_trials;
        TrussState state(comps, c);
        state.debug_skip_cascade = (fault == Fault::skip_cascade);
        std::vector<char> removed(g.vertex_count(), 0);
        std::vector<VertexId> order = all;
        for (std::size_t i = 0; i + 1 < order.size(); ++i)
            std::swap(order[i], order[i + rng.below(order.size() - i)]);
        for (VertexId u : order) {
            if (!state.contains(u)) continue;
            state.delete_vertex(u, [](const Edge&) { return true; });
            state.drop_vertex(u);
            removed[u] = 1;
            ++rep.deletions_checked;

            AdjacencyList adj(g.vertex_count());
            std::vector<VertexId> verts;
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                if (removed[v]) continue;
                verts.push_back(static_cast<VertexId>(v));
                for (VertexId w : g.neighbors(static_cast<VertexId>(v)))
                    if (!removed[w]) adj[v].push_back(w);
            }
            auto expect = engine_edge_set(extract_ctruss(adj, verts, c));
            auto got = state.edges();
            std::set<std::uint64_t> got_set;
            for (const Edge& e : got) got_set.insert(edge_key(e));
            if (got_set != expect) {
                rep.ok = false;
                rep.failure = "decremental state diverges from re-extraction after deleting " +
                              std::to_string(u) + " (c=" + std::to_string(c) + ")";
                return rep;
            }
        }
    }
    return rep;
}

ForestOracleReport run_forest_suite(std::uint64_t seed, int trials, std::size_t max_n) {
    ForestOracleReport rep;
    InstanceOptions iopt;
    iopt.min_vertices = 4;
    iopt.max_vertices = max_n;
    iopt.min_edge_prob = 0.08;
    iopt.max_edge_prob = 0.3;
    QueryOptions qopt;
    qopt.min_c = 2;
    qopt.max_c = 2;  // trussness is irrelevant to the forest itself
    qopt.min_rho = 1;
    qopt.max_rho = 2;

    for (int t = 0; t < trials; ++t) {
        Rng rng(seed + 0x3000ull * (t + 1));
        GeoSocialGraph g = random_graph(rng, iopt);
        Query q = random_query(rng, g, qopt);
        QueryContext ctx = QueryContext::make(g, q);

        Group s;
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            s.vertices.push_back(static_cast<VertexId>(v));
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            for (VertexId w : g.neighbors(static_cast<VertexId>(v)))
                if (v < w) s.edges.emplace_back(static_cast<VertexId>(v), w);
        if (s.edges.empty()) continue;
        ++rep.trials;

        KeywordSpanningForest forest(s, ctx);
        // shadow graph mirrors deletions and prunes
        std::set<std::uint64_t> shadow_edges;
        std::set<VertexId> shadow_alive;
        for (const Edge& e : s.edges) shadow_edges.insert(edge_key(e));
        for (VertexId v : s.vertices) shadow_alive.insert(v);
        for (const auto& comp : forest.take_pruned_components())
            for (VertexId v : comp) {
                shadow_alive.erase(v);
                for (VertexId w : g.neighbors(v)) shadow_edges.erase(edge_key(v, w));
            }

        std::vector<Edge> stream = s.edges;
        for (std::size_t i = 0; i + 1 < stream.size(); ++i)
            std::swap(stream[i], stream[i + rng.below(stream.size() - i)]);

        auto compare = [&]() -> bool {
            std::map<VertexId, std::vector<VertexId>> adj;
            for (std::uint64_t key : shadow_edges) {
                auto u = static_cast<VertexId>(key >> 32);
                auto v = static_cast<VertexId>(key & 0xffffffffu);
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
            std::set<VertexId> left(shadow_alive);
            std::vector<std::pair<std::vector<VertexId>, std::vector<std::uint32_t>>> comps;
            while (!left.empty()) {
                VertexId src = *left.begin();
                std::vector<VertexId> comp;
                std::queue<VertexId> bfs;
                bfs.push(src);
                left.erase(src);
                while (!bfs.empty()) {
                    VertexId v = bfs.front();
                    bfs.pop();
                    comp.push_back(v);
                    auto it = adj.find(v);
                    if (it == adj.end()) continue;
                    for (VertexId w : it->second)
                        if (left.erase(w)) bfs.push(w);
                }
                std::sort(comp.begin(), comp.end());
                std::vector<std::uint32_t> counts(q.keywords.size(), 0);
                for (VertexId v : comp)
                    if (ctx.phi_index[v] >= 0) ++counts[ctx.phi_index[v]];
                comps.emplace_back(std::move(comp), std::move(counts));
            }
            std::sort(comps.begin(), comps.end());
            auto trees = forest.trees();
            std::vector<std::pair<std::vector<VertexId>, std::vector<std::uint32_t>>> got;
            for (auto& tv : trees) got.emplace_back(tv.members, tv.counts);
            std::sort(got.begin(), got.end());
            return got == comps;
        };

        for (const Edge& e : stream) {
            if (!forest.has_edge(e.u, e.v)) continue;  // pruned earlier
            forest.delete_edge(e.u, e.v);
            shadow_edges.erase(edge_key(e));
            for (const auto& comp : forest.take_pruned_components())
                for (VertexId v : comp) {
                    shadow_alive.erase(v);
                    for (VertexId w : g.neighbors(v)) shadow_edges.erase(edge_key(v, w));
                }
            ++rep.deletions_checked;
            if (!compare()) {
                rep.ok = false;
                rep.failure = "forest components diverge from recomputation\ninstance: " +
                              dump_instance(g, q);
                return rep;
            }
        }
        rep.max_level = std::max(rep.max_level, forest.max_level_seen());
        std::uint32_t cap = 0;
        while ((std::size_t{1} << cap) < s.vertices.size()) ++cap;
        if (forest.max_level_seen() > cap) {
            rep.level_bound_ok = false;
            rep.ok = false;
            rep.failure = "edge level exceeded ceil(log2 n)";
            return rep;
        }
    }
    return rep;
}

DsuOracleReport run_dsu_suite(std::uint64_t seed, int trials) {
    DsuOracleReport rep;
    InstanceOptions iopt;
    iopt.min_vertices = 4;
    iopt.max_vertices = 48;
    QueryOptions qopt;
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed + 0x4000ull * (t + 1));
        GeoSocialGraph g = random_graph(rng, iopt);
        Query q = random_query(rng, g, qopt);
        QueryContext ctx = QueryContext::make(g, q);
        ++rep.trials;

        KeywordDSU dsu(g.vertex_count(), q.keywords.size(), q.min_keyword_count);
        std::vector<Edge> edges;
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            for (VertexId w : g.neighbors(static_cast<VertexId>(v)))
                if (v < w) edges.emplace_back(static_cast<VertexId>(v), w);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            std::swap(edges[i], edges[i + rng.below(edges.size() - i)]);

        std::map<VertexId, std::set<VertexId>> shadow;
        for (const Edge& e : edges) {
            if (!dsu.contains(e.u)) dsu.insert_vertex(e.u, ctx.phi_index[e.u]);
            if (!dsu.contains(e.v)) dsu.insert_vertex(e.v, ctx.phi_index[e.v]);
            dsu.union_edge(e.u, e.v);
            shadow[e.u].insert(e.v);
            shadow[e.v].insert(e.u);
            ++rep.unions_checked;

            // recount: every satisfied root's members must be exactly one
            // connected component with matching counters
            for (const auto& [root, members] : dsu.satisfied_sets()) {
                std::set<VertexId> comp;
                std::queue<VertexId> bfs;
                bfs.push(members.front());
                comp.insert(members.front());
                while (!bfs.empty()) {
                    VertexId v = bfs.front();
                    bfs.pop();
                    auto it = shadow.find(v);
                    if (it == shadow.end()) continue;
                    for (VertexId w : it->second)
                        if (comp.insert(w).second) bfs.push(w);
                }
                std::set<VertexId> mset(members.begin(), members.end());
                if (mset != comp) {
                    rep.ok = false;
                    rep.failure = "satisfied set is not a full component\ninstance: " +
                                  dump_instance(g, q);
                    return rep;
                }
                std::vector<std::uint32_t> recount(q.keywords.size(), 0);
                for (VertexId v : members)
                    if (ctx.phi_index[v] >= 0) ++recount[ctx.phi_index[v]];
                auto counts = dsu.counts(root);
                for (std::size_t k = 0; k < q.keywords.size(); ++k)
                    if (recount[k] != counts[k]) {
                        rep.ok = false;
                        rep.failure = "keyword counters diverge from recount\ninstance: " +
                                      dump_instance(g, q);
                        return rep;
                    }
            }
        }
    }
    return rep;
}

VerifyReport run_verify(const VerifyOptions& opt) {
    VerifyReport out;
    std::ostringstream text;

    if (opt.agreement_trials == 0 && opt.truss_trials == 0 && opt.forest_trials == 0 &&
        opt.dsu_trials == 0)
        text << "warning: zero trials requested, vacuous pass\n";

    InstanceOptions iopt;
    iopt.max_vertices = opt.max_n;
    QueryOptions qopt;
    auto agree = run_agreement_suite(opt.seed, opt.agreement_trials, iopt, qopt);
    text << "agreement: trials=" << agree.trials << " found=" << agree.found_cases
         << " none=" << agree.none_cases << " " << (agree.ok ? "ok" : "FAIL") << "\n";
    text << "expansion_bound: worst=" << fmt(agree.worst_bound_factor)
         << " limit=" << fmt(agree.bound_limit) << " violations=" << agree.bound_violations
         << "\n";
    text << "lower_bound: violations=" << agree.lower_bound_violations << "\n";
    text << "bracket: multi_round=" << agree.multi_round_cases
         << " violations=" << agree.bracket_violations << "\n";
    text << "reduce_budget: worst_ratio=" << fmt(agree.worst_budget_ratio)
         << " violations=" << agree.budget_violations
         << " max_level=" << agree.max_forest_level << "\n";
    text << "region_overshoot: worst=" << fmt(agree.worst_overshoot_ratio)
         << " violations=" << agree.overshoot_violations << "\n";

    auto truss = run_truss_suite(opt.seed, opt.truss_trials, opt.fault);
    text << "truss: extractions=" << truss.extraction_trials
         << " deletion_streams=" << truss.deletion_trials
         << " deletions=" << truss.deletions_checked << " " << (truss.ok ? "ok" : "FAIL")
         << "\n";

    auto forest = run_forest_suite(opt.seed, opt.forest_trials);
    text << "forest: trials=" << forest.trials << " deletions=" << forest.deletions_checked
         << " max_level=" << forest.max_level << " " << (forest.ok ? "ok" : "FAIL") << "\n";

    auto dsu = run_dsu_suite(opt.seed, opt.dsu_trials);
    text << "dsu: trials=" << dsu.trials << " unions=" << dsu.unions_checked << " "
         << (dsu.ok ? "ok" : "FAIL") << "\n";

    out.ok = agree.ok && truss.ok && forest.ok && dsu.ok;
    text << "verdict: " << (out.ok ? "PASS" : "FAIL") << "\n";
    out.text = text.str();
    for (const auto* failure :
         {&agree.failure, &truss.failure, &forest.failure, &dsu.failure}) {
        if (!failure->empty()) {
            out.failure = *failure;
            break;
        }
    }
    return out;
}

}  // namespace gst
