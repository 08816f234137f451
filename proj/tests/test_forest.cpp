#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "fixtures.hpp"
#include "gst/errors.hpp"
#include "gst/forest.hpp"
#include "gst/instances.hpp"
#include "gst/verify.hpp"

using namespace gst;

namespace {

Group whole_graph_group(const GeoSocialGraph& g) {
    Group s;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        s.vertices.push_back(static_cast<VertexId>(v));
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (VertexId w : g.neighbors(static_cast<VertexId>(v)))
            if (v < w) s.edges.emplace_back(static_cast<VertexId>(v), w);
    return s;
}

}  // namespace

TEST_CASE("K4 builds one tree with three spare edges") {
    auto g = fixtures::k4_graph();
    Query q;
    q.location = {0, 0};
    q.keywords = {fixtures::K1};
    q.min_keyword_count = 1;
    auto ctx = QueryContext::make(g, q);
    KeywordSpanningForest forest(whole_graph_group(g), ctx);
    CHECK(forest.tree_count() == 1);
    CHECK(forest.alive_vertices() == 4);
    // 3 tree edges + 3 non-tree edges; deleting any non-tree edge keeps one tree
    forest.check_invariants();
    auto trees = forest.trees();
    REQUIRE(trees.size() == 1);
    CHECK(trees[0].members == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(trees[0].counts[0] == 2);
}

TEST_CASE("two components get independent counters") {
    std::vector<VertexAttr> attrs(6, {0, 0, 0});
    attrs[3].keyword = attrs[4].keyword = attrs[5].keyword = 1;
    auto g = fixtures::make_graph(attrs, {{0, 1}, {1, 2}, {3, 4}, {4, 5}}, 2);
    Query q;
    q.location = {0, 0};
    q.keywords = {0};
    q.min_keyword_count = 1;
    auto ctx = QueryContext::make(g, q);
    KeywordSpanningForest forest(whole_graph_group(g), ctx);
    // the {3,4,5} side carries no k1 and is pruned up front
    CHECK(forest.tree_count() == 1);
    auto pruned = forest.take_pruned_components();
    REQUIRE(pruned.size() == 1);
    CHECK(pruned[0] == std::vector<VertexId>{3, 4, 5});
    auto trees = forest.trees();
    REQUIRE(trees.size() == 1);
    CHECK(trees[0].members == std::vector<VertexId>{0, 1, 2});
    CHECK(trees[0].counts == std::vector<std::uint32_t>{3});
}

TEST_CASE("replacement chain, split, and the surviving counters") {
    // the dense instance with the extra (f,g) edge; del f's edges one by one
    auto g = fixtures::quest_truss_graph(true);
    Query q = fixtures::quest_query(1);  // rho=1 keeps the remainder alive
    auto ctx = QueryContext::make(g, q);
    KeywordSpanningForest forest(whole_graph_group(g), ctx);
    CHECK(forest.tree_count() == 1);

    // non-tree deletions are trivial
    CHECK(forest.delete_edge(fixtures::F, fixtures::I));
    forest.check_invariants();
    // tree-edge deletions keep finding replacements while f has spare edges
    CHECK(forest.delete_edge(fixtures::E, fixtures::F));
    forest.check_invariants();
    CHECK(forest.tree_count() == 1);
    CHECK(forest.delete_edge(fixtures::F, fixtures::G));
    forest.check_invariants();
    CHECK(forest.tree_count() == 1);

    // the last edge disconnects f; the remainder satisfies rho=1
    CHECK(forest.delete_edge(fixtures::F, fixtures::H));
    forest.check_invariants();
    auto trees = forest.trees();
    // f's side fails the keyword minimums (no k1, no k2) and is pruned
    auto pruned = forest.take_pruned_components();
    REQUIRE(pruned.size() == 1);
    CHECK(pruned[0] == std::vector<VertexId>{fixtures::F});
    REQUIRE(trees.size() == 1);
    CHECK(trees[0].members ==
          std::vector<VertexId>{fixtures::D, fixtures::E, fixtures::G, fixtures::H,
                                fixtures::I});
    CHECK(trees[0].counts == std::vector<std::uint32_t>{2, 2, 1});
}

TEST_CASE("a split that starves both sides empties the forest") {
    auto g = fixtures::quest_truss_graph(true);
    Query q = fixtures::quest_query(2);  // rho=2: losing f starves k3
    auto ctx = QueryContext::make(g, q);
    KeywordSpanningForest forest(whole_graph_group(g), ctx);

    CHECK(forest.delete_edge(fixtures::F, fixtures::I));
    CHECK(forest.delete_edge(fixtures::F, fixtures::G));
    CHECK(forest.delete_edge(fixtures::F, fixtures::H));
    // f now hangs on its last edge; cutting it fails both sides
    CHECK_FALSE(forest.delete_edge(fixtures::E, fixtures::F));
    CHECK(forest.tree_count() == 0);
    auto pruned = forest.take_pruned_components();
    REQUIRE(pruned.size() == 2);
    CHECK(pruned[0].size() == 5);
    CHECK(pruned[1] == std::vector<VertexId>{fixtures::F});
}

TEST_CASE("deleting an absent edge raises") {
    auto g = fixtures::k4_graph();
    Query q;
    q.location = {0, 0};
    q.keywords = {fixtures::K1};
    q.min_keyword_count = 1;
    auto ctx = QueryContext::make(g, q);
    KeywordSpanningForest forest(whole_graph_group(g), ctx);
    CHECK_THROWS_AS(forest.delete_edge(0, 0), EdgeAbsent);
    CHECK(forest.delete_edge(2, 3));
    CHECK_THROWS_AS(forest.delete_edge(2, 3), EdgeAbsent);
}

TEST_CASE("isolated vertices leave as singleton trees") {
    std::vector<VertexAttr> attrs(2, {0, 0, 0});
    auto g = fixtures::make_graph(attrs, {{0, 1}}, 1);
    Query q;
    q.location = {0, 0};
    q.keywords = {0};
    q.min_keyword_count = 1;
    auto ctx = QueryContext::make(g, q);
    KeywordSpanningForest forest(whole_graph_group(g), ctx);
    CHECK(forest.tree_count() == 1);
    CHECK(forest.delete_edge(0, 1));  // both singletons satisfy rho=1
    CHECK(forest.tree_count() == 2);
    forest.remove_isolated_vertex(0);
    CHECK(forest.tree_count() == 1);
    CHECK_FALSE(forest.has_vertex(0));
    CHECK(forest.has_vertex(1));
}

TEST_CASE("components and counters track a shadow graph through full streams") {
    auto rep = run_forest_suite(1234, 60, 40);
    INFO(rep.failure);
    CHECK(rep.ok);
    CHECK(rep.deletions_checked > 500);
    CHECK(rep.level_bound_ok);
}

TEST_CASE("structural audit passes along random deletion streams") {
    Rng rng(77);
    InstanceOptions iopt;
    iopt.min_vertices = 8;
    iopt.max_vertices = 26;
    iopt.min_edge_prob = 0.15;
    iopt.max_edge_prob = 0.35;
    QueryOptions qopt;
    qopt.min_rho = 1;
    qopt.max_rho = 1;
    for (int t = 0; t < 15; ++t) {
        auto g = random_graph(rng, iopt);
        auto q = random_query(rng, g, qopt);
        auto ctx = QueryContext::make(g, q);
        Group s = whole_graph_group(g);
        if (s.edges.empty()) continue;
        KeywordSpanningForest forest(s, ctx);
        forest.take_pruned_components();
        std::vector<Edge> stream = s.edges;
        for (std::size_t i = 0; i + 1 < stream.size(); ++i)
            std::swap(stream[i], stream[i + rng.below(stream.size() - i)]);
        std::uint32_t cap = 0;
        while ((std::size_t{1} << cap) < s.vertices.size()) ++cap;
        for (const Edge& e : stream) {
            if (!forest.has_edge(e.u, e.v)) continue;
            forest.delete_edge(e.u, e.v);
            forest.take_pruned_components();
            forest.check_invariants();
            CHECK(forest.max_level_seen() <= cap);
        }
    }
}

TEST_CASE("cut and link operations stay inside the analytic budget") {
    Rng rng(88);
    InstanceOptions iopt;
    iopt.min_vertices = 30;
    iopt.max_vertices = 60;
    iopt.min_edge_prob = 0.2;
    iopt.max_edge_prob = 0.4;
    QueryOptions qopt;
    qopt.min_rho = 1;
    qopt.max_rho = 1;
    for (int t = 0; t < 10; ++t) {
        auto g = random_graph(rng, iopt);
        auto q = random_query(rng, g, qopt);
        auto ctx = QueryContext::make(g, q);
        Group s = whole_graph_group(g);
        if (s.edges.size() < 4) continue;
        KeywordSpanningForest forest(s, ctx);
        forest.take_pruned_components();
        std::vector<Edge> stream = s.edges;
        for (std::size_t i = 0; i + 1 < stream.size(); ++i)
            std::swap(stream[i], stream[i + rng.below(stream.size() - i)]);
        for (const Edge& e : stream) {
            if (!forest.has_edge(e.u, e.v)) continue;
            forest.delete_edge(e.u, e.v);
            forest.take_pruned_components();
        }
        std::uint32_t log_v = 0;
        while ((std::size_t{1} << log_v) < s.vertices.size()) ++log_v;
        std::uint64_t budget = 8ull * s.edges.size() * log_v * log_v;
        CHECK(forest.cut_ops() + forest.link_ops() <= budget);
    }
}
