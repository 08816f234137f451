#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "gst/baselines.hpp"
#include "gst/errors.hpp"
#include "gst/instances.hpp"
#include "gst/pipeline.hpp"
#include "gst/reduce.hpp"

using namespace gst;

TEST_CASE("a minimal candidate comes back unchanged") {
    // the K4 is exactly minimal: deleting any vertex breaks the truss
    auto g = fixtures::k4_graph();
    Query q;
    q.location = {0, 0};
    q.keywords = {fixtures::K1, fixtures::K2};
    q.min_keyword_count = 2;
    q.trussness = 4;
    auto ctx = QueryContext::make(g, q);
    Group s;
    s.vertices = {0, 1, 2, 3};
    s.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    s.dist = 4.0;
    QueryStats stats;
    Group out = run_reducing(s, ctx, stats);
    CHECK(out.vertices == s.vertices);
    CHECK(out.edges.size() == 6);
    CHECK(out.dist == doctest::Approx(4.0));
    CHECK(stats.reduce_vertices_deleted == 1);  // the first deletion already fails
}

TEST_CASE("the farther of two disjoint satisfying parts is peeled away") {
    // two K4s; the near one is the answer even though both satisfy
    std::vector<VertexAttr> attrs;
    std::vector<Edge> edges;
    for (int b = 0; b < 2; ++b) {
        double base_x = b == 0 ? 1.0 : 50.0;
        for (int i = 0; i < 4; ++i)
            attrs.push_back({base_x + 0.1 * i, 0.0, static_cast<KeywordId>(i % 2)});
        VertexId base = static_cast<VertexId>(4 * b);
        for (VertexId u = 0; u < 4; ++u)
            for (VertexId v = u + 1; v < 4; ++v)
                edges.push_back({static_cast<VertexId>(base + u),
                                 static_cast<VertexId>(base + v)});
    }
    auto g = fixtures::make_graph(attrs, edges, 2);
    Query q;
    q.location = {0, 0};
    q.keywords = {0, 1};
    q.min_keyword_count = 2;
    q.trussness = 4;
    auto ctx = QueryContext::make(g, q);
    Group s;
    for (VertexId v = 0; v < 8; ++v) s.vertices.push_back(v);
    s.edges = edges;
    s.dist = distance(q.location, 7, g);
    QueryStats stats;
    Group out = run_reducing(s, ctx, stats);
    CHECK(out.vertices == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(out.dist == doctest::Approx(distance(q.location, 3, g)));
    CHECK(validate_group(out, q, g));
}

TEST_CASE("rejects a candidate that meets no constraint") {
    auto g = fixtures::k4_graph();
    Query q;
    q.location = {0, 0};
    q.keywords = {fixtures::K1};
    q.min_keyword_count = 3;  // only two k1 vertices exist
    q.trussness = 4;
    auto ctx = QueryContext::make(g, q);
    Group s;
    s.vertices = {0, 1, 2, 3};
    s.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    QueryStats stats;
    CHECK_THROWS_AS(run_reducing(s, ctx, stats), InvalidCandidate);

    Group thin;  // support below the requirement
    thin.vertices = {0, 1};
    thin.edges = {{0, 1}};
    CHECK_THROWS_AS(run_reducing(thin, ctx, stats), InvalidCandidate);
}

TEST_CASE("full pipeline on the dense instance returns the whole region") {
    auto g = fixtures::quest_truss_graph();
    auto q = fixtures::quest_query();
    auto result = run_query(g, q);
    REQUIRE(result.group.has_value());
    CHECK(result.group->vertices.size() == 6);
    CHECK(result.group->dist == doctest::Approx(3.0));
    CHECK(validate_group(*result.group, q, g));
    // reducing tried to peel f and stopped when everything starved
    CHECK(result.stats.reduce_vertices_deleted >= 1);
}

TEST_CASE("reduced answers match the exhaustive oracle") {
    Rng rng(19);
    InstanceOptions iopt;
    iopt.min_vertices = 10;
    iopt.max_vertices = 50;
    QueryOptions qopt;
    int found = 0;
    for (int t = 0; t < 250; ++t) {
        auto g = random_graph(rng, iopt);
        auto q = random_query(rng, g, qopt);
        auto oracle = brute_force_optimum(g, q);
        auto pipe = run_query(g, q);
        REQUIRE(pipe.group.has_value() == oracle.has_value());
        if (oracle) {
            ++found;
            CHECK(pipe.group->dist == oracle->dist);
            CHECK(validate_group(*pipe.group, q, g));
        }
    }
    CHECK(found > 20);
}

TEST_CASE("reducer snapshots stay valid at every step") {
    // drive a pipeline whose reduction takes several vertex deletions
    Rng rng(23);
    InstanceOptions iopt;
    iopt.min_vertices = 25;
    iopt.max_vertices = 40;
    iopt.min_edge_prob = 0.3;
    iopt.max_edge_prob = 0.45;
    QueryOptions qopt;
    qopt.min_rho = 1;
    qopt.max_rho = 1;
    int exercised = 0;
    for (int t = 0; t < 60; ++t) {
        auto g = random_graph(rng, iopt);
        auto q = random_query(rng, g, qopt);
        auto pipe = run_query(g, q);
        if (!pipe.group) continue;
        CHECK(validate_group(*pipe.group, q, g));
        if (pipe.stats.reduce_vertices_deleted > 2) ++exercised;
        CHECK(pipe.stats.forest_max_level <= pipe.stats.forest_level_cap);
        std::uint64_t ops = pipe.stats.forest_cut_ops + pipe.stats.forest_link_ops;
        if (pipe.stats.forest_op_budget > 0) CHECK(ops <= pipe.stats.forest_op_budget);
    }
    CHECK(exercised > 5);
}
