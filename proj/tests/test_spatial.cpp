#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>

#include "fixtures.hpp"
#include "gst/errors.hpp"
#include "gst/instances.hpp"
#include "gst/spatial_order.hpp"
#include "gst/truss.hpp"

using namespace gst;

namespace {

SortedEdgeArray build_for(const GeoSocialGraph& g, const Query& q,
                          QueryContext& ctx_out) {
    ctx_out = QueryContext::make(g, q);
    std::vector<VertexId> all(g.vertex_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<VertexId>(i);
    // treat the whole graph as one component for ordering purposes
    TrussSubgraph comp;
    comp.vertices = all;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (VertexId w : g.neighbors(static_cast<VertexId>(v)))
            if (v < w) comp.edges.emplace_back(static_cast<VertexId>(v), w);
    return SortedEdgeArray::build({comp}, ctx_out);
}

bool ordered(const std::span<const SortedEdge>& edges) {
    for (std::size_t i = 1; i < edges.size(); ++i) {
        const auto& a = edges[i - 1];
        const auto& b = edges[i];
        if (a.sqdist > b.sqdist) return false;
        if (a.sqdist == b.sqdist && (a.u > b.u || (a.u == b.u && a.v > b.v))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("edges sort by max endpoint distance") {
    auto g = fixtures::quest_path_graph();
    QueryContext ctx;
    auto array = build_for(g, fixtures::quest_query(), ctx);
    REQUIRE(array.size() == 6);
    CHECK(ordered(array.all()));
    // nearest edge is (g,d), distance of d
    CHECK(array.all()[0].sqdist == doctest::Approx(1.44));
    // farthest edges are f's, at f's distance, tie-ordered (f,h) then (f,i)
    const auto& last = array.all()[5];
    const auto& prev = array.all()[4];
    CHECK(prev.sqdist == doctest::Approx(9.0));
    CHECK(last.sqdist == doctest::Approx(9.0));
    CHECK(Edge(prev.u, prev.v) == Edge(fixtures::F, fixtures::H));
    CHECK(Edge(last.u, last.v) == Edge(fixtures::F, fixtures::I));
}

TEST_CASE("per-component arrays merge into one sorted array") {
    // two components: K4 near the origin and K4 far away
    std::vector<VertexAttr> attrs;
    std::vector<Edge> edges;
    for (int b = 0; b < 2; ++b) {
        for (int i = 0; i < 4; ++i)
            attrs.push_back({10.0 * b + i * 0.1, 0.0, 0});
        VertexId base = static_cast<VertexId>(4 * b);
        for (VertexId u = 0; u < 4; ++u)
            for (VertexId v = u + 1; v < 4; ++v)
                edges.push_back({static_cast<VertexId>(base + u),
                                 static_cast<VertexId>(base + v)});
    }
    auto g = fixtures::make_graph(attrs, edges, 1);
    Query q;
    q.location = {0, 0};
    q.keywords = {0};
    QueryContext ctx = QueryContext::make(g, q);
    std::vector<VertexId> all(8);
    for (VertexId i = 0; i < 8; ++i) all[i] = i;
    auto comps = extract_ctruss(g.adjacency(), all, 4);
    REQUIRE(comps.size() == 2);
    auto array = SortedEdgeArray::build(comps, ctx);
    CHECK(array.size() == 12);
    CHECK(ordered(array.all()));
}

TEST_CASE("ordering equals a full comparison sort") {
    Rng rng(11);
    InstanceOptions opt;
    opt.min_vertices = 15;
    opt.max_vertices = 30;
    QueryOptions qopt;
    for (int t = 0; t < 30; ++t) {
        auto g = random_graph(rng, opt);
        auto q = random_query(rng, g, qopt);
        QueryContext ctx;
        auto array = build_for(g, q, ctx);
        std::vector<SortedEdge> expect(array.all().begin(), array.all().end());
        std::sort(expect.begin(), expect.end(), [](const SortedEdge& a, const SortedEdge& b) {
            if (a.sqdist != b.sqdist) return a.sqdist < b.sqdist;
            if (a.u != b.u) return a.u < b.u;
            return a.v < b.v;
        });
        bool same = true;
        for (std::size_t i = 0; i < expect.size(); ++i) {
            const auto& a = array.all()[i];
            if (a.sqdist != expect[i].sqdist || a.u != expect[i].u || a.v != expect[i].v)
                same = false;
        }
        CHECK(same);
    }
}

TEST_CASE("monotone slices partition the array") {
    auto g = fixtures::quest_path_graph();
    QueryContext ctx;
    auto array = build_for(g, fixtures::quest_query(), ctx);

    auto empty = array.edges_up_to(0.0);
    CHECK(empty.empty());
    auto first = array.edges_up_to(2.25);  // through (d,e)
    CHECK(first.size() == 2);
    auto again = array.edges_up_to(2.25);  // same radius: nothing new
    CHECK(again.empty());
    CHECK_THROWS_AS(array.edges_up_to(1.0), NonMonotoneRadius);
    auto rest = array.edges_up_to(std::numeric_limits<double>::infinity());
    CHECK(rest.size() == 4);
    CHECK(array.exhausted());
}

TEST_CASE("stepwise slices equal a direct filter") {
    Rng rng(12);
    InstanceOptions opt;
    opt.min_vertices = 20;
    opt.max_vertices = 30;
    QueryOptions qopt;
    for (int t = 0; t < 20; ++t) {
        auto g = random_graph(rng, opt);
        auto q = random_query(rng, g, qopt);
        QueryContext ctx;
        auto array = build_for(g, q, ctx);
        if (array.size() < 2) continue;
        double d1 = array.all()[array.size() / 3].sqdist;
        double d2 = array.all()[2 * array.size() / 3].sqdist;
        auto s1 = array.edges_up_to(d1);
        auto s2 = array.edges_up_to(d2);
        std::size_t expect = 0;
        for (const auto& e : array.all())
            if (e.sqdist <= d2) ++expect;
        CHECK(s1.size() + s2.size() == expect);
    }
}

TEST_CASE("radius for a target edge count") {
    auto g = fixtures::quest_path_graph();
    QueryContext ctx;
    auto array = build_for(g, fixtures::quest_query(), ctx);
    CHECK(array.radius_for_target_edges(1) == doctest::Approx(1.44));
    CHECK(array.radius_for_target_edges(6) == doctest::Approx(9.0));
    CHECK(array.radius_for_target_edges(100) == doctest::Approx(9.0));  // clamped

    Rng rng(13);
    InstanceOptions opt;
    QueryOptions qopt;
    for (int t = 0; t < 20; ++t) {
        auto rg = random_graph(rng, opt);
        auto q = random_query(rng, rg, qopt);
        QueryContext c2;
        auto a2 = build_for(rg, q, c2);
        if (a2.size() == 0) continue;
        std::size_t target = 1 + rng.below(a2.size());
        double d = a2.radius_for_target_edges(target);
        std::size_t count = 0, below = 0;
        for (const auto& e : a2.all()) {
            if (e.sqdist <= d) ++count;
            if (e.sqdist < d) ++below;
        }
        CHECK(count >= target);
        CHECK(below < target);  // d is minimal among realized distances
    }
}

TEST_CASE("all edges at one distance go out in a single batch") {
    // degenerate input: every vertex equidistant from the origin
    std::vector<VertexAttr> attrs = {
        {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
    auto g = fixtures::make_graph(attrs, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 1);
    Query q;
    q.location = {0, 0};
    q.keywords = {0};
    QueryContext ctx;
    auto array = build_for(g, q, ctx);
    CHECK(array.radius_for_target_edges(1) == doctest::Approx(1.0));
    auto slice = array.edges_up_to(1.0);
    CHECK(slice.size() == 6);
    CHECK(array.exhausted());
}
