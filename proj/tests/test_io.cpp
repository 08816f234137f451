#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "gst/errors.hpp"
#include "gst/instances.hpp"
#include "gst/io.hpp"

using namespace gst;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& content) {
        path = std::filesystem::temp_directory_path() / name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("load K4 from files") {
    TempFile vf("gst_k4_v.tsv",
                "# id x y keyword\n"
                "a\t0\t0\tred\n"
                "b\t1\t0\tred\n"
                "c\t0\t1\tblue\n"
                "d\t1\t1\tblue\n");
    TempFile ef("gst_k4_e.tsv",
                "a\tb\na\tc\na\td\nb\tc\nb\td\nc\td\n");
    LoadReport rep;
    auto g = load_graph(vf.path.string(), ef.path.string(), &rep);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 6);
    CHECK(rep.vertices == 4);
    CHECK(rep.edges == 6);
    CHECK(g.keyword_id("red") != kNoKeyword);
    CHECK(g.keyword_id("green") == kNoKeyword);
}

TEST_CASE("dangling edge and duplicate vertex are errors") {
    TempFile vf("gst_d_v.tsv", "a\t0\t0\tk\nb\t1\t0\tk\n");
    TempFile ef("gst_d_e.tsv", "a\tz\n");
    CHECK_THROWS_AS(load_graph(vf.path.string(), ef.path.string()), DanglingEdge);

    TempFile vf2("gst_dup_v.tsv", "a\t0\t0\tk\na\t1\t0\tk\n");
    TempFile ef2("gst_dup_e.tsv", "");
    CHECK_THROWS_AS(load_graph(vf2.path.string(), ef2.path.string()), DuplicateVertex);
}

TEST_CASE("duplicate and reversed edges count once, self loops dropped") {
    TempFile vf("gst_dd_v.tsv", "a\t0\t0\tk\nb\t1\t0\tk\n");
    TempFile ef("gst_dd_e.tsv", "a\tb\nb\ta\na\ta\n");
    LoadReport rep;
    auto g = load_graph(vf.path.string(), ef.path.string(), &rep);
    CHECK(g.edge_count() == 1);
    CHECK(rep.dropped_duplicate_edges == 1);
    CHECK(rep.dropped_self_loops == 1);
}

TEST_CASE("loading is insensitive to line order") {
    std::string va = "a\t0\t0\tred\nb\t1\t0\tblue\nc\t2\t0\tred\n";
    std::string vb = "c\t2\t0\tred\na\t0\t0\tred\nb\t1\t0\tblue\n";
    std::string ea = "a\tb\nb\tc\n";
    std::string eb = "b\tc\na\tb\n";
    TempFile f1("gst_p1_v.tsv", va), f2("gst_p1_e.tsv", ea);
    TempFile f3("gst_p2_v.tsv", vb), f4("gst_p2_e.tsv", eb);
    auto g1 = load_graph(f1.path.string(), f2.path.string());
    auto g2 = load_graph(f3.path.string(), f4.path.string());
    REQUIRE(g1.vertex_count() == g2.vertex_count());
    for (std::size_t v = 0; v < g1.vertex_count(); ++v) {
        CHECK(g1.external_id(v) == g2.external_id(v));
        CHECK(g1.neighbors(v) == g2.neighbors(v));
        CHECK(g1.keyword_of(v) == g2.keyword_of(v));
    }
}

TEST_CASE("query validation") {
    auto g = fixtures::quest_path_graph();
    QuerySpec ok{0.0, 0.0, {"k1", "k2", "k3"}, 2, 4, 2.0};
    Query q = load_query(g, ok);
    CHECK(q.min_keyword_count == 2);
    CHECK(q.trussness == 4);
    CHECK(q.keywords == std::vector<KeywordId>{0, 1, 2});

    QuerySpec bad_rho = ok;
    bad_rho.rho = 0;
    CHECK_THROWS_AS(load_query(g, bad_rho), InvalidParameter);
    QuerySpec bad_delta = ok;
    bad_delta.delta = 1.0;
    CHECK_THROWS_AS(load_query(g, bad_delta), InvalidParameter);
    QuerySpec bad_kw = ok;
    bad_kw.keywords = {"nope"};
    CHECK_THROWS_AS(load_query(g, bad_kw), UnknownKeyword);
    QuerySpec no_kw = ok;
    no_kw.keywords = {};
    CHECK_THROWS_AS(load_query(g, no_kw), InvalidParameter);
}

TEST_CASE("result emission is deterministic") {
    auto g = fixtures::quest_path_graph();
    SearchResult none;
    none.with_stats = false;
    CHECK(emit_result(none, OutputFormat::json, g) == "{\"found\":false}\n");

    SearchResult found;
    found.with_stats = false;
    found.group = Group{{fixtures::D, fixtures::E}, {{fixtures::D, fixtures::E}}, 1.5};
    auto once = emit_result(found, OutputFormat::json, g);
    auto twice = emit_result(found, OutputFormat::json, g);
    CHECK(once == twice);
    CHECK(once.find("\"found\":true") != std::string::npos);
    CHECK(once.find("\"vertices\":[\"d\",\"e\"]") != std::string::npos);

    auto tsv = emit_result(found, OutputFormat::tsv, g);
    CHECK(tsv == emit_result(found, OutputFormat::tsv, g));
    CHECK(tsv.find("found\ttrue") != std::string::npos);
}

TEST_CASE("emitted graphs round-trip through the loader") {
    Rng rng(5);
    InstanceOptions opt;
    opt.min_vertices = 10;
    opt.max_vertices = 16;
    for (int t = 0; t < 10; ++t) {
        auto g = random_graph(rng, opt);
        std::string vpath =
            (std::filesystem::temp_directory_path() / "gst_rt_v.tsv").string();
        std::string epath =
            (std::filesystem::temp_directory_path() / "gst_rt_e.tsv").string();
        {
            std::ofstream vf(vpath), ef(epath);
            vf.precision(17);
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                const auto& a = g.attr(static_cast<VertexId>(v));
                vf << g.external_id(v) << "\t" << a.x << "\t" << a.y << "\t"
                   << g.keyword_name(a.keyword) << "\n";
            }
            for (std::size_t v = 0; v < g.vertex_count(); ++v)
                for (VertexId w : g.neighbors(static_cast<VertexId>(v)))
                    if (v < w) ef << g.external_id(v) << "\t" << g.external_id(w) << "\n";
        }
        auto back = load_graph(vpath, epath);
        REQUIRE(back.vertex_count() == g.vertex_count());
        CHECK(back.edge_count() == g.edge_count());
        // ids may be permuted by the lexicographic remap; compare the labeled
        // structure through external ids
        std::map<std::string, VertexId> back_id;
        for (std::size_t v = 0; v < back.vertex_count(); ++v)
            back_id[back.external_id(v)] = static_cast<VertexId>(v);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            VertexId bv = back_id.at(g.external_id(v));
            CHECK(back.attr(bv).x == g.attr(v).x);
            CHECK(back.keyword_name(back.keyword_of(bv)) ==
                  g.keyword_name(g.keyword_of(static_cast<VertexId>(v))));
            std::set<std::string> expect, got;
            for (VertexId w : g.neighbors(static_cast<VertexId>(v)))
                expect.insert(g.external_id(w));
            for (VertexId w : back.neighbors(bv)) got.insert(back.external_id(w));
            CHECK(expect == got);
        }
        std::filesystem::remove(vpath);
        std::filesystem::remove(epath);
    }
}

TEST_CASE("vertex external ids map back after remapping") {
    // remapping is by lexicographic external id; "b10" sorts before "b2"
    TempFile vf("gst_rm_v.tsv", "b2\t0\t0\tk\nb10\t1\t0\tk\n");
    TempFile ef("gst_rm_e.tsv", "b2\tb10\n");
    auto g = load_graph(vf.path.string(), ef.path.string());
    CHECK(g.external_id(0) == "b10");
    CHECK(g.external_id(1) == "b2");
}
