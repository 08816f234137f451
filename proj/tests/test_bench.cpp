#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "gst/bench.hpp"
#include "gst/instances.hpp"

using namespace gst;

namespace {

GeoSocialGraph bench_graph() {
    Rng rng(2024);
    InstanceOptions opt;
    opt.min_vertices = opt.max_vertices = 60;
    opt.min_edge_prob = opt.max_edge_prob = 0.3;
    opt.min_keywords = opt.max_keywords = 4;
    return random_graph(rng, opt);
}

}  // namespace

TEST_CASE("the result table is byte-identical across runs") {
    auto g = bench_graph();
    BenchPlan plan;
    plan.c_values = {3, 4};
    plan.phi_values = {2};
    plan.rho_values = {1, 2};
    plan.queries_per_cell = 4;
    plan.seed = 99;
    std::string t1 = run_bench(g, plan);
    std::string t2 = run_bench(g, plan);
    CHECK(t1 == t2);
    CHECK(t1.find("c\tphi\trho") == 0);
}

TEST_CASE("timed algorithms agree on every query") {
    auto g = bench_graph();
    BenchPlan plan;
    plan.c_values = {3};
    plan.phi_values = {2, 3};
    plan.rho_values = {1};
    plan.queries_per_cell = 5;
    plan.seed = 7;
    std::string timing;
    std::string table = run_bench(g, plan, &timing);
    CHECK_FALSE(timing.empty());
    // parse rows: the agree column must equal the query count everywhere
    std::istringstream in(table);
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream cols(line);
        std::string c, phi, rho, queries, found, agree;
        std::getline(cols, c, '\t');
        std::getline(cols, phi, '\t');
        std::getline(cols, rho, '\t');
        std::getline(cols, queries, '\t');
        std::getline(cols, found, '\t');
        std::getline(cols, agree, '\t');
        CHECK(agree == queries);
    }
    CHECK(rows == 2);
}

TEST_CASE("unsatisfiable cells still report") {
    auto g = bench_graph();
    BenchPlan plan;
    plan.c_values = {8};  // far above anything in a sparse random graph
    plan.phi_values = {4};
    plan.rho_values = {9};
    plan.queries_per_cell = 3;
    plan.seed = 5;
    std::string table = run_bench(g, plan);
    std::istringstream in(table);
    std::string header, row;
    std::getline(in, header);
    REQUIRE(std::getline(in, row));
    std::istringstream cols(row);
    std::string c, phi, rho, queries, found, agree;
    std::getline(cols, c, '\t');
    std::getline(cols, phi, '\t');
    std::getline(cols, rho, '\t');
    std::getline(cols, queries, '\t');
    std::getline(cols, found, '\t');
    std::getline(cols, agree, '\t');
    CHECK(found == "0");
    CHECK(agree == queries);
}
