// Command-line front end: answer single queries, sweep benchmark grids, and
// run the randomized verification battery.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gst/bench.hpp"
#include "gst/errors.hpp"
#include "gst/instances.hpp"
#include "gst/io.hpp"
#include "gst/pipeline.hpp"
#include "gst/baselines.hpp"
#include "gst/truss.hpp"
#include "gst/verify.hpp"

namespace {

struct CommonGraphArgs {
    std::string vertices_path;
    std::string edges_path;
    std::string synthetic;  // "N,p,K" when generating instead of loading
    std::uint64_t seed = 1;
};

gst::GeoSocialGraph load_or_generate(const CommonGraphArgs& args) {
    if (!args.synthetic.empty()) {
        double n = 0, p = 0, k = 0;
        if (std::sscanf(args.synthetic.c_str(), "%lf,%lf,%lf", &n, &p, &k) != 3 || n < 1 ||
            p <= 0 || p > 1 || k < 1)
            throw gst::InvalidParameter("--synthetic", args.synthetic);
        gst::Rng rng(args.seed);
        gst::InstanceOptions opt;
        opt.min_vertices = opt.max_vertices = static_cast<std::size_t>(n);
        opt.min_edge_prob = opt.max_edge_prob = p;
        opt.min_keywords = opt.max_keywords = static_cast<int>(k);
        return gst::random_graph(rng, opt);
    }
    if (args.vertices_path.empty() || args.edges_path.empty())
        throw gst::InvalidParameter("--vertices/--edges", "(missing)");
    gst::LoadReport report;
    auto g = gst::load_graph(args.vertices_path, args.edges_path, &report);
    std::cerr << "loaded " << report.vertices << " vertices, " << report.edges << " edges";
    if (report.dropped_duplicate_edges)
        std::cerr << ", dropped " << report.dropped_duplicate_edges << " duplicate edges";
    if (report.dropped_self_loops)
        std::cerr << ", dropped " << report.dropped_self_loops << " self loops";
    std::cerr << "\n";
    return g;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t pos = s.find(',', start);
        std::string item = s.substr(start, pos == std::string::npos ? pos : pos - start);
        if (!item.empty()) out.push_back(std::stoi(item));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geo-social group search by truss, keyword and size constraints"};
    app.require_subcommand(1);

    CommonGraphArgs graph_args;
    std::string lambda_arg = "0,0";
    std::string keywords_arg;
    int rho = 1, c = 2;
    double delta = 2.0;
    std::string algo = "mkasg";
    std::string format = "json";
    bool no_stats = false;

    auto add_graph_flags = [&](CLI::App* cmd) {
        cmd->add_option("--vertices", graph_args.vertices_path, "vertex TSV file");
        cmd->add_option("--edges", graph_args.edges_path, "edge TSV file");
        cmd->add_option("--synthetic", graph_args.synthetic,
                        "generate N,p,K instead of loading files");
        cmd->add_option("--seed", graph_args.seed, "random seed");
    };

    CLI::App* q_cmd = app.add_subcommand("query", "answer one query");
    add_graph_flags(q_cmd);
    q_cmd->add_option("--lambda", lambda_arg, "query location X,Y")->required();
    q_cmd->add_option("--keywords", keywords_arg, "comma separated keywords")->required();
    q_cmd->add_option("--rho", rho, "minimum members per keyword")->required();
    q_cmd->add_option("--c", c, "required trussness")->required();
    q_cmd->add_option("--delta", delta, "expansion growth factor");
    q_cmd->add_option("--algo", algo, "mkasg|inc|dec|bin")
        ->check(CLI::IsMember({"mkasg", "inc", "dec", "bin"}));
    q_cmd->add_option("--format", format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));
    q_cmd->add_flag("--no-stats", no_stats, "omit the stats block");

    std::string bench_algos = "all";
    std::string grid_c = "6", grid_phi = "3", grid_rho = "3";
    int bench_queries = 10;
    CLI::App* b_cmd = app.add_subcommand("bench", "parameter sweep over random queries");
    add_graph_flags(b_cmd);
    b_cmd->add_option("--algo", bench_algos, "mkasg|inc|dec|bin|all (comma separated)");
    b_cmd->add_option("--grid-c", grid_c, "comma separated c values");
    b_cmd->add_option("--grid-phi", grid_phi, "comma separated keyword-count values");
    b_cmd->add_option("--grid-rho", grid_rho, "comma separated rho values");
    b_cmd->add_option("--queries", bench_queries, "queries per grid cell");
    b_cmd->add_option("--delta", delta, "expansion growth factor");

    int verify_trials = 1000;
    int verify_max_n = 40;
    std::string fault = "none";
    CLI::App* v_cmd = app.add_subcommand("verify", "randomized oracle battery");
    v_cmd->add_option("--trials", verify_trials, "agreement trials");
    v_cmd->add_option("--max-n", verify_max_n, "vertex cap for random instances");
    v_cmd->add_option("--seed", graph_args.seed, "random seed");
    v_cmd->add_option("--inject-fault", fault, "none|skip-cascade (testing aid)")
        ->check(CLI::IsMember({"none", "skip-cascade"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (q_cmd->parsed()) {
            auto g = load_or_generate(graph_args);
            gst::QuerySpec spec;
            if (std::sscanf(lambda_arg.c_str(), "%lf,%lf", &spec.lx, &spec.ly) != 2)
                throw gst::InvalidParameter("--lambda", lambda_arg);
            std::size_t start = 0;
            while (start <= keywords_arg.size()) {
                std::size_t pos = keywords_arg.find(',', start);
                std::string item = keywords_arg.substr(
                    start, pos == std::string::npos ? pos : pos - start);
                if (!item.empty()) spec.keywords.push_back(item);
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
            spec.rho = rho;
            spec.c = c;
            spec.delta = delta;
            gst::Query query = gst::load_query(g, spec);

            gst::SearchResult result;
            if (algo == "mkasg") {
                result = gst::run_query(g, query);
            } else {
                result.stats.graph_vertices = g.vertex_count();
                result.stats.graph_edges = g.edge_count();
                auto components = gst::maximal_truss_components(g, query);
                std::vector<gst::VertexId> restrict_to;
                for (const auto& comp : components)
                    restrict_to.insert(restrict_to.end(), comp.vertices.begin(),
                                       comp.vertices.end());
                std::sort(restrict_to.begin(), restrict_to.end());
                if (algo == "inc") result.group = gst::run_incremental(g, query, restrict_to);
                if (algo == "dec") result.group = gst::run_decremental(g, query, restrict_to);
                if (algo == "bin")
                    result.group = gst::run_binary_search(g, query, restrict_to);
            }
            result.with_stats = !no_stats;
            auto fmt = format == "tsv" ? gst::OutputFormat::tsv : gst::OutputFormat::json;
            std::cout << gst::emit_result(result, fmt, g);
            return 0;
        }

        if (b_cmd->parsed()) {
            auto g = load_or_generate(graph_args);
            if (!(delta > 1.0)) throw gst::InvalidParameter("--delta", std::to_string(delta));
            gst::BenchPlan plan;
            plan.seed = graph_args.seed;
            plan.delta = delta;
            plan.queries_per_cell = bench_queries;
            plan.c_values = parse_int_list(grid_c);
            plan.phi_values = parse_int_list(grid_phi);
            plan.rho_values = parse_int_list(grid_rho);
            if (bench_algos == "all") {
                plan.algos = {"mkasg", "inc", "dec", "bin"};
            } else {
                plan.algos.clear();
                for (const auto& a : {"mkasg", "inc", "dec", "bin"})
                    if (bench_algos.find(a) != std::string::npos) plan.algos.push_back(a);
                if (plan.algos.empty())
                    throw gst::InvalidParameter("--algo", bench_algos);
            }
            std::string timing;
            std::cout << gst::run_bench(g, plan, &timing);
            std::cerr << timing;
            return 0;
        }

        if (v_cmd->parsed()) {
            gst::VerifyOptions opt;
            opt.seed = graph_args.seed;
            opt.agreement_trials = verify_trials;
            opt.max_n = static_cast<std::size_t>(verify_max_n);
            opt.truss_trials = std::max(1, verify_trials / 2);
            opt.forest_trials = std::max(1, verify_trials / 5);
            opt.dsu_trials = std::max(1, verify_trials / 5);
            if (verify_trials == 0) {
                opt.agreement_trials = opt.truss_trials = opt.forest_trials = opt.dsu_trials = 0;
            }
            opt.fault = fault == "skip-cascade" ? gst::Fault::skip_cascade : gst::Fault::none;
            auto report = gst::run_verify(opt);
            std::cout << report.text;
            if (!report.ok) {
                std::cerr << report.failure << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const gst::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
