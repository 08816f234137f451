// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <array>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "gst/instances.hpp"
#include "gst/verify.hpp"

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++failures;
}

std::string run_command(const std::string& cmd) {
    std::string out;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
    return out;
}

}  // namespace

int main() {
    using namespace gst;

    // criteria 1, 2, 5, 6, 7, 8 ride on the same 1000 randomized instances:
    // n <= 40, edge probability 0.2-0.4, 3-5 keywords, c in {3,4}, rho in
    // {1,2}, growth factor 2
    InstanceOptions iopt;
    iopt.min_vertices = 8;
    iopt.max_vertices = 40;
    iopt.min_edge_prob = 0.2;
    iopt.max_edge_prob = 0.4;
    iopt.min_keywords = 3;
    iopt.max_keywords = 5;
    QueryOptions qopt;
    qopt.min_c = 3;
    qopt.max_c = 4;
    qopt.min_rho = 1;
    qopt.max_rho = 2;
    qopt.delta = 2.0;

    auto agree = run_agreement_suite(20260809, 1000, iopt, qopt);
    report(1, "pipeline dist equals the exhaustive optimum on 1000 instances", agree.ok,
           "found=" + std::to_string(agree.found_cases) +
               " none=" + std::to_string(agree.none_cases));
    report(2, "incremental, decremental and binary-search baselines agree", agree.ok);
    if (!agree.failure.empty()) std::cout << agree.failure << "\n";

    auto truss = run_truss_suite(977, 500);
    report(3, "truss extraction matches cubic peeling; decremental state matches re-extraction",
           truss.ok,
           "extractions=" + std::to_string(truss.extraction_trials) +
               " deletions=" + std::to_string(truss.deletions_checked));
    if (!truss.failure.empty()) std::cout << truss.failure << "\n";

    auto forest = run_forest_suite(555, 200, 60);
    report(4, "forest components and counters match recomputation; levels within cap",
           forest.ok && forest.level_bound_ok,
           "deletions=" + std::to_string(forest.deletions_checked) +
               " max_level=" + std::to_string(forest.max_level));
    if (!forest.failure.empty()) std::cout << forest.failure << "\n";

    report(5, "expansion edge sums stay within factor 3 for growth 2",
           agree.bound_violations == 0,
           "worst=" + std::to_string(agree.worst_bound_factor));
    report(6, "lower-bound radius never exceeds the answer distance",
           agree.lower_bound_violations == 0);
    report(7, "the round before a hit never reports a candidate",
           agree.bracket_violations == 0,
           "multi_round=" + std::to_string(agree.multi_round_cases));
    report(8, "forest cut+link operations within 8*E*ceil(log2 V)^2",
           agree.budget_violations == 0,
           "worst_ratio=" + std::to_string(agree.worst_budget_ratio));

#ifdef GST_CLI_PATH
    const std::string cli = GST_CLI_PATH;
    const std::string verify_cmd = cli + " verify --trials 40 --seed 7 2>/dev/null";
    std::string v1 = run_command(verify_cmd);
    std::string v2 = run_command(verify_cmd);
    const std::string bench_cmd = cli +
                                  " bench --synthetic 60,0.3,4 --seed 11 --queries 4"
                                  " --grid-c 3 --grid-phi 2 --grid-rho 1 2>/dev/null";
    std::string b1 = run_command(bench_cmd);
    std::string b2 = run_command(bench_cmd);
    bool deterministic = !v1.empty() && v1 == v2 && !b1.empty() && b1 == b2;
    report(9, "verify and bench reports are byte-identical across runs", deterministic,
           "verify_bytes=" + std::to_string(v1.size()) +
               " bench_bytes=" + std::to_string(b1.size()));
#else
    report(9, "verify and bench reports are byte-identical across runs", false,
           "CLI path not configured");
#endif

    std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: " + std::to_string(failures) + " failed\n");
    return failures == 0 ? 0 : 1;
}
