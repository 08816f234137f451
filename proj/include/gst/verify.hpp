#pragma once

#include <cstdint>
#include <string>

#include "gst/instances.hpp"

namespace gst {

enum class Fault {
    none,
    skip_cascade,  // truss deletions leave stale edges behind
};

struct AgreementReport {
    bool ok = true;
    std::string failure;
    std::uint64_t trials = 0;
    std::uint64_t found_cases = 0;
    std::uint64_t none_cases = 0;
    // instrumented bound checks over the same runs
    double worst_bound_factor = 0.0;
    double bound_limit = 0.0;
    std::uint64_t bound_violations = 0;
    std::uint64_t lower_bound_violations = 0;
    std::uint64_t bracket_violations = 0;
    double worst_budget_ratio = 0.0;
    std::uint64_t budget_violations = 0;
    std::uint32_t max_forest_level = 0;
    std::uint64_t multi_round_cases = 0;
    // final search region vs. the optimum region, ties discounted
    double worst_overshoot_ratio = 0.0;
    std::uint64_t overshoot_violations = 0;
};

struct TrussOracleReport {
    bool ok = true;
    std::string failure;
    std::uint64_t extraction_trials = 0;
    std::uint64_t deletion_trials = 0;
    std::uint64_t deletions_checked = 0;
};

struct ForestOracleReport {
    bool ok = true;
    std::string failure;
    std::uint64_t trials = 0;
    std::uint64_t deletions_checked = 0;
    std::uint32_t max_level = 0;
    bool level_bound_ok = true;
};

struct DsuOracleReport {
    bool ok = true;
    std::string failure;
    std::uint64_t trials = 0;
    std::uint64_t unions_checked = 0;
};

AgreementReport run_agreement_suite(std::uint64_t seed, int trials,
                                    const InstanceOptions& iopt, const QueryOptions& qopt);
TrussOracleReport run_truss_suite(std::uint64_t seed, int trials, Fault fault = Fault::none);
ForestOracleReport run_forest_suite(std::uint64_t seed, int trials, std::size_t max_n = 60);
DsuOracleReport run_dsu_suite(std::uint64_t seed, int trials);

struct VerifyOptions {
    std::uint64_t seed = 1;
    int agreement_trials = 1000;
    int truss_trials = 500;
    int forest_trials = 200;
    int dsu_trials = 200;
    std::size_t max_n = 40;
    Fault fault = Fault::none;
};

struct VerifyReport {
    bool ok = true;
    std::string text;     // deterministic report, one line per suite
    std::string failure;  // replayable counterexample for the first failure
};

/// The full randomized oracle battery; deterministic under a fixed seed.
VerifyReport run_verify(const VerifyOptions& opt);

}  // namespace gst
