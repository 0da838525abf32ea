#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynrad/pattern.hpp"

namespace dynrad {

// Everything needed to build one pattern from the command line or an
// experiment grid.
struct GeneratorOptions {
    std::string name;  // figure1 | star | line | random-nonsplit | random-rooted | async
    int n = 0;
    std::uint64_t seed = 0;
    int f = 0;
    double prob = 0.0;
    std::string policy = "uniform";  // uniform | crash-fixed | rotating
    int center = 0;                  // star only; 0 selects the rotating schedule
};

AsyncPolicy parse_policy(const std::string& name);
CommunicationPattern make_pattern(const GeneratorOptions& options);
bool generator_needs_seed(const std::string& name);

// Horizon large enough for every in-scope family to resolve:
// max(2*ceil(log2 n), loglog pipeline time, n).
int default_horizon(int n);

// A reproducible campaign over a parameter grid: one CSV row per (n, seed).
struct ExperimentSpec {
    std::string name;
    std::string generator;
    std::vector<int> n_values;
    int f = 0;
    bool f_half = false;  // f = floor((n-1)/2) per n, overriding `f`
    double prob = 0.0;
    std::string policy = "uniform";
    int center = 0;
    int seeds = 1;
    std::uint64_t base_seed = 0;
    int horizon = 0;  // 0 = default_horizon(n)
    std::string output;
};

ExperimentSpec load_experiment_spec(const std::string& path);

// Columns: n,seed,radius,log2_bound,loglog_time,status (+ wall_ms with
// timing). radius and loglog_time print `inf` when unavailable; status names
// row-level errors (budget-exceeded, not-nonsplit) instead of aborting the
// campaign. Output is deterministic for a fixed spec unless timing is on.
void run_experiment(const ExperimentSpec& spec, std::ostream& csv, bool timing = false,
                    std::uint64_t subset_budget = 10'000'000);

}  // namespace dynrad
