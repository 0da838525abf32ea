#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dynrad/cover.hpp"
#include "dynrad/experiment.hpp"
#include "dynrad/io.hpp"
#include "dynrad/pattern.hpp"
#include "dynrad/radius.hpp"
#include "dynrad/rng.hpp"
#include "lemma_campaign.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;  // a verified property was contradicted
constexpr int kExitUsage = 2;

std::uint64_t subset_budget_from_env() {
    if (const char* env = std::getenv("DYNRAD_SUBSET_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw dynrad::InvalidConfig("DYNRAD_SUBSET_BUDGET must be an unsigned integer");
        }
    }
    return dynrad::kDefaultSubsetBudget;
}

struct PatternCli {
    std::string pattern_file;
    dynrad::GeneratorOptions gen;
    CLI::Option* seed_opt = nullptr;

    void add_to(CLI::App* cmd, bool horizon_too = false, int* horizon = nullptr) {
        auto* pf = cmd->add_option("--pattern", pattern_file, "pattern file with round blocks");
        auto* gn = cmd->add_option(
            "--gen", gen.name, "generator: figure1|star|line|random-nonsplit|random-rooted|async");
        pf->excludes(gn);
        gn->excludes(pf);
        cmd->add_option("--n", gen.n, "node count (generators)");
        seed_opt = cmd->add_option("--seed", gen.seed, "seed (required for randomized generators)");
        cmd->add_option("--f", gen.f, "crash budget (async)");
        cmd->add_option("--prob", gen.prob, "extra edge probability (random generators)")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--policy", gen.policy, "async policy: uniform|crash-fixed|rotating");
        cmd->add_option("--center", gen.center, "fixed star center (0 = rotating schedule)");
        if (horizon_too)
            cmd->add_option("--horizon", *horizon, "evaluation horizon (0 = automatic)");
    }

    dynrad::CommunicationPattern resolve() const {
        if (!pattern_file.empty()) return dynrad::load_pattern_file(pattern_file);
        if (gen.name.empty())
            throw dynrad::InvalidConfig("either --pattern or --gen must be given");
        if (dynrad::generator_needs_seed(gen.name) && seed_opt->count() == 0)
            throw dynrad::InvalidConfig("--seed is required for generator '" + gen.name + "'");
        return dynrad::make_pattern(gen);
    }
};

void write_to(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw dynrad::ParseError("cannot open '" + path + "' for writing");
    out << content;
}

int run_radius(const PatternCli& cli, int horizon, const std::string& out_path) {
    const auto pattern = cli.resolve();
    int h = horizon > 0 ? horizon : dynrad::default_horizon(pattern.node_count());
    if (auto ph = pattern.horizon(); ph) h = std::min(h, *ph);
    const auto report = dynrad::dynamic_radius(pattern, h);
    std::ostringstream csv;
    dynrad::write_radius_csv(report, csv);
    write_to(out_path, csv.str());
    return kExitOk;
}

int run_check_nonsplit(const std::string& path) {
    const auto g = dynrad::load_graph_file(path);
    if (const auto check = dynrad::is_nonsplit(g)) {
        std::cout << "nonsplit\n";
    } else {
        std::cout << "split: nodes " << check.split_first << " and " << check.split_second
                  << " have no common in-neighbor\n";
    }
    return kExitOk;
}

int run_check_rooted(const std::string& path) {
    const auto g = dynrad::load_graph_file(path);
    if (const auto check = dynrad::is_rooted(g))
        std::cout << "rooted: root " << check.root << "\n";
    else
        std::cout << "not-rooted\n";
    return kExitOk;
}

int run_product(const std::vector<std::string>& inputs, const std::string& out_path) {
    auto acc = dynrad::load_graph_file(inputs.front());
    for (std::size_t i = 1; i < inputs.size(); ++i)
        acc = dynrad::product(acc, dynrad::load_graph_file(inputs[i]));
    std::ostringstream out;
    dynrad::write_graph(acc, out);
    write_to(out_path, out.str());
    return kExitOk;
}

int run_cover(const PatternCli& cli, const std::vector<int>& target_ids, int t1, int t2, int m,
              const std::string& out_path) {
    const auto pattern = cli.resolve();
    const auto target = dynrad::NodeSet::of(pattern.node_count(), target_ids);
    dynrad::CoverCertificate cert;
    if (m <= 1) {
        auto single = dynrad::find_single_cover(pattern, target, t1, t2);
        std::cerr << "cover node: " << single.node << "\n";
        cert = std::move(single.cert);
    } else {
        auto cover = dynrad::find_cover_m(pattern, target, t1, t2, m);
        std::cerr << "cover nodes:";
        cover.nodes.for_each([](int id) { std::cerr << " " << id; });
        std::cerr << "\n";
        cert = std::move(cover.cert);
    }
    dynrad::validate_certificate(cert, pattern);
    std::ostringstream out;
    dynrad::write_certificate(cert, out);
    write_to(out_path, out.str());
    return kExitOk;
}

int run_verify_cert(const PatternCli& cli, const std::string& cert_path) {
    const auto pattern = cli.resolve();
    const auto cert = dynrad::load_certificate_file(cert_path, pattern.node_count());
    try {
        dynrad::validate_certificate(cert, pattern);
    } catch (const dynrad::CertificateInvalid& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kExitViolation;
    }
    std::cout << "valid\n";
    return kExitOk;
}

int run_loglog_center(const PatternCli& cli, const std::string& out_path,
                      std::uint64_t subset_budget) {
    const auto pattern = cli.resolve();
    const auto center = dynrad::loglog_center(pattern, subset_budget);
    dynrad::validate_certificate(center.cert, pattern);
    std::cout << "center=" << center.node << " time=" << center.time
              << " log2_bound=" << dynrad::ceil_log2(static_cast<std::uint64_t>(pattern.node_count()))
              << "\n";
    if (!out_path.empty()) {
        std::ostringstream out;
        dynrad::write_certificate(center.cert, out);
        write_to(out_path, out.str());
    }
    return kExitOk;
}

int run_async_verify(int n, int f, const std::string& policy, bool exhaustive, int trials,
                     std::uint64_t seed, bool seed_given) {
    if (n <= 2 * f)
        throw dynrad::InvalidConfig("the radius-2 bound needs a correct majority: n > 2f");
    if (exhaustive) {
        if (n > 3)
            throw dynrad::InvalidConfig(
                "exhaustive enumeration is capped at n=3; use --trials for larger n");
        const auto result = dynrad::async_exhaustive_radius(n, f, 2);
        std::cout << "max_radius=" << result.max_radius
                  << ", prefixes_checked=" << result.prefixes_checked << "\n";
        return result.max_radius <= 2 ? kExitOk : kExitViolation;
    }
    if (!seed_given) throw dynrad::InvalidConfig("--seed is required for randomized trials");
    const std::vector<std::string> policies =
        policy == "all" ? std::vector<std::string>{"uniform", "crash-fixed", "rotating"}
                        : std::vector<std::string>{policy};
    int max_radius = 0;
    for (const auto& pol : policies) {
        for (int trial = 0; trial < trials; ++trial) {
            dynrad::AsyncAdversaryConfig cfg;
            cfg.n = n;
            cfg.f = f;
            cfg.seed = seed + static_cast<std::uint64_t>(trial);
            cfg.policy = dynrad::parse_policy(pol);
            const auto pattern = dynrad::gen_async(cfg);
            const auto report = dynrad::dynamic_radius(pattern, std::max(2, n));
            if (!report.dynamic_radius) {
                std::cout << "violation: no broadcaster within horizon (policy " << pol
                          << ", trial " << trial << ")\n";
                return kExitViolation;
            }
            max_radius = std::max(max_radius, *report.dynamic_radius);
        }
    }
    std::cout << "max_radius=" << max_radius << ", trials=" << trials
              << ", policies=" << policies.size() << "\n";
    return max_radius <= 2 ? kExitOk : kExitViolation;
}

int run_rooted_product(int n, int trials, std::uint64_t seed) {
    for (int trial = 0; trial < trials; ++trial) {
        const auto pattern =
            dynrad::gen_random_rooted(n, seed + static_cast<std::uint64_t>(trial), 0.0);
        std::vector<dynrad::CommunicationGraph> graphs;
        for (int t = 1; t <= std::max(n - 1, 1); ++t) graphs.push_back(pattern.graph_at(t));
        const auto check = dynrad::rooted_product_nonsplit_check(graphs);
        if (!check) {
            std::cout << "violation: product of " << (n - 1)
                      << " rooted graphs is split at nodes " << check.split_first << ", "
                      << check.split_second << " (trial " << trial << ")\n";
            return kExitViolation;
        }
    }
    std::cout << "ok: " << trials << " rooted products on n=" << n << " all nonsplit\n";
    return kExitOk;
}

int run_experiment_cmd(const std::string& spec_path, bool timing, std::uint64_t subset_budget) {
    const auto spec = dynrad::load_experiment_spec(spec_path);
    std::ostringstream csv;
    dynrad::run_experiment(spec, csv, timing, subset_budget);
    write_to(spec.output, csv.str());
    if (!spec.output.empty())
        std::cout << "experiment '" << spec.name << "' written to " << spec.output << "\n";
    return kExitOk;
}

int run_verify_lemmas(std::uint64_t seed, const dynrad::CampaignCounts& counts) {
    const auto lines = dynrad::run_lemma_campaign(seed, counts);
    bool all_pass = true;
    for (const auto& line : lines) {
        std::cout << (line.pass ? "PASS" : "FAIL") << " " << line.name << ": " << line.detail
                  << "\n";
        all_pass = all_pass && line.pass;
    }
    std::cout << (all_pass ? "all lemmas verified\n" : "lemma violations found\n");
    return all_pass ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic-network radius and covering toolkit"};
    app.require_subcommand(1);

    int exit_code = kExitOk;
    std::uint64_t subset_budget = dynrad::kDefaultSubsetBudget;

    // radius
    auto* radius_cmd = app.add_subcommand("radius", "per-node broadcast times and dynamic radius");
    PatternCli radius_pattern;
    int radius_horizon = 0;
    std::string radius_out;
    radius_pattern.add_to(radius_cmd, true, &radius_horizon);
    radius_cmd->add_option("--out", radius_out, "CSV output path (default stdout)");
    radius_cmd->callback(
        [&]() { exit_code = run_radius(radius_pattern, radius_horizon, radius_out); });

    // check-nonsplit
    auto* nonsplit_cmd = app.add_subcommand("check-nonsplit", "nonsplit verdict for a graph file");
    std::string nonsplit_path;
    nonsplit_cmd->add_option("graph", nonsplit_path, "graph file")->required();
    nonsplit_cmd->callback([&]() { exit_code = run_check_nonsplit(nonsplit_path); });

    // check-rooted
    auto* rooted_cmd = app.add_subcommand("check-rooted", "rooted verdict for a graph file");
    std::string rooted_path;
    rooted_cmd->add_option("graph", rooted_path, "graph file")->required();
    rooted_cmd->callback([&]() { exit_code = run_check_rooted(rooted_path); });

    // product
    auto* product_cmd = app.add_subcommand("product", "left-to-right product of graph files");
    std::vector<std::string> product_inputs;
    std::string product_out;
    product_cmd->add_option("graphs", product_inputs, "graph files")->required()->expected(-2);
    product_cmd->add_option("--out", product_out, "output graph file (default stdout)");
    product_cmd->callback([&]() { exit_code = run_product(product_inputs, product_out); });

    // cover
    auto* cover_cmd = app.add_subcommand("cover", "find a covering set with certificate");
    PatternCli cover_pattern;
    std::vector<int> cover_target;
    int cover_t1 = 1, cover_t2 = 1, cover_m = 1;
    std::string cover_out;
    cover_pattern.add_to(cover_cmd);
    cover_cmd->add_option("--W", cover_target, "target node ids (comma separated)")
        ->required()
        ->delimiter(',');
    cover_cmd->add_option("--t1", cover_t1, "cover start time")->required();
    cover_cmd->add_option("--t2", cover_t2, "cover end time")->required();
    cover_cmd->add_option("--m", cover_m, "cover size bound (default 1)");
    cover_cmd->add_option("--out", cover_out, "certificate output path (default stdout)");
    cover_cmd->callback([&]() {
        exit_code = run_cover(cover_pattern, cover_target, cover_t1, cover_t2, cover_m, cover_out);
    });

    // verify-cert
    auto* verify_cmd = app.add_subcommand("verify-cert", "replay a certificate against a pattern");
    PatternCli verify_pattern;
    std::string verify_cert_path;
    verify_pattern.add_to(verify_cmd);
    verify_cmd->add_option("--cert", verify_cert_path, "certificate file")->required();
    verify_cmd->callback([&]() { exit_code = run_verify_cert(verify_pattern, verify_cert_path); });

    // loglog-center
    auto* center_cmd = app.add_subcommand("loglog-center",
                                          "certified single-node cover of all nodes from time 1");
    PatternCli center_pattern;
    std::string center_out;
    center_pattern.add_to(center_cmd);
    center_cmd->add_option("--out", center_out, "certificate output path");
    center_cmd->callback(
        [&]() { exit_code = run_loglog_center(center_pattern, center_out, subset_budget); });

    // async-verify
    auto* async_cmd =
        app.add_subcommand("async-verify", "radius bound of quorum graphs (n > 2f): at most 2");
    int async_n = 0, async_f = 0, async_trials = 200;
    std::uint64_t async_seed = 0;
    std::string async_policy = "all";
    bool async_exhaustive = false;
    async_cmd->add_option("--n", async_n, "node count")->required();
    async_cmd->add_option("--f", async_f, "crash budget")->required();
    async_cmd->add_option("--policy", async_policy, "uniform|crash-fixed|rotating|all");
    async_cmd->add_flag("--exhaustive", async_exhaustive, "enumerate all two-round prefixes (n <= 3)");
    async_cmd->add_option("--trials", async_trials, "randomized trials per policy");
    auto* async_seed_opt = async_cmd->add_option("--seed", async_seed, "base seed for trials");
    async_cmd->callback([&]() {
        exit_code = run_async_verify(async_n, async_f, async_policy, async_exhaustive,
                                     async_trials, async_seed, async_seed_opt->count() > 0);
    });

    // rooted-product
    auto* rooted_prod_cmd =
        app.add_subcommand("rooted-product", "products of n-1 random rooted graphs are nonsplit");
    int rp_n = 0, rp_trials = 1000;
    std::uint64_t rp_seed = 0;
    rooted_prod_cmd->add_option("--n", rp_n, "node count")->required();
    rooted_prod_cmd->add_option("--trials", rp_trials, "number of random sequences");
    rooted_prod_cmd->add_option("--seed", rp_seed, "base seed")->required();
    rooted_prod_cmd->callback([&]() { exit_code = run_rooted_product(rp_n, rp_trials, rp_seed); });

    // experiment
    auto* experiment_cmd = app.add_subcommand("experiment", "run a campaign from a JSON spec");
    std::string experiment_spec;
    bool experiment_timing = false;
    experiment_cmd->add_option("spec", experiment_spec, "experiment spec file (JSON)")->required();
    experiment_cmd->add_flag("--timing", experiment_timing,
                             "append a wall_ms column (breaks byte-for-byte reproducibility)");
    experiment_cmd->callback([&]() {
        exit_code = run_experiment_cmd(experiment_spec, experiment_timing, subset_budget);
    });

    // verify-lemmas
    auto* lemmas_cmd = app.add_subcommand("verify-lemmas", "randomized lemma property campaign");
    std::uint64_t lemmas_seed = 0;
    dynrad::CampaignCounts counts;
    lemmas_cmd->add_option("--seed", lemmas_seed, "campaign seed")->required();
    lemmas_cmd->add_option("--transitivity", counts.transitivity, "transitivity instances");
    lemmas_cmd->add_option("--arith", counts.arithmetic, "arithmetic lemma samples");
    lemmas_cmd->add_option("--cover-trials", counts.cover_trials, "certificate trials per construction");
    lemmas_cmd->add_option("--heavy-trials", counts.heavy_trials, "heavy-preimage trials");
    lemmas_cmd->add_option("--async-trials", counts.async_trials, "async in-degree trials");
    lemmas_cmd->callback([&]() { exit_code = run_verify_lemmas(lemmas_seed, counts); });

    try {
        subset_budget = subset_budget_from_env();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const dynrad::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dynrad::InvalidConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dynrad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
