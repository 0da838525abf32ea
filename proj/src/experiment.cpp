#include "dynrad/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "dynrad/cover.hpp"
#include "dynrad/radius.hpp"

namespace dynrad {

AsyncPolicy parse_policy(const std::string& name) {
    if (name == "uniform") return AsyncPolicy::UniformQuorums;
    if (name == "crash-fixed") return AsyncPolicy::CrashFixedSet;
    if (name == "rotating") return AsyncPolicy::RotatingExclusion;
    throw InvalidConfig("unknown async policy '" + name + "' (uniform|crash-fixed|rotating)");
}

bool generator_needs_seed(const std::string& name) {
    return name == "random-nonsplit" || name == "random-rooted" || name == "async";
}

CommunicationPattern make_pattern(const GeneratorOptions& options) {
    const auto& name = options.name;
    if (name == "figure1") return gen_figure1();
    if (options.n < 1) throw InvalidConfig("generator '" + name + "' needs --n >= 1");
    if (name == "star") {
        if (options.center > 0) return gen_star_fixed(options.n, options.center);
        return gen_star_rotating(options.n);
    }
    if (name == "line") return gen_line(options.n);
    if (name == "random-nonsplit") return gen_random_nonsplit(options.n, options.seed, options.prob);
    if (name == "random-rooted") return gen_random_rooted(options.n, options.seed, options.prob);
    if (name == "async") {
        AsyncAdversaryConfig cfg;
        cfg.n = options.n;
        cfg.f = options.f;
        cfg.seed = options.seed;
        cfg.policy = parse_policy(options.policy);
        return gen_async(cfg);
    }
    throw InvalidConfig("unknown generator '" + name +
                        "' (figure1|star|line|random-nonsplit|random-rooted|async)");
}

int default_horizon(int n) {
    if (n < 1) throw Error("node count must be positive");
    return std::max({2 * ceil_log2(static_cast<std::uint64_t>(n)), loglog_pipeline_time_bound(n), n});
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid experiment spec: " + std::string(e.what()));
    }
    ExperimentSpec spec;
    try {
        spec.name = j.at("name").get<std::string>();
        spec.generator = j.at("generator").get<std::string>();
        if (j.at("n").is_array())
            spec.n_values = j.at("n").get<std::vector<int>>();
        else
            spec.n_values = {j.at("n").get<int>()};
        if (j.contains("f")) {
            if (j.at("f").is_string()) {
                if (j.at("f").get<std::string>() != "half")
                    throw ParseError("field 'f' must be an integer or \"half\"");
                spec.f_half = true;
            } else {
                spec.f = j.at("f").get<int>();
            }
        }
        spec.prob = j.value("prob", 0.0);
        spec.policy = j.value("policy", std::string("uniform"));
        spec.center = j.value("center", 0);
        spec.seeds = j.at("seeds").get<int>();
        spec.base_seed = j.at("base_seed").get<std::uint64_t>();
        spec.horizon = j.value("horizon", 0);
        spec.output = j.at("output").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid experiment spec: " + std::string(e.what()));
    }
    if (spec.n_values.empty()) throw ParseError("experiment grid must contain at least one n");
    for (int n : spec.n_values)
        if (n < 1) throw ParseError("experiment grid entries must be positive");
    if (spec.seeds < 1) throw ParseError("experiment needs at least one seed");
    if (spec.horizon < 0) throw ParseError("experiment horizon must be nonnegative");
    return spec;
}

void run_experiment(const ExperimentSpec& spec, std::ostream& csv, bool timing,
                    std::uint64_t subset_budget) {
    csv << "n,seed,radius,log2_bound,loglog_time,status";
    if (timing) csv << ",wall_ms";
    csv << "\n";
    for (int n : spec.n_values) {
        for (int s = 0; s < spec.seeds; ++s) {
            const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(s);
            GeneratorOptions options;
            options.name = spec.generator;
            options.n = n;
            options.seed = seed;
            options.f = spec.f_half ? (n - 1) / 2 : spec.f;
            options.prob = spec.prob;
            options.policy = spec.policy;
            options.center = spec.center;
            const auto start = std::chrono::steady_clock::now();
            const CommunicationPattern pattern = make_pattern(options);
            const int ambient = pattern.node_count();
            int horizon = spec.horizon > 0 ? spec.horizon : default_horizon(ambient);
            if (auto h = pattern.horizon(); h) horizon = std::min(horizon, *h);
            const RadiusReport report = dynamic_radius(pattern, horizon);

            std::string loglog_time = "inf";
            std::string status = "ok";
            try {
                const CenterResult center = loglog_center(pattern, subset_budget);
                loglog_time = std::to_string(center.time);
            } catch (const BudgetExceeded&) {
                status = "budget-exceeded";
            } catch (const NotNonsplit&) {
                status = "not-nonsplit";
            }
            csv << ambient << "," << seed << ",";
            if (report.dynamic_radius)
                csv << *report.dynamic_radius;
            else
                csv << "inf";
            csv << "," << ceil_log2(static_cast<std::uint64_t>(ambient)) << "," << loglog_time
                << "," << status;
            if (timing) {
                const auto elapsed = std::chrono::steady_clock::now() - start;
                csv << ","
                    << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
            }
            csv << "\n";
        }
    }
}

}  // namespace dynrad
