// Integration suite: one pass/fail line per acceptance criterion, with the
// runtime budget enforced. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dynrad/cover.hpp"
#include "dynrad/experiment.hpp"
#include "dynrad/io.hpp"
#include "dynrad/pattern.hpp"
#include "dynrad/radius.hpp"
#include "dynrad/rng.hpp"
#include "oracles.hpp"

using namespace dynrad;

namespace {

struct Criterion {
    std::string label;
    double budget_seconds;
    std::function<void()> body;  // throws std::runtime_error on failure
};

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
}

// ---- criterion 1: figure-1 golden values ----

void criterion_figure1() {
    require(static_radius(figure1_graph()).radius == 3, "figure-1 static radius != 3");
    const auto report = dynamic_radius(gen_figure1(), 8);
    require(report.dynamic_radius == 3, "figure-1 dynamic radius != 3");
}

// ---- criterion 2: log2 bound for nonsplit patterns ----

void criterion_log_bound() {
    for (const int n : {2, 4, 8, 16, 32, 64}) {
        const int bound = ceil_log2(static_cast<std::uint64_t>(n));
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto pattern = gen_random_nonsplit(n, seed, 0.0);
            const auto report = dynamic_radius(pattern, bound);
            require(report.dynamic_radius.has_value(),
                    "no broadcaster within ceil(log2 n) rounds at n=" + std::to_string(n) +
                        " seed=" + std::to_string(seed));
            const auto cover = find_single_cover(pattern, NodeSet::full_set(n), 1, 1 + bound);
            validate_certificate(cover.cert, pattern);
        }
    }
}

// ---- criterion 3: async radius bound ----

void criterion_async() {
    const auto exhaustive = async_exhaustive_radius(3, 1, 2);
    require(exhaustive.prefixes_checked == 729,
            "expected 729 two-round prefixes, saw " + std::to_string(exhaustive.prefixes_checked));
    require(exhaustive.max_radius <= 2, "exhaustive n=3 prefix with radius > 2");

    for (const int n : {5, 9, 15, 21}) {
        const int f = (n - 1) / 2;
        for (const auto policy : {AsyncPolicy::UniformQuorums, AsyncPolicy::CrashFixedSet,
                                  AsyncPolicy::RotatingExclusion}) {
            for (std::uint64_t seed = 0; seed < 200; ++seed) {
                const auto pattern = gen_async({n, f, seed, policy});
                const auto report = dynamic_radius(pattern, 2);
                require(report.dynamic_radius.has_value() && *report.dynamic_radius <= 2,
                        "async radius > 2 at n=" + std::to_string(n) +
                            " seed=" + std::to_string(seed));
            }
        }
    }
}

// ---- criterion 4: covering lemma suite ----

void criterion_lemmas() {
    SplitMix64 rng(0x9d2c);

    // transitivity, 10^4 constructed instances
    for (int trial = 0; trial < 10'000; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(9));
        const auto pattern = gen_random_nonsplit(n, rng.next(), rng.next_unit() * 0.3);
        const int t1 = 1 + static_cast<int>(rng.next_below(3));
        const int t2 = t1 + static_cast<int>(rng.next_below(3));
        const int t3 = t2 + static_cast<int>(rng.next_below(3));
        NodeSet x(n);
        for (int i = 1; i <= n; ++i)
            if (rng.next() & 1) x.insert(i);
        if (x.empty()) x.insert(1);
        const auto late = product_range(pattern, t2, t3);
        NodeSet w(n);
        x.for_each([&](int j) {
            const auto ins = late.in_neighbors(j).ids();
            w.insert(ins[rng.next_below(ins.size())]);
        });
        const auto early = product_range(pattern, t1, t2);
        NodeSet u(n);
        w.for_each([&](int k) {
            const auto ins = early.in_neighbors(k).ids();
            u.insert(ins[rng.next_below(ins.size())]);
        });
        require(covers_over(u, t1, w, t2, pattern) && covers_over(w, t2, x, t3, pattern),
                "transitivity premise construction failed");
        require(covers_over(u, t1, x, t3, pattern), "cover transitivity violated");
    }

    // both arithmetic lemmas, 10^5 samples each
    for (int trial = 0; trial < 100'000; ++trial) {
        const std::uint64_t den = 1 + rng.next_below(1ULL << 20);
        const std::uint64_t num = den + rng.next_below(1ULL << 40);
        int searched = 0;
        while (static_cast<unsigned __int128>(num) >
               (static_cast<unsigned __int128>(den) << searched))
            ++searched;
        require(ceil_log2_ratio(num, den) == searched, "ceil-log2-of-ceil lemma violated");
    }
    for (int trial = 0; trial < 100'000; ++trial) {
        const std::uint64_t m = 1 + rng.next_below(1ULL << 30);
        const std::uint64_t n = std::max<std::uint64_t>(1, m + rng.next_below(3) - 1);
        require(ceil_log2(m + n) >= ceil_log2(m) + 1, "two-set log lemma violated");
    }

    // heavy preimage: exhaustive argmax agreement (n <= 10) and the e^-4 bound
    const double e4 = std::exp(4.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 8 + static_cast<int>(rng.next_below(3));
        const int s = floor_ln(n);
        const std::uint64_t fseed = rng.next();
        const SubsetAssignment f{n, s, [n, fseed](const NodeSet& a) {
                                     std::uint64_t h = fseed;
                                     a.for_each([&](int id) {
                                         h = derive_stream(h, static_cast<std::uint64_t>(id));
                                     });
                                     return static_cast<int>(h % static_cast<std::uint64_t>(n)) + 1;
                                 }};
        NodeSet restricted(n);
        for (int i = 1; i <= n; ++i)
            if (rng.next() & 1) restricted.insert(i);
        for (int i = 1; i <= n && restricted.size() < s; ++i) restricted.insert(i);
        const auto heavy = heavy_preimage_node(f, restricted);

        std::vector<NodeSet> unions(static_cast<std::size_t>(n) + 1, NodeSet(n));
        const auto ids = restricted.ids();
        std::vector<int> stack;
        auto rec = [&](auto&& self, std::size_t next) -> void {
            if (static_cast<int>(stack.size()) == s) {
                NodeSet a(n);
                for (int id : stack) a.insert(id);
                unions[static_cast<std::size_t>(f.assign(a))] |= a;
                return;
            }
            for (std::size_t i = next; i < ids.size(); ++i) {
                stack.push_back(ids[i]);
                self(self, i + 1);
                stack.pop_back();
            }
        };
        rec(rec, 0);
        int best = 1;
        for (int w = 2; w <= n; ++w)
            if (unions[static_cast<std::size_t>(w)].size() >
                unions[static_cast<std::size_t>(best)].size())
                best = w;
        require(heavy.node == best, "heavy preimage argmax mismatch");
        require(heavy.covered == unions[static_cast<std::size_t>(best)],
                "heavy preimage union mismatch");
        require(static_cast<double>(heavy.covered.size()) >=
                    static_cast<double>(restricted.size()) / e4,
                "heavy preimage bound violated");
    }
}

// ---- criterion 5: the small-cover construction ----

void criterion_small_cover() {
    for (const int n : {8, 16, 32}) {
        const int depth = loglog_cover_depth(n);
        const int size_bound = loglog_cover_size_bound(n);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto pattern = gen_random_nonsplit(n, seed, 0.0);
            const auto cover = small_cover_loglog(pattern, 1);
            require(cover.nodes.size() <= size_bound,
                    "small cover exceeded the size bound at n=" + std::to_string(n));
            require(cover.cert.t1 == 1 && cover.cert.t2 == 1 + depth,
                    "small cover certificate has the wrong depth");
            require(cover.cert.target.is_full(), "small cover does not target all nodes");
            validate_certificate(cover.cert, pattern);
        }
    }
    // the subset budget is respected
    bool rejected = false;
    try {
        small_cover_loglog(gen_random_nonsplit(32, 0, 0.0), 1, 100);
    } catch (const BudgetExceeded&) {
        rejected = true;
    }
    require(rejected, "subset budget was not enforced");
}

// ---- criterion 6: the full loglog pipeline ----

void criterion_pipeline() {
    std::printf("        n  certified-time  ceil(log2 n)\n");
    for (const int n : {8, 16, 32}) {
        int worst_time = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto pattern = gen_random_nonsplit(n, seed, 0.0);
            const auto center = loglog_center(pattern);
            validate_certificate(center.cert, pattern);
            const auto observed = broadcast_time(pattern, center.node, center.time);
            require(observed.has_value() && *observed <= center.time,
                    "certified center does not broadcast by the certified time");
            worst_time = std::max(worst_time, center.time);
        }
        std::printf("      %3d  %14d  %12d\n", n, worst_time,
                    ceil_log2(static_cast<std::uint64_t>(n)));
    }
}

// ---- criterion 7: the consensus lower-bound witness ----

void expect_witness_behavior(const CommunicationPattern& pattern, int k) {
    const auto witnesses = check_no_broadcaster_prefix(pattern, k);
    require(static_cast<int>(witnesses.size()) == pattern.node_count(),
            "incomplete witness map");
    const auto prefix = product_range(pattern, 1, k);
    for (const auto& [j, witness] : witnesses)
        require(!prefix.has_edge(j, witness), "witness received the token after all");
    bool threw = false;
    try {
        check_no_broadcaster_prefix(pattern, k + 1);
    } catch (const BroadcasterExists&) {
        threw = true;
    }
    require(threw, "no BroadcasterExists at k+1");
}

void criterion_lower_bound() {
    // figure 1 (criterion 1's pattern)
    expect_witness_behavior(gen_figure1(), 3);

    // criterion 2's patterns
    for (const int n : {2, 4, 8, 16, 32, 64}) {
        const int bound = ceil_log2(static_cast<std::uint64_t>(n));
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto pattern = gen_random_nonsplit(n, seed, 0.0);
            const auto report = dynamic_radius(pattern, bound);
            require(report.dynamic_radius.has_value(), "nonsplit pattern radius unresolved");
            expect_witness_behavior(pattern, *report.dynamic_radius);
        }
    }

    // criterion 3's patterns: the exhaustive two-round prefixes...
    const auto candidates = enumerate_async_round_graphs(3, 1);
    for (const auto& g1 : candidates) {
        for (const auto& g2 : candidates) {
            const auto pattern = CommunicationPattern::from_rounds({g1, g2});
            const auto report = dynamic_radius(pattern, 2);
            require(report.dynamic_radius.has_value(), "async prefix radius unresolved");
            expect_witness_behavior(pattern, *report.dynamic_radius);
        }
    }
    // ...and the randomized grid
    for (const int n : {5, 9, 15, 21}) {
        const int f = (n - 1) / 2;
        for (const auto policy : {AsyncPolicy::UniformQuorums, AsyncPolicy::CrashFixedSet,
                                  AsyncPolicy::RotatingExclusion}) {
            for (std::uint64_t seed = 0; seed < 200; ++seed) {
                const auto pattern = gen_async({n, f, seed, policy});
                const auto report = dynamic_radius(pattern, 2);
                require(report.dynamic_radius.has_value(), "async pattern radius unresolved");
                expect_witness_behavior(pattern, *report.dynamic_radius);
            }
        }
    }
}

// ---- criterion 8: rooted products ----

void criterion_rooted_products() {
    for (int n = 2; n <= 16; ++n) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const auto pattern = gen_random_rooted(n, seed, 0.0);
            std::vector<CommunicationGraph> graphs;
            for (int t = 1; t <= std::max(n - 1, 1); ++t) graphs.push_back(pattern.graph_at(t));
            const auto check = rooted_product_nonsplit_check(graphs);
            require(static_cast<bool>(check),
                    "rooted product split at n=" + std::to_string(n) +
                        " seed=" + std::to_string(seed) + ": nodes " +
                        std::to_string(check.split_first) + "," +
                        std::to_string(check.split_second));
        }
    }
}

// ---- criterion 9: line lower bound ----

void criterion_line() {
    for (int n = 2; n <= 64; ++n) {
        const auto report = dynamic_radius(gen_line(n), n);
        require(report.dynamic_radius == n - 1,
                "line radius != n-1 at n=" + std::to_string(n));
        require(report.center == 1, "line center != 1");
    }
}

// ---- criterion 10: format round-trips and reproducibility ----

void criterion_round_trips() {
    // graph
    const auto g = figure1_graph();
    std::ostringstream g1, g2;
    write_graph(g, g1);
    {
        std::istringstream in(g1.str());
        write_graph(parse_graph(in), g2);
    }
    require(g1.str() == g2.str(), "graph round-trip not byte-identical");

    // pattern
    const auto pattern = gen_random_nonsplit(10, 77, 0.15);
    std::ostringstream p1, p2;
    write_pattern(pattern, 5, p1);
    {
        std::istringstream in(p1.str());
        write_pattern(parse_pattern(in), 5, p2);
    }
    require(p1.str() == p2.str(), "pattern round-trip not byte-identical");

    // certificate
    const auto cover = find_cover_m(pattern, NodeSet::full_set(10), 1, 5, 3);
    std::ostringstream c1, c2;
    write_certificate(cover.cert, c1);
    {
        std::istringstream in(c1.str());
        write_certificate(parse_certificate(in, 10), c2);
    }
    require(c1.str() == c2.str(), "certificate round-trip not byte-identical");

    // identical seeds give identical CSV
    std::ostringstream r1, r2;
    write_radius_csv(dynamic_radius(gen_random_nonsplit(16, 5, 0.1), 6), r1);
    write_radius_csv(dynamic_radius(gen_random_nonsplit(16, 5, 0.1), 6), r2);
    require(r1.str() == r2.str(), "radius CSV not reproducible");

    ExperimentSpec spec;
    spec.name = "repro";
    spec.generator = "random-nonsplit";
    spec.n_values = {4, 8};
    spec.seeds = 5;
    spec.base_seed = 11;
    std::ostringstream e1, e2;
    run_experiment(spec, e1);
    run_experiment(spec, e2);
    require(e1.str() == e2.str(), "experiment CSV not reproducible");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"criterion 1: figure-1 golden radius values", 1.0, criterion_figure1},
        {"criterion 2: nonsplit radius within ceil(log2 n), certified single covers", 60.0,
         criterion_log_bound},
        {"criterion 3: async radius at most 2 (exhaustive n=3 + randomized grid)", 120.0,
         criterion_async},
        {"criterion 4: covering lemma suite (transitivity, arithmetic, heavy preimage)", 60.0,
         criterion_lemmas},
        {"criterion 5: small-cover construction within bound and budget", 300.0,
         criterion_small_cover},
        {"criterion 6: loglog-center pipeline certified end to end", 300.0, criterion_pipeline},
        {"criterion 7: no-broadcaster witness at k, broadcaster at k+1", 120.0,
         criterion_lower_bound},
        {"criterion 8: products of n-1 random rooted graphs are nonsplit", 60.0,
         criterion_rooted_products},
        {"criterion 9: line pattern radius is exactly n-1", 10.0, criterion_line},
        {"criterion 10: byte-identical round-trips and reproducible CSV", 10.0,
         criterion_round_trips},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            criterion.body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && elapsed > criterion.budget_seconds)
            error = "exceeded the " + std::to_string(criterion.budget_seconds) + "s budget";
        if (error.empty()) {
            std::printf("[PASS] %s (%.2fs)\n", criterion.label.c_str(), elapsed);
        } else {
            std::printf("[FAIL] %s (%.2fs): %s\n", criterion.label.c_str(), elapsed,
                        error.c_str());
            ++failures;
        }
    }
    return failures;
}
