#include "lemma_campaign.hpp"

#include <algorithm>
#include <cmath>

#include "dynrad/cover.hpp"
#include "dynrad/pattern.hpp"
#include "dynrad/radius.hpp"
#include "dynrad/rng.hpp"

namespace dynrad {

namespace {

NodeSet random_subset(SplitMix64& rng, int n, bool nonempty) {
    NodeSet s(n);
    for (int i = 1; i <= n; ++i)
        if (rng.next() & 1) s.insert(i);
    if (nonempty && s.empty()) s.insert(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1);
    return s;
}

// Reference value of ceil(log2(num/den)): the smallest k >= 0 with
// num <= den * 2^k. Independent of the ceil_log2_ratio implementation.
int ceil_log2_rational_by_search(std::uint64_t num, std::uint64_t den) {
    for (int k = 0;; ++k) {
        const unsigned __int128 rhs = static_cast<unsigned __int128>(den) << k;
        if (static_cast<unsigned __int128>(num) <= rhs) return k;
    }
}

struct Campaign {
    SplitMix64 rng;
    std::vector<CheckLine> lines;

    explicit Campaign(std::uint64_t seed) : rng(derive_stream(seed, 0x1e44a5)) {}

    void report(const std::string& name, bool pass, const std::string& detail) {
        lines.push_back({name, pass, detail});
    }

    CommunicationPattern random_nonsplit_pattern(int n) {
        const double prob = rng.next_unit() * 0.3;
        return gen_random_nonsplit(n, rng.next(), prob);
    }

    void check_reflexivity(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 1 + static_cast<int>(rng.next_below(12));
            const auto pattern = random_nonsplit_pattern(n);
            const int t = 1 + static_cast<int>(rng.next_below(6));
            const NodeSet u = random_subset(rng, n, false);
            if (!covers_over(u, t, u, t, pattern)) {
                report("cover-reflexivity", false,
                       "violated at n=" + std::to_string(n) + " t=" + std::to_string(t));
                return;
            }
        }
        report("cover-reflexivity", true, std::to_string(trials) + " instances");
    }

    void check_transitivity(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(9));
            const auto pattern = random_nonsplit_pattern(n);
            const int t1 = 1 + static_cast<int>(rng.next_below(3));
            const int t2 = t1 + static_cast<int>(rng.next_below(3));
            const int t3 = t2 + static_cast<int>(rng.next_below(3));
            const NodeSet x = random_subset(rng, n, true);
            // Build sets that satisfy the premises: pick one in-neighbor per
            // covered node in each interval product.
            const CommunicationGraph late = product_range(pattern, t2, t3);
            NodeSet w(n);
            x.for_each([&](int j) {
                const auto ins = late.in_neighbors(j).ids();
                w.insert(ins[rng.next_below(ins.size())]);
            });
            const CommunicationGraph early = product_range(pattern, t1, t2);
            NodeSet u(n);
            w.for_each([&](int k) {
                const auto ins = early.in_neighbors(k).ids();
                u.insert(ins[rng.next_below(ins.size())]);
            });
            if (!covers_over(u, t1, w, t2, pattern) || !covers_over(w, t2, x, t3, pattern)) {
                report("cover-transitivity", false, "premise construction broke, trial " +
                                                        std::to_string(trial));
                return;
            }
            if (!covers_over(u, t1, x, t3, pattern)) {
                report("cover-transitivity", false,
                       "violated at n=" + std::to_string(n) + " t1=" + std::to_string(t1) +
                           " t2=" + std::to_string(t2) + " t3=" + std::to_string(t3));
                return;
            }
        }
        report("cover-transitivity", true, std::to_string(trials) + " instances");
    }

    void check_certificate_composition(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(9));
            const auto pattern = random_nonsplit_pattern(n);
            const NodeSet x = random_subset(rng, n, true);
            const int m = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(x.size())));
            const int t1 = 1 + static_cast<int>(rng.next_below(2));
            const int d2 = ceil_log2_ratio(static_cast<std::uint64_t>(x.size()),
                                           static_cast<std::uint64_t>(m));
            const int t2 = t1 + ceil_log2(static_cast<std::uint64_t>(n));
            const int t3 = t2 + d2 + static_cast<int>(rng.next_below(2));
            try {
                const CoverResult mid = find_cover_m(pattern, x, t2, t3, m);
                const SingleCover top = find_single_cover(pattern, mid.nodes, t1, t2);
                const CoverCertificate composed = compose_certificates(top.cert, mid.cert);
                validate_certificate(composed, pattern);
                if (!covers_over(top.cert.source, t1, x, t3, pattern)) {
                    report("certificate-composition", false, "composed cover does not hold");
                    return;
                }
            } catch (const Error& e) {
                report("certificate-composition", false, e.what());
                return;
            }
        }
        report("certificate-composition", true, std::to_string(trials) + " instances");
    }

    void check_ceil_log2_of_ceil(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const std::uint64_t den = 1 + rng.next_below(1ULL << 20);
            const std::uint64_t num = den + rng.next_below(1ULL << 40);
            if (ceil_log2_ratio(num, den) != ceil_log2_rational_by_search(num, den)) {
                report("ceil-log2-of-ceil", false,
                       "violated at x=" + std::to_string(num) + "/" + std::to_string(den));
                return;
            }
        }
        report("ceil-log2-of-ceil", true, std::to_string(trials) + " sampled rationals");
    }

    void check_ceil_log2_two_sets(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const std::uint64_t m = 1 + rng.next_below(1ULL << 30);
            const std::uint64_t delta = rng.next_below(3);  // n in {m-1, m, m+1}
            const std::uint64_t n = std::max<std::uint64_t>(1, m + delta - 1);
            if (ceil_log2(m + n) < ceil_log2(m) + 1) {
                report("ceil-log2-two-sets", false,
                       "violated at m=" + std::to_string(m) + " n=" + std::to_string(n));
                return;
            }
        }
        report("ceil-log2-two-sets", true, std::to_string(trials) + " sampled pairs");
    }

    void check_single_cover(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(15));
            const auto pattern = random_nonsplit_pattern(n);
            const NodeSet w = random_subset(rng, n, true);
            const int t1 = 1 + static_cast<int>(rng.next_below(4));
            const int t2 = t1 + ceil_log2(static_cast<std::uint64_t>(w.size())) +
                           static_cast<int>(rng.next_below(3));
            try {
                const SingleCover cover = find_single_cover(pattern, w, t1, t2);
                validate_certificate(cover.cert, pattern);
                if (cover.cert.source.size() != 1) {
                    report("single-cover-certificates", false, "source set is not a singleton");
                    return;
                }
            } catch (const Error& e) {
                report("single-cover-certificates", false, e.what());
                return;
            }
        }
        report("single-cover-certificates", true, std::to_string(trials) + " instances");
    }

    void check_cover_m(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(15));
            const auto pattern = random_nonsplit_pattern(n);
            const NodeSet w = random_subset(rng, n, true);
            const int m = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(w.size()) + 2));
            const int t1 = 1 + static_cast<int>(rng.next_below(4));
            const int t2 = t1 +
                           ceil_log2_ratio(static_cast<std::uint64_t>(w.size()),
                                           static_cast<std::uint64_t>(std::min(m, w.size()))) +
                           static_cast<int>(rng.next_below(3));
            try {
                const CoverResult cover = find_cover_m(pattern, w, t1, t2, m);
                validate_certificate(cover.cert, pattern);
                if (cover.nodes.size() > std::min(m, w.size())) {
                    report("cover-m-certificates", false, "cover larger than m");
                    return;
                }
            } catch (const Error& e) {
                report("cover-m-certificates", false, e.what());
                return;
            }
        }
        report("cover-m-certificates", true, std::to_string(trials) + " instances");
    }

    void check_small_cover(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 8 + static_cast<int>(rng.next_below(9));
            const auto pattern = random_nonsplit_pattern(n);
            const int t = 1 + static_cast<int>(rng.next_below(3));
            try {
                const CoverResult cover = small_cover_loglog(pattern, t);
                validate_certificate(cover.cert, pattern);
                if (cover.nodes.size() > loglog_cover_size_bound(n)) {
                    report("small-cover-certificates", false, "cover exceeds the size bound");
                    return;
                }
                if (cover.cert.t2 != t + loglog_cover_depth(n)) {
                    report("small-cover-certificates", false, "unexpected cover depth");
                    return;
                }
            } catch (const Error& e) {
                report("small-cover-certificates", false, e.what());
                return;
            }
        }
        report("small-cover-certificates", true, std::to_string(trials) + " instances");
    }

    void check_loglog_center(int trials) {
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(15));
            const auto pattern = random_nonsplit_pattern(n);
            try {
                const CenterResult center = loglog_center(pattern);
                validate_certificate(center.cert, pattern);
                const auto observed = broadcast_time(pattern, center.node, center.time);
                if (!observed || *observed > center.time) {
                    report("loglog-center-certificates", false,
                           "certified time not achieved at n=" + std::to_string(n));
                    return;
                }
            } catch (const Error& e) {
                report("loglog-center-certificates", false, e.what());
                return;
            }
        }
        report("loglog-center-certificates", true, std::to_string(trials) + " instances");
    }

    void check_heavy_preimage(int trials) {
        const double e4 = std::exp(4.0);
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 8 + static_cast<int>(rng.next_below(3));  // 8..10
            const int s = floor_ln(n);
            const std::uint64_t fseed = rng.next();
            const SubsetAssignment assignment{n, s, [n, fseed](const NodeSet& subset) {
                                                  std::uint64_t h = fseed;
                                                  subset.for_each([&](int id) {
                                                      h = derive_stream(h, static_cast<std::uint64_t>(id));
                                                  });
                                                  return static_cast<int>(h % static_cast<std::uint64_t>(n)) + 1;
                                              }};
            const NodeSet restricted = NodeSet::full_set(n);
            const HeavyPreimage heavy = heavy_preimage_node(assignment, restricted);
            // Independent exhaustive argmax.
            std::vector<NodeSet> unions(static_cast<std::size_t>(n) + 1, NodeSet(n));
            std::vector<int> stack;
            auto recurse = [&](auto&& self, int next) -> void {
                if (static_cast<int>(stack.size()) == s) {
                    NodeSet a(n);
                    for (int id : stack) a.insert(id);
                    unions[static_cast<std::size_t>(assignment.assign(a))] |= a;
                    return;
                }
                for (int id = next; id <= n; ++id) {
                    stack.push_back(id);
                    self(self, id + 1);
                    stack.pop_back();
                }
            };
            recurse(recurse, 1);
            int best = 1;
            for (int w = 2; w <= n; ++w)
                if (unions[static_cast<std::size_t>(w)].size() > unions[static_cast<std::size_t>(best)].size())
                    best = w;
            if (heavy.node != best || heavy.covered != unions[static_cast<std::size_t>(best)]) {
                report("heavy-preimage", false, "argmax mismatch at n=" + std::to_string(n));
                return;
            }
            if (static_cast<double>(heavy.covered.size()) < static_cast<double>(n) / e4) {
                report("heavy-preimage", false, "pigeonhole bound violated at n=" + std::to_string(n));
                return;
            }
        }
        report("heavy-preimage", true, std::to_string(trials) + " instances");
    }

    void check_async_in_degree(int trials) {
        const char* policies[] = {"uniform", "crash-fixed", "rotating"};
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(11));
            const int f = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            AsyncAdversaryConfig cfg;
            cfg.n = n;
            cfg.f = f;
            cfg.seed = rng.next();
            cfg.policy = parse_policy_name(policies[rng.next_below(3)]);
            const auto pattern = gen_async(cfg);
            for (int t = 1; t <= 3; ++t) {
                const auto g = pattern.graph_at(t);
                for (int i = 1; i <= n; ++i) {
                    if (g.in_neighbors(i).size() < n - f) {
                        report("async-in-degree", false, "in-degree below n-f at n=" +
                                                             std::to_string(n) + " f=" + std::to_string(f));
                        return;
                    }
                }
                if (n > 2 * f && !is_nonsplit(g)) {
                    report("async-in-degree", false,
                           "majority quorum graph not nonsplit at n=" + std::to_string(n));
                    return;
                }
            }
        }
        report("async-in-degree", true, std::to_string(trials) + " instances");
    }

    static AsyncPolicy parse_policy_name(const std::string& name) {
        if (name == "uniform") return AsyncPolicy::UniformQuorums;
        if (name == "crash-fixed") return AsyncPolicy::CrashFixedSet;
        return AsyncPolicy::RotatingExclusion;
    }
};

}  // namespace

std::vector<CheckLine> run_lemma_campaign(std::uint64_t seed, const CampaignCounts& counts) {
    Campaign campaign(seed);
    campaign.check_reflexivity(std::max(1, counts.transitivity / 10));
    campaign.check_transitivity(counts.transitivity);
    campaign.check_certificate_composition(std::max(1, counts.cover_trials / 2));
    campaign.check_ceil_log2_of_ceil(counts.arithmetic);
    campaign.check_ceil_log2_two_sets(counts.arithmetic);
    campaign.check_single_cover(counts.cover_trials);
    campaign.check_cover_m(counts.cover_trials);
    campaign.check_small_cover(std::max(1, counts.cover_trials / 10));
    campaign.check_loglog_center(std::max(1, counts.cover_trials / 4));
    campaign.check_heavy_preimage(counts.heavy_trials);
    campaign.check_async_in_degree(counts.async_trials);
    return campaign.lines;
}

}  // namespace dynrad
