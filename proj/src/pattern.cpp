#include "dynrad/pattern.hpp"

#include <algorithm>
#include <utility>

#include "dynrad/rng.hpp"

namespace dynrad {

CommunicationPattern CommunicationPattern::from_rounds(std::vector<CommunicationGraph> rounds) {
    if (rounds.empty()) throw Error("a stored pattern needs at least one round");
    const int n = rounds.front().node_count();
    for (const auto& g : rounds)
        if (g.node_count() != n) throw SizeMismatch(n, g.node_count());
    CommunicationPattern p;
    p.n_ = n;
    p.horizon_ = static_cast<int>(rounds.size());
    p.stored_ = std::move(rounds);
    return p;
}

CommunicationPattern CommunicationPattern::from_generator(int n, GeneratorFn gen) {
    if (n < 1) throw Error("a pattern needs at least one node");
    if (!gen) throw Error("null pattern generator");
    CommunicationPattern p;
    p.n_ = n;
    p.gen_ = std::move(gen);
    return p;
}

CommunicationGraph CommunicationPattern::graph_at(int t) const {
    if (t < 1) throw Error("round indices start at 1");
    if (horizon_) {
        if (t > *horizon_) throw HorizonExceeded(t, *horizon_);
        return stored_[static_cast<std::size_t>(t) - 1];
    }
    CommunicationGraph g = gen_(t);
    if (g.node_count() != n_) throw SizeMismatch(g.node_count(), n_);
    return g;
}

const CommunicationGraph& figure1_graph() {
    static const CommunicationGraph g(6, {{1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 1}, {3, 4},
                                          {1, 4}, {4, 1}, {2, 5}, {5, 2}, {3, 6}, {6, 3}});
    return g;
}

CommunicationPattern gen_figure1() {
    return CommunicationPattern::from_generator(6, [](int) { return figure1_graph(); });
}

CommunicationPattern gen_star(int n, std::function<int(int)> center_schedule) {
    if (n < 1) throw Error("a pattern needs at least one node");
    if (!center_schedule) throw Error("null center schedule");
    return CommunicationPattern::from_generator(n, [n, schedule = std::move(center_schedule)](int t) {
        const int c = schedule(t);
        if (c < 1 || c > n) throw InvalidNode(c);
        std::vector<NodeSet> rows(static_cast<std::size_t>(n), NodeSet(n));
        rows[static_cast<std::size_t>(c) - 1] = NodeSet::full_set(n);
        return CommunicationGraph::from_out_rows(std::move(rows));
    });
}

CommunicationPattern gen_star_fixed(int n, int center) {
    if (center < 1 || center > n) throw InvalidNode(center);
    return gen_star(n, [center](int) { return center; });
}

CommunicationPattern gen_star_rotating(int n) {
    return gen_star(n, [n](int t) { return (t - 1) % n + 1; });
}

CommunicationPattern gen_line(int n) {
    if (n < 1) throw Error("a pattern needs at least one node");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
    CommunicationGraph g(n, edges);
    return CommunicationPattern::from_generator(n, [g](int) { return g; });
}

CommunicationPattern gen_random_nonsplit(int n, std::uint64_t seed, double extra_edge_prob) {
    if (n < 1) throw Error("a pattern needs at least one node");
    if (extra_edge_prob < 0.0 || extra_edge_prob > 1.0)
        throw Error("edge probability must lie in [0, 1]");
    return CommunicationPattern::from_generator(n, [n, seed, extra_edge_prob](int t) {
        SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(t)));
        std::vector<NodeSet> rows(static_cast<std::size_t>(n), NodeSet(n));
        // A common parent for every unordered pair forces nonsplitness.
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
                rows[static_cast<std::size_t>(k) - 1].insert(i);
                rows[static_cast<std::size_t>(k) - 1].insert(j);
            }
        if (extra_edge_prob > 0.0) {
            for (int u = 1; u <= n; ++u)
                for (int v = 1; v <= n; ++v) {
                    if (u == v || rows[static_cast<std::size_t>(u) - 1].contains(v)) continue;
                    if (rng.next_unit() < extra_edge_prob)
                        rows[static_cast<std::size_t>(u) - 1].insert(v);
                }
        }
        return CommunicationGraph::from_out_rows(std::move(rows));
    });
}

CommunicationPattern gen_random_rooted(int n, std::uint64_t seed, double extra_edge_prob) {
    if (n < 1) throw Error("a pattern needs at least one node");
    if (extra_edge_prob < 0.0 || extra_edge_prob > 1.0)
        throw Error("edge probability must lie in [0, 1]");
    return CommunicationPattern::from_generator(n, [n, seed, extra_edge_prob](int t) {
        SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(t)));
        std::vector<NodeSet> rows(static_cast<std::size_t>(n), NodeSet(n));
        const int root = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
        std::vector<int> attached{root};
        for (int v = 1; v <= n; ++v) {
            if (v == root) continue;
            const int parent = attached[rng.next_below(attached.size())];
            rows[static_cast<std::size_t>(parent) - 1].insert(v);
            attached.push_back(v);
        }
        if (extra_edge_prob > 0.0) {
            for (int u = 1; u <= n; ++u)
                for (int v = 1; v <= n; ++v) {
                    if (u == v || rows[static_cast<std::size_t>(u) - 1].contains(v)) continue;
                    if (rng.next_unit() < extra_edge_prob)
                        rows[static_cast<std::size_t>(u) - 1].insert(v);
                }
        }
        return CommunicationGraph::from_out_rows(std::move(rows));
    });
}

namespace {

NodeSet crash_set(int n, int f, std::uint64_t seed) {
    // First f entries of a seed-derived permutation of [n].
    SplitMix64 rng(derive_stream(seed, 0xc7a5'4a11));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.next_below(i)]);
    NodeSet out(n);
    for (int i = 0; i < f; ++i) out.insert(perm[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace

CommunicationPattern gen_async(const AsyncAdversaryConfig& cfg) {
    const int n = cfg.n;
    const int f = cfg.f;
    if (n < 1) throw InvalidConfig("async pattern needs at least one node");
    if (f < 0 || f >= n)
        throw InvalidConfig("crash budget must satisfy 0 <= f < n, got f=" + std::to_string(f) +
                            ", n=" + std::to_string(n));
    const NodeSet fixed_crashed =
        cfg.policy == AsyncPolicy::CrashFixedSet ? crash_set(n, f, cfg.seed) : NodeSet(n);
    return CommunicationPattern::from_generator(n, [n, f, cfg, fixed_crashed](int t) {
        std::vector<NodeSet> in_rows(static_cast<std::size_t>(n), NodeSet(n));
        switch (cfg.policy) {
            case AsyncPolicy::UniformQuorums: {
                for (int i = 1; i <= n; ++i) {
                    SplitMix64 rng(derive_stream(cfg.seed, static_cast<std::uint64_t>(t),
                                                 static_cast<std::uint64_t>(i)));
                    // Partial Fisher-Yates over the other n-1 nodes, keeping n-f-1.
                    std::vector<int> others;
                    others.reserve(static_cast<std::size_t>(n) - 1);
                    for (int j = 1; j <= n; ++j)
                        if (j != i) others.push_back(j);
                    NodeSet& row = in_rows[static_cast<std::size_t>(i) - 1];
                    row.insert(i);
                    for (int picked = 0; picked < n - f - 1; ++picked) {
                        const std::size_t idx =
                            static_cast<std::size_t>(picked) +
                            rng.next_below(others.size() - static_cast<std::size_t>(picked));
                        std::swap(others[static_cast<std::size_t>(picked)], others[idx]);
                        row.insert(others[static_cast<std::size_t>(picked)]);
                    }
                }
                break;
            }
            case AsyncPolicy::CrashFixedSet: {
                NodeSet alive = NodeSet::full_set(n);
                alive -= fixed_crashed;
                for (int i = 1; i <= n; ++i) {
                    NodeSet row = alive;
                    row.insert(i);
                    in_rows[static_cast<std::size_t>(i) - 1] = std::move(row);
                }
                break;
            }
            case AsyncPolicy::RotatingExclusion: {
                NodeSet excluded(n);
                for (int a = 0; a < f; ++a)
                    excluded.insert(static_cast<int>((static_cast<long long>(t - 1) * f + a) % n) + 1);
                NodeSet alive = NodeSet::full_set(n);
                alive -= excluded;
                for (int i = 1; i <= n; ++i) {
                    NodeSet row = alive;
                    row.insert(i);
                    in_rows[static_cast<std::size_t>(i) - 1] = std::move(row);
                }
                break;
            }
        }
        return CommunicationGraph::from_in_rows(std::move(in_rows));
    });
}

std::vector<CommunicationGraph> enumerate_async_round_graphs(int n, int f) {
    if (n < 1) throw InvalidConfig("async enumeration needs at least one node");
    if (f < 0 || f >= n) throw InvalidConfig("crash budget must satisfy 0 <= f < n");
    // Per-node choices: subsets of [n] containing the node, of size >= n-f.
    std::vector<std::vector<NodeSet>> choices(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            if (!(mask & (1ULL << (i - 1)))) continue;
            if (std::popcount(mask) < n - f) continue;
            NodeSet s(n);
            for (int j = 1; j <= n; ++j)
                if (mask & (1ULL << (j - 1))) s.insert(j);
            choices[static_cast<std::size_t>(i) - 1].push_back(std::move(s));
        }
    }
    std::vector<CommunicationGraph> out;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    for (;;) {
        std::vector<NodeSet> in_rows;
        in_rows.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            in_rows.push_back(choices[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]]);
        out.push_back(CommunicationGraph::from_in_rows(std::move(in_rows)));
        int pos = n - 1;
        while (pos >= 0) {
            auto& p = pick[static_cast<std::size_t>(pos)];
            if (++p < choices[static_cast<std::size_t>(pos)].size()) break;
            p = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

}  // namespace dynrad
