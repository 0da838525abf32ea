#include "dynrad/radius.hpp"

#include <utility>

#include "dynrad/cover.hpp"

namespace dynrad {

std::optional<int> broadcast_time(const CommunicationPattern& pattern, int node, int horizon) {
    const int n = pattern.node_count();
    if (node < 1 || node > n) throw InvalidNode(node);
    if (horizon < 1) throw Error("horizon must be at least 1");
    if (auto h = pattern.horizon(); h && horizon > *h) throw HorizonExceeded(horizon, *h);
    NodeSet reach(n);
    reach.insert(node);
    for (int t = 1; t <= horizon; ++t) {
        const CommunicationGraph g = pattern.graph_at(t);
        NodeSet next(n);
        reach.for_each([&](int k) { next |= g.out_neighbors(k); });
        reach = std::move(next);
        if (reach.is_full()) return t;
    }
    return std::nullopt;
}

RadiusReport dynamic_radius(const CommunicationPattern& pattern, int horizon) {
    const int n = pattern.node_count();
    if (horizon < 1) throw Error("horizon must be at least 1");
    if (auto h = pattern.horizon(); h && horizon > *h) throw HorizonExceeded(horizon, *h);
    RadiusReport report;
    report.n = n;
    report.horizon = horizon;
    report.broadcast_times.assign(static_cast<std::size_t>(n), std::nullopt);
    CommunicationGraph prefix = CommunicationGraph::identity(n);
    int unresolved = n;
    for (int t = 1; t <= horizon && unresolved > 0; ++t) {
        prefix = product(prefix, pattern.graph_at(t));
        for (int i = 1; i <= n; ++i) {
            auto& slot = report.broadcast_times[static_cast<std::size_t>(i) - 1];
            if (!slot && prefix.out_neighbors(i).is_full()) {
                slot = t;
                --unresolved;
            }
        }
    }
    for (int i = 1; i <= n; ++i) {
        const auto& slot = report.broadcast_times[static_cast<std::size_t>(i) - 1];
        if (slot && (!report.dynamic_radius || *slot < *report.dynamic_radius)) {
            report.dynamic_radius = *slot;
            report.center = i;
        }
    }
    return report;
}

std::map<int, int> check_no_broadcaster_prefix(const CommunicationPattern& pattern, int k) {
    if (k < 1) throw Error("round index k must be at least 1");
    const int n = pattern.node_count();
    const CommunicationGraph prefix = product_range(pattern, 1, k);
    for (int j = 1; j <= n; ++j)
        if (prefix.out_neighbors(j).is_full()) throw BroadcasterExists(j);
    std::map<int, int> witnesses;
    for (int j = 1; j <= n; ++j) {
        int witness = 0;
        for (int i = 1; i <= n && witness == 0; ++i)
            if (!prefix.has_edge(j, i)) witness = i;
        witnesses.emplace(j, witness);
    }
    return witnesses;
}

NonsplitCheck rooted_product_nonsplit_check(std::span<const CommunicationGraph> graphs) {
    if (graphs.empty()) throw Error("rooted product check needs at least one graph");
    const int n = graphs.front().node_count();
    if (static_cast<int>(graphs.size()) < n - 1)
        throw Error("rooted product check needs at least n-1 graphs");
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (graphs[i].node_count() != n) throw SizeMismatch(n, graphs[i].node_count());
        if (!is_rooted(graphs[i])) throw NotRooted(static_cast<int>(i) + 1);
    }
    CommunicationGraph acc = CommunicationGraph::identity(n);
    for (int i = 0; i < n - 1; ++i) acc = product(acc, graphs[static_cast<std::size_t>(i)]);
    return is_nonsplit(acc);
}

AsyncExhaustiveResult async_exhaustive_radius(int n, int f, int rounds) {
    if (rounds < 1) throw Error("need at least one round");
    const auto candidates = enumerate_async_round_graphs(n, f);
    AsyncExhaustiveResult result;
    std::vector<std::size_t> pick(static_cast<std::size_t>(rounds), 0);
    for (;;) {
        CommunicationGraph prefix = candidates[pick[0]];
        int radius = rounds + 1;
        if (!broadcasters(prefix).empty()) {
            radius = 1;
        } else {
            for (int r = 1; r < rounds; ++r) {
                prefix = product(prefix, candidates[pick[static_cast<std::size_t>(r)]]);
                if (!broadcasters(prefix).empty()) {
                    radius = r + 1;
                    break;
                }
            }
        }
        result.max_radius = std::max(result.max_radius, radius);
        ++result.prefixes_checked;
        int pos = rounds - 1;
        while (pos >= 0) {
            auto& p = pick[static_cast<std::size_t>(pos)];
            if (++p < candidates.size()) break;
            p = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return result;
}

}  // namespace dynrad
