#include "dynrad/cover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <utility>

namespace dynrad {

int ceil_log2(std::uint64_t x) {
    if (x == 0) throw Error("ceil_log2 needs a positive argument");
    return static_cast<int>(std::bit_width(x - 1));
}

int ceil_log2_ratio(std::uint64_t num, std::uint64_t den) {
    if (num == 0 || den == 0) throw Error("ceil_log2_ratio needs positive arguments");
    if (num <= den) return 0;
    // ceil(log2 x) = ceil(log2 ceil(x)) for x >= 1.
    return ceil_log2((num + den - 1) / den);
}

int floor_ln(int n) {
    if (n < 1) throw Error("floor_ln needs a positive argument");
    return static_cast<int>(std::floor(std::log(static_cast<double>(n))));
}

int loglog_cover_depth(int n) {
    if (n < 1) throw Error("loglog_cover_depth needs a positive argument");
    if (n == 1) return 0;
    const double d = std::ceil(std::log2(std::log(static_cast<double>(n))));
    return d > 0 ? static_cast<int>(d) : 0;
}

int loglog_cover_size_bound(int n) {
    if (n < 1) throw Error("loglog_cover_size_bound needs a positive argument");
    // ln(e^4 / (e^4 - 1)) = -ln(1 - e^-4)
    const double denom = -std::log1p(-std::exp(-4.0));
    const int picks = static_cast<int>(std::ceil(1.0 + std::log(static_cast<double>(n)) / denom));
    return picks + floor_ln(n);
}

int loglog_pipeline_time_bound(int n) {
    if (n < 1) throw Error("loglog_pipeline_time_bound needs a positive argument");
    if (n < 8) return 1 + ceil_log2(static_cast<std::uint64_t>(n));
    return 1 + ceil_log2(static_cast<std::uint64_t>(loglog_cover_size_bound(n))) +
           loglog_cover_depth(n);
}

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

bool covers(const NodeSet& source, const NodeSet& target, const CommunicationGraph& g) {
    const int n = g.node_count();
    if (source.ambient() != n) throw SizeMismatch(source.ambient(), n);
    if (target.ambient() != n) throw SizeMismatch(target.ambient(), n);
    bool ok = true;
    target.for_each([&](int j) {
        if (ok && !g.in_neighbors(j).intersects(source)) ok = false;
    });
    return ok;
}

namespace {

void check_interval(const CommunicationPattern& pattern, int t1, int t2) {
    if (t1 < 1) throw Error("round indices start at 1");
    if (t2 < t1) throw Error("interval end must not precede its start");
    if (auto h = pattern.horizon(); h && t2 - 1 > *h) throw HorizonExceeded(t2, *h);
}

// Rounds t1..t2-1 of the pattern, each verified nonsplit.
std::vector<CommunicationGraph> materialize_nonsplit(const CommunicationPattern& pattern,
                                                     int t1, int t2) {
    check_interval(pattern, t1, t2);
    std::vector<CommunicationGraph> rounds;
    rounds.reserve(static_cast<std::size_t>(t2 - t1));
    for (int t = t1; t < t2; ++t) {
        CommunicationGraph g = pattern.graph_at(t);
        if (auto c = is_nonsplit(g); !c) throw NotNonsplit(t, c.split_first, c.split_second);
        rounds.push_back(std::move(g));
    }
    return rounds;
}

using WitnessMap = std::map<int, std::vector<int>>;

// Covers `ids` (ascending) at the end of `rounds` from a single node at round
// index `lo`. Paths have rounds.size() - lo hops.
std::pair<int, WitnessMap> single_cover_core(std::span<const CommunicationGraph> rounds,
                                             const std::vector<int>& ids, std::size_t lo) {
    if (ids.size() == 1) {
        // A node covers itself at any depth through its self-loops.
        const int w = ids.front();
        WitnessMap m;
        m.emplace(w, std::vector<int>(rounds.size() - lo + 1, w));
        return {w, std::move(m)};
    }
    if (lo >= rounds.size())
        throw Error("cover recursion ran out of rounds; depth precondition violated");
    const std::size_t half = (ids.size() + 1) / 2;
    std::vector<int> left(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<int> right(ids.begin() + static_cast<std::ptrdiff_t>(half), ids.end());
    auto [j1, left_paths] = single_cover_core(rounds, left, lo + 1);
    auto [j2, right_paths] = single_cover_core(rounds, right, lo + 1);
    const CommunicationGraph& g = rounds[lo];
    const int parent = g.in_neighbors(j1).first_common_with(g.in_neighbors(j2));
    if (parent == 0) throw Error("no common in-neighbor in a graph verified nonsplit");
    WitnessMap merged;
    auto absorb = [&](WitnessMap& paths) {
        for (auto& [target, p] : paths) {
            std::vector<int> np;
            np.reserve(p.size() + 1);
            np.push_back(parent);
            np.insert(np.end(), p.begin(), p.end());
            merged.emplace(target, std::move(np));
        }
    };
    absorb(left_paths);
    absorb(right_paths);
    return {parent, std::move(merged)};
}

// The covering node alone, without witness paths. Same choices as
// single_cover_core.
int single_cover_node_only(std::span<const CommunicationGraph> rounds,
                           std::span<const int> ids, std::size_t lo) {
    if (ids.size() == 1) return ids.front();
    if (lo >= rounds.size())
        throw Error("cover recursion ran out of rounds; depth precondition violated");
    const std::size_t half = (ids.size() + 1) / 2;
    const int j1 = single_cover_node_only(rounds, ids.subspan(0, half), lo + 1);
    const int j2 = single_cover_node_only(rounds, ids.subspan(half), lo + 1);
    const CommunicationGraph& g = rounds[lo];
    const int parent = g.in_neighbors(j1).first_common_with(g.in_neighbors(j2));
    if (parent == 0) throw Error("no common in-neighbor in a graph verified nonsplit");
    return parent;
}

// Lexicographic k-combinations of `ids`; the callback receives a reused
// scratch vector of the chosen ids and returns false to stop early.
template <typename F>
void for_each_combination(const std::vector<int>& ids, int k, F&& fn) {
    const int m = static_cast<int>(ids.size());
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> chosen(static_cast<std::size_t>(k));
    for (;;) {
        for (int i = 0; i < k; ++i)
            chosen[static_cast<std::size_t>(i)] = ids[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        if (!fn(chosen)) return;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

CommunicationGraph product_range(const CommunicationPattern& pattern, int t1, int t2) {
    check_interval(pattern, t1, t2);
    CommunicationGraph acc = CommunicationGraph::identity(pattern.node_count());
    for (int t = t1; t < t2; ++t) acc = product(acc, pattern.graph_at(t));
    return acc;
}

bool covers_over(const NodeSet& source, int t1, const NodeSet& target, int t2,
                 const CommunicationPattern& pattern) {
    return covers(source, target, product_range(pattern, t1, t2));
}

std::vector<int> partition_sizes(int n, int m) {
    if (m < 1 || n < m) throw InvalidPartition(n, m);
    const int k = n / m;
    const int r = n % m;
    std::vector<int> parts(static_cast<std::size_t>(m), k);
    for (int i = 0; i < r; ++i) ++parts[static_cast<std::size_t>(i)];
    return parts;
}

void validate_certificate(const CoverCertificate& cert, const CommunicationPattern& pattern) {
    const int n = pattern.node_count();
    if (cert.source.ambient() != n || cert.target.ambient() != n)
        throw CertificateInvalid("certificate node universe does not match the pattern");
    if (cert.t1 < 1 || cert.t2 < cert.t1)
        throw CertificateInvalid("certificate times are out of order");
    if (auto h = pattern.horizon(); h && cert.t2 - 1 > *h)
        throw CertificateInvalid("certificate interval exceeds the pattern horizon");
    const std::size_t hops = static_cast<std::size_t>(cert.t2 - cert.t1);
    std::vector<CommunicationGraph> rounds;
    rounds.reserve(hops);
    for (int t = cert.t1; t < cert.t2; ++t) rounds.push_back(pattern.graph_at(t));
    for (const auto& [j, path] : cert.witness_paths) {
        (void)path;
        if (!cert.target.contains(j))
            throw CertificateInvalid("witness for node " + std::to_string(j) +
                                     " which is not in the target set");
    }
    cert.target.for_each([&](int j) {
        const auto it = cert.witness_paths.find(j);
        if (it == cert.witness_paths.end())
            throw CertificateInvalid("no witness path for target node " + std::to_string(j));
        const auto& path = it->second;
        if (path.size() != hops + 1)
            throw CertificateInvalid("witness path for node " + std::to_string(j) +
                                     " has length " + std::to_string(path.size()) +
                                     ", expected " + std::to_string(hops + 1));
        for (int id : path)
            if (id < 1 || id > n)
                throw CertificateInvalid("witness path for node " + std::to_string(j) +
                                         " contains invalid node id " + std::to_string(id));
        if (!cert.source.contains(path.front()))
            throw CertificateInvalid("witness path for node " + std::to_string(j) +
                                     " does not start in the source set");
        if (path.back() != j)
            throw CertificateInvalid("witness path for node " + std::to_string(j) +
                                     " does not end at it");
        for (std::size_t s = 0; s < hops; ++s)
            if (!rounds[s].has_edge(path[s], path[s + 1]))
                throw CertificateInvalid("hop " + std::to_string(path[s]) + "->" +
                                         std::to_string(path[s + 1]) + " of the path for node " +
                                         std::to_string(j) + " is not an edge of round " +
                                         std::to_string(cert.t1 + static_cast<int>(s)));
    });
}

CoverCertificate compose_certificates(const CoverCertificate& first,
                                      const CoverCertificate& second) {
    if (first.source.ambient() != second.source.ambient())
        throw CertificateInvalid("certificates live on different node universes");
    if (first.t2 != second.t1)
        throw CertificateInvalid("certificates do not meet at a common time");
    if (!second.source.is_subset_of(first.target))
        throw CertificateInvalid("second certificate's source is not covered by the first's target");
    CoverCertificate out;
    out.source = first.source;
    out.target = second.target;
    out.t1 = first.t1;
    out.t2 = second.t2;
    for (const auto& [j, tail] : second.witness_paths) {
        if (tail.empty()) throw CertificateInvalid("empty witness path");
        const auto it = first.witness_paths.find(tail.front());
        if (it == first.witness_paths.end())
            throw CertificateInvalid("no witness in the first certificate for splice node " +
                                     std::to_string(tail.front()));
        std::vector<int> path = it->second;
        path.insert(path.end(), tail.begin() + 1, tail.end());
        out.witness_paths.emplace(j, std::move(path));
    }
    return out;
}

SingleCover find_single_cover(const CommunicationPattern& pattern, const NodeSet& target,
                              int t1, int t2) {
    const int n = pattern.node_count();
    if (target.ambient() != n) throw SizeMismatch(target.ambient(), n);
    if (target.empty()) throw Error("cover target must be nonempty");
    check_interval(pattern, t1, t2);
    const int need = ceil_log2(static_cast<std::uint64_t>(target.size()));
    if (t2 - t1 < need) throw InsufficientDepth(t2 - t1, need);
    const auto rounds = materialize_nonsplit(pattern, t1, t2);
    auto [node, paths] = single_cover_core(rounds, target.ids(), 0);
    SingleCover out;
    out.node = node;
    out.cert.source = NodeSet(n);
    out.cert.source.insert(node);
    out.cert.target = target;
    out.cert.t1 = t1;
    out.cert.t2 = t2;
    out.cert.witness_paths = std::move(paths);
    return out;
}

CoverResult find_cover_m(const CommunicationPattern& pattern, const NodeSet& target,
                         int t1, int t2, int m) {
    const int n = pattern.node_count();
    if (target.ambient() != n) throw SizeMismatch(target.ambient(), n);
    if (target.empty()) throw Error("cover target must be nonempty");
    if (m < 1) throw Error("cover size bound must be positive");
    check_interval(pattern, t1, t2);
    const int target_size = target.size();
    m = std::min(m, target_size);
    const int need = ceil_log2_ratio(static_cast<std::uint64_t>(target_size),
                                     static_cast<std::uint64_t>(m));
    if (t2 - t1 < need) throw InsufficientDepth(t2 - t1, need);
    const auto rounds = materialize_nonsplit(pattern, t1, t2);
    const auto parts = partition_sizes(target_size, m);
    const auto ids = target.ids();
    CoverResult out;
    out.nodes = NodeSet(n);
    out.cert.target = target;
    out.cert.t1 = t1;
    out.cert.t2 = t2;
    std::size_t offset = 0;
    for (int part : parts) {
        const std::vector<int> chunk(ids.begin() + static_cast<std::ptrdiff_t>(offset),
                                     ids.begin() + static_cast<std::ptrdiff_t>(offset + static_cast<std::size_t>(part)));
        auto [node, paths] = single_cover_core(rounds, chunk, 0);
        out.nodes.insert(node);
        for (auto& [j, p] : paths) out.cert.witness_paths.emplace(j, std::move(p));
        offset += static_cast<std::size_t>(part);
    }
    out.cert.source = out.nodes;
    return out;
}

HeavyPreimage heavy_preimage_node(const SubsetAssignment& assignment,
                                  const NodeSet& restricted_to) {
    const int n = assignment.ambient;
    if (n < 1) throw Error("assignment needs a positive node universe");
    if (restricted_to.ambient() != n) throw SizeMismatch(restricted_to.ambient(), n);
    if (!assignment.assign) throw Error("null subset assignment");
    const int s = assignment.subset_size;
    if (s < 1) throw Error("subset size must be positive");
    const auto ids = restricted_to.ids();
    if (static_cast<int>(ids.size()) < s) throw TooSmall(static_cast<int>(ids.size()), s);
    std::vector<NodeSet> unions(static_cast<std::size_t>(n) + 1, NodeSet(n));
    for_each_combination(ids, s, [&](const std::vector<int>& chosen) {
        const NodeSet subset = NodeSet::of(n, chosen);
        const int w = assignment.assign(subset);
        if (w < 1 || w > n) throw InvalidNode(w);
        unions[static_cast<std::size_t>(w)] |= subset;
        return true;
    });
    HeavyPreimage best;
    int best_size = -1;
    for (int w = 1; w <= n; ++w) {
        const int size = unions[static_cast<std::size_t>(w)].size();
        if (size > best_size) {
            best_size = size;
            best.node = w;
        }
    }
    best.covered = std::move(unions[static_cast<std::size_t>(best.node)]);
    return best;
}

CoverResult small_cover_loglog(const CommunicationPattern& pattern, int t,
                               std::uint64_t subset_budget) {
    const int n = pattern.node_count();
    const int depth = loglog_cover_depth(n);
    if (n < 8) {
        // Below the pigeonhole lemma's regime; cover with up to the same
        // size bound directly.
        const int m = std::min(n, loglog_cover_size_bound(n));
        return find_cover_m(pattern, NodeSet::full_set(n), t, t + depth, m);
    }
    const int s = floor_ln(n);
    if (binomial_capped(n, s, subset_budget) > subset_budget)
        throw BudgetExceeded(binomial_capped(n, s, UINT64_MAX - 1), subset_budget);
    const auto rounds = materialize_nonsplit(pattern, t, t + depth);

    NodeSet survivors = NodeSet::full_set(n);
    CoverResult out;
    out.nodes = NodeSet(n);
    out.cert.target = NodeSet::full_set(n);
    out.cert.t1 = t;
    out.cert.t2 = t + depth;
    std::vector<int> scratch;
    scratch.reserve(static_cast<std::size_t>(s));
    while (survivors.size() >= s) {
        const SubsetAssignment assignment{n, s, [&rounds, &scratch](const NodeSet& subset) {
                                              scratch.clear();
                                              subset.for_each([&](int id) { scratch.push_back(id); });
                                              return single_cover_node_only(rounds, scratch, 0);
                                          }};
        const HeavyPreimage heavy = heavy_preimage_node(assignment, survivors);
        out.nodes.insert(heavy.node);
        // Replay the subsets assigned to the heavy node, in the same order,
        // to collect one witness path per newly covered node.
        NodeSet needed = heavy.covered;
        for_each_combination(survivors.ids(), s, [&](const std::vector<int>& chosen) {
            bool relevant = false;
            for (int id : chosen) relevant = relevant || needed.contains(id);
            if (!relevant) return true;
            if (single_cover_node_only(rounds, chosen, 0) != heavy.node) return true;
            auto [node, paths] = single_cover_core(rounds, chosen, 0);
            (void)node;
            for (auto& [j, p] : paths)
                if (needed.contains(j)) {
                    out.cert.witness_paths.emplace(j, std::move(p));
                    needed.erase(j);
                }
            return !needed.empty();
        });
        if (!needed.empty()) throw Error("heavy-node cover paths incomplete");
        survivors -= heavy.covered;
    }
    survivors.for_each([&](int j) {
        out.nodes.insert(j);
        out.cert.witness_paths.try_emplace(j, std::vector<int>(static_cast<std::size_t>(depth) + 1, j));
    });
    out.cert.source = out.nodes;
    if (out.nodes.size() > loglog_cover_size_bound(n))
        throw Error("small cover exceeded its size bound");
    return out;
}

CenterResult loglog_center(const CommunicationPattern& pattern, std::uint64_t subset_budget) {
    const int n = pattern.node_count();
    if (n < 8) {
        const int time = 1 + ceil_log2(static_cast<std::uint64_t>(n));
        auto single = find_single_cover(pattern, NodeSet::full_set(n), 1, time);
        return {single.node, time, std::move(single.cert)};
    }
    const int size_bound = loglog_cover_size_bound(n);
    const int t = 1 + ceil_log2(static_cast<std::uint64_t>(size_bound));
    auto small = small_cover_loglog(pattern, t, subset_budget);
    auto single = find_single_cover(pattern, small.nodes, 1, t);
    CenterResult out;
    out.node = single.node;
    out.time = small.cert.t2;
    out.cert = compose_certificates(single.cert, small.cert);
    return out;
}

}  // namespace dynrad
