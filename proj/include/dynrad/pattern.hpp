#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dynrad/graph.hpp"

namespace dynrad {

// A deterministic, indexable sequence of communication graphs on a fixed n:
// either a stored finite prefix or a generator evaluated lazily per round.
// Generator functions must be pure in the round index so that graph_at is
// referentially transparent.
class CommunicationPattern {
public:
    using GeneratorFn = std::function<CommunicationGraph(int round)>;

    static CommunicationPattern from_rounds(std::vector<CommunicationGraph> rounds);
    static CommunicationPattern from_generator(int n, GeneratorFn gen);

    int node_count() const { return n_; }

    // nullopt means unbounded (generator-backed).
    std::optional<int> horizon() const { return horizon_; }

    // The round-t graph, 1-based. Throws HorizonExceeded past a finite horizon.
    CommunicationGraph graph_at(int t) const;

private:
    CommunicationPattern() = default;

    int n_ = 0;
    std::optional<int> horizon_;
    std::vector<CommunicationGraph> stored_;
    GeneratorFn gen_;
};

enum class AsyncPolicy {
    UniformQuorums,      // per round, per node: uniform (n-f)-subset containing the node
    CrashFixedSet,       // a seed-chosen f-set never appears in other nodes' in-neighborhoods
    RotatingExclusion,   // round-robin excluded f-set
};

// Round graphs of asynchronous-round executions with up to f crashes: every
// node keeps at least n-f in-neighbors (itself included).
struct AsyncAdversaryConfig {
    int n = 0;
    int f = 0;
    std::uint64_t seed = 0;
    AsyncPolicy policy = AsyncPolicy::UniformQuorums;
};

// The 6-node digraph with radius 3, as a constant pattern.
CommunicationPattern gen_figure1();
const CommunicationGraph& figure1_graph();

// Round t: edges from center_schedule(t) to every node, plus self-loops.
CommunicationPattern gen_star(int n, std::function<int(int)> center_schedule);
CommunicationPattern gen_star_fixed(int n, int center);
// Center of round t is ((t-1) mod n) + 1.
CommunicationPattern gen_star_rotating(int n);

// Constant line 1 -> 2 -> ... -> n plus self-loops. Rooted at 1; not nonsplit
// for n >= 3.
CommunicationPattern gen_line(int n);

// Per round, every unordered node pair receives a uniformly drawn common
// parent; remaining edges appear independently with extra_edge_prob. Nonsplit
// by construction.
CommunicationPattern gen_random_nonsplit(int n, std::uint64_t seed, double extra_edge_prob);

// Per round, a uniform root grows a random arborescence (each non-root parent
// drawn from already-attached nodes); extra edges with extra_edge_prob. Rooted
// by construction.
CommunicationPattern gen_random_rooted(int n, std::uint64_t seed, double extra_edge_prob = 0.0);

// Throws InvalidConfig unless 0 <= f < n.
CommunicationPattern gen_async(const AsyncAdversaryConfig& cfg);

// Every communication graph in which each node has >= n-f in-neighbors
// (self-loop included). Exhaustive; meant for tiny n.
std::vector<CommunicationGraph> enumerate_async_round_graphs(int n, int f);

}  // namespace dynrad
