#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "dynrad/graph.hpp"
#include "dynrad/pattern.hpp"

namespace dynrad {

// Per-node broadcast times and the dynamic radius of a pattern, evaluated up
// to a horizon. An unset entry means the node did not broadcast within the
// horizon; a truncated evaluation cannot distinguish "later" from "never".
struct RadiusReport {
    int n = 0;
    int horizon = 0;
    std::vector<std::optional<int>> broadcast_times;  // index i -> node i+1
    std::optional<int> dynamic_radius;                // min of the resolved times
    int center = 0;                                   // smallest node attaining it, when resolved

    std::optional<int> broadcast_time_of(int node) const {
        if (node < 1 || node > n) throw InvalidNode(node);
        return broadcast_times[static_cast<std::size_t>(node) - 1];
    }
};

// Smallest t <= horizon such that `node` is a broadcaster in the product of
// the first t round graphs; nullopt if there is none within the horizon.
std::optional<int> broadcast_time(const CommunicationPattern& pattern, int node, int horizon);

// All broadcast times at once, maintaining every reach set incrementally and
// stopping once all nodes are resolved.
RadiusReport dynamic_radius(const CommunicationPattern& pattern, int horizon);

// Witness that no node has broadcast strictly before round k: for every node
// j, a node that has not received j's token in the product of rounds 1..k-1.
// Throws BroadcasterExists if some node already broadcast in that prefix.
// This is the combinatorial core of the consensus time lower bound: as long
// as no node has reached everyone, two executions differing in one input are
// indistinguishable to the witness node.
std::map<int, int> check_no_broadcaster_prefix(const CommunicationPattern& pattern, int k);

// Verifies each input rooted, then checks the product of the first n-1 graphs
// for nonsplitness. Requires at least n-1 graphs. A false result would
// contradict the rooted-product theorem and should fail any caller loudly.
NonsplitCheck rooted_product_nonsplit_check(std::span<const CommunicationGraph> graphs);

struct AsyncExhaustiveResult {
    // Largest radius observed; rounds+1 encodes "no broadcaster within the
    // enumerated prefix".
    int max_radius = 0;
    std::uint64_t prefixes_checked = 0;
};

// Enumerates every `rounds`-tuple of communication graphs with all in-degrees
// >= n-f and reports the worst dynamic radius. Exponential; intended for tiny
// n (the n=3, f=1 case has 729 two-round prefixes).
AsyncExhaustiveResult async_exhaustive_radius(int n, int f, int rounds = 2);

}  // namespace dynrad
