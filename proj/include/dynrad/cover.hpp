#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "dynrad/graph.hpp"
#include "dynrad/pattern.hpp"

namespace dynrad {

// --- integer/log arithmetic used by the cover constructions ---

// Smallest k >= 0 with x <= 2^k. Requires x >= 1.
int ceil_log2(std::uint64_t x);

// ceil(log2(num/den)) for num, den >= 1, clamped at 0 for ratios below 1.
int ceil_log2_ratio(std::uint64_t num, std::uint64_t den);

// floor(ln n); n >= 1.
int floor_ln(int n);

// ceil(log2(ln n)) clamped at 0; the cover depth of the small-cover
// construction. n >= 1 (0 for n = 1).
int loglog_cover_depth(int n);

// ceil(1 + ln n / ln(e^4/(e^4-1))) + floor(ln n): the guaranteed size bound of
// small_cover_loglog's result.
int loglog_cover_size_bound(int n);

// The time value returned by loglog_center for a pattern on n nodes.
int loglog_pipeline_time_bound(int n);

// C(n, k), saturating at cap.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap);

// --- the covering relation ---

// True iff every node of W has an in-neighbor in U.
bool covers(const NodeSet& source, const NodeSet& target, const CommunicationGraph& g);

// Left-to-right product of rounds t1..t2-1; identity for t1 == t2.
CommunicationGraph product_range(const CommunicationPattern& pattern, int t1, int t2);

// True iff `source` at time t1 covers `target` at time t2, i.e. covers() holds
// in product_range(pattern, t1, t2).
bool covers_over(const NodeSet& source, int t1, const NodeSet& target, int t2,
                 const CommunicationPattern& pattern);

// Splits n into m positive parts: the first n mod m parts get floor(n/m)+1,
// the rest floor(n/m). Every part size s satisfies
// ceil(log2 s) <= ceil(log2(n/m)).
std::vector<int> partition_sizes(int n, int m);

// Witness that source at time t1 covers target at time t2: one path per
// target node, replayable hop by hop against the pattern's round graphs.
struct CoverCertificate {
    NodeSet source;
    NodeSet target;
    int t1 = 1;
    int t2 = 1;
    // target node -> path of t2-t1+1 node ids; front() in source, back() == key.
    // Hop s (path[s] -> path[s+1]) must be an edge of round t1+s.
    std::map<int, std::vector<int>> witness_paths;
};

// Replays every hop of every witness path against the pattern. Throws
// CertificateInvalid naming the first failing target/hop/round.
void validate_certificate(const CoverCertificate& cert, const CommunicationPattern& pattern);

// Transitive composition: first (U@t1 covers W@t2) and second (W@t2 covers
// X@t3) yield U@t1 covers X@t3, with witness paths spliced at the W node.
CoverCertificate compose_certificates(const CoverCertificate& first,
                                      const CoverCertificate& second);

struct SingleCover {
    int node = 0;
    CoverCertificate cert;
};

// One node at time t1 covering all of `target` at time t2. Requires all round
// graphs in [t1, t2) nonsplit and t2-t1 >= ceil(log2 |target|). Deterministic:
// the target set is split ascending, common in-neighbors are chosen by
// smallest id, and slack is consumed by self-loop extension at singletons.
SingleCover find_single_cover(const CommunicationPattern& pattern, const NodeSet& target,
                              int t1, int t2);

struct CoverResult {
    NodeSet nodes;
    CoverCertificate cert;
};

// At most m nodes at time t1 covering `target` at time t2. Partitions the
// target per partition_sizes and runs find_single_cover per part. Requires
// t2-t1 >= ceil(log2(|target|/m)); m above |target| is reduced to |target|.
CoverResult find_cover_m(const CommunicationPattern& pattern, const NodeSet& target,
                         int t1, int t2, int m);

// A total assignment from the size-subset_size subsets of 1..ambient to nodes.
struct SubsetAssignment {
    int ambient = 0;
    int subset_size = 0;
    std::function<int(const NodeSet&)> assign;
};

struct HeavyPreimage {
    int node = 0;
    NodeSet covered;  // union of the subsets of restricted_to assigned to node
};

// The node whose preimage subsets (restricted to restricted_to) union to the
// largest set; ties broken by smallest id. When ambient >= 8 and
// subset_size = floor(ln ambient), the union has size >= |restricted_to|/e^4.
HeavyPreimage heavy_preimage_node(const SubsetAssignment& assignment,
                                  const NodeSet& restricted_to);

inline constexpr std::uint64_t kDefaultSubsetBudget = 10'000'000;

// A set of at most loglog_cover_size_bound(n) nodes that at time t covers all
// of 1..n at time t + loglog_cover_depth(n). Iteratively picks heavy-preimage
// nodes of the assignment A -> find_single_cover(A, t, t+depth) over shrinking
// survivor sets; survivors smaller than the subset size cover themselves via
// self-loops. For n < 8 falls back to find_cover_m. Throws BudgetExceeded when
// C(n, floor(ln n)) > subset_budget.
CoverResult small_cover_loglog(const CommunicationPattern& pattern, int t,
                               std::uint64_t subset_budget = kDefaultSubsetBudget);

struct CenterResult {
    int node = 0;
    int time = 0;  // the certificate asserts: node at time 1 covers 1..n at this time
    CoverCertificate cert;
};

// The full pipeline: a small cover at time t = 1 + ceil(log2 size_bound), a
// single node covering that set from time 1, certificates composed via
// transitivity. For n < 8 routes through find_single_cover at depth
// ceil(log2 n) directly.
CenterResult loglog_center(const CommunicationPattern& pattern,
                           std::uint64_t subset_budget = kDefaultSubsetBudget);

}  // namespace dynrad
