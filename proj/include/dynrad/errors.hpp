#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynrad {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A node id outside 1..n.
struct InvalidNode : Error {
    explicit InvalidNode(int node_)
        : Error("invalid node id " + std::to_string(node_)), node(node_) {}
    int node;
};

// Two graphs or sets with different ambient node counts were combined.
struct SizeMismatch : Error {
    SizeMismatch(int lhs_, int rhs_)
        : Error("node count mismatch: " + std::to_string(lhs_) + " vs " +
                std::to_string(rhs_)),
          lhs(lhs_), rhs(rhs_) {}
    int lhs;
    int rhs;
};

// A round index past the pattern's horizon was requested.
struct HorizonExceeded : Error {
    HorizonExceeded(int requested_, int horizon_)
        : Error("round " + std::to_string(requested_) +
                " exceeds pattern horizon " + std::to_string(horizon_)),
          requested(requested_), horizon(horizon_) {}
    int requested;
    int horizon;
};

// A cover construction met a round graph that is not nonsplit.
struct NotNonsplit : Error {
    NotNonsplit(int round_, int i_, int j_)
        : Error("graph of round " + std::to_string(round_) +
                " is not nonsplit: nodes " + std::to_string(i_) + " and " +
                std::to_string(j_) + " have no common in-neighbor"),
          round(round_), witness_first(i_), witness_second(j_) {}
    int round;
    int witness_first;
    int witness_second;
};

// t2 - t1 is too small for the requested cover.
struct InsufficientDepth : Error {
    InsufficientDepth(int have_, int need_)
        : Error("interval of length " + std::to_string(have_) +
                " is shorter than the required " + std::to_string(need_)),
          have(have_), need(need_) {}
    int have;
    int need;
};

struct InvalidPartition : Error {
    InvalidPartition(int n_, int m_)
        : Error("cannot split " + std::to_string(n_) + " into " +
                std::to_string(m_) + " positive parts"),
          n(n_), m(m_) {}
    int n;
    int m;
};

// The restricted set is smaller than the subset size of the assignment.
struct TooSmall : Error {
    TooSmall(int set_size_, int subset_size_)
        : Error("restricted set of size " + std::to_string(set_size_) +
                " has no subsets of size " + std::to_string(subset_size_)),
          set_size(set_size_), subset_size(subset_size_) {}
    int set_size;
    int subset_size;
};

// Subset enumeration would exceed the configured budget.
struct BudgetExceeded : Error {
    BudgetExceeded(std::uint64_t subsets_, std::uint64_t budget_)
        : Error("subset enumeration needs " + std::to_string(subsets_) +
                " subsets, over the budget of " + std::to_string(budget_)),
          subsets(subsets_), budget(budget_) {}
    std::uint64_t subsets;
    std::uint64_t budget;
};

// The no-broadcaster premise failed: some node already broadcast in the prefix.
struct BroadcasterExists : Error {
    explicit BroadcasterExists(int node_)
        : Error("node " + std::to_string(node_) +
                " is a broadcaster in the prefix product"),
          node(node_) {}
    int node;
};

// An input graph of a rooted-product check is not rooted (1-based position).
struct NotRooted : Error {
    explicit NotRooted(int index_)
        : Error("graph #" + std::to_string(index_) + " is not rooted"),
          index(index_) {}
    int index;
};

struct InvalidConfig : Error {
    using Error::Error;
};

// A certificate failed replay validation.
struct CertificateInvalid : Error {
    using Error::Error;
};

// A text file could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace dynrad
