#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dynrad/errors.hpp"

namespace dynrad {

// A subset of the node universe 1..n, stored as a bit vector. Node ids are
// 1-based throughout the public surface.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(int ambient) : n_(check_count(ambient)), words_(word_count(ambient), 0) {}

    static NodeSet full_set(int ambient) {
        NodeSet s(ambient);
        for (auto& w : s.words_) w = ~0ULL;
        s.mask_tail();
        return s;
    }

    static NodeSet of(int ambient, std::initializer_list<int> ids) {
        NodeSet s(ambient);
        for (int id : ids) s.insert(id);
        return s;
    }

    static NodeSet of(int ambient, std::span<const int> ids) {
        NodeSet s(ambient);
        for (int id : ids) s.insert(id);
        return s;
    }

    int ambient() const { return n_; }

    int size() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool is_full() const { return size() == n_; }

    bool contains(int id) const {
        if (id < 1 || id > n_) return false;
        const int b = id - 1;
        return (words_[b >> 6] >> (b & 63)) & 1ULL;
    }

    void insert(int id) {
        check_id(id);
        const int b = id - 1;
        words_[b >> 6] |= 1ULL << (b & 63);
    }

    void erase(int id) {
        check_id(id);
        const int b = id - 1;
        words_[b >> 6] &= ~(1ULL << (b & 63));
    }

    // Smallest member, or 0 when empty.
    int smallest() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return static_cast<int>(w * 64) + std::countr_zero(words_[w]) + 1;
        return 0;
    }

    std::vector<int> ids() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int id) { out.push_back(id); });
        return out;
    }

    NodeSet& operator|=(const NodeSet& o) {
        check_ambient(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    NodeSet& operator&=(const NodeSet& o) {
        check_ambient(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    // Set difference.
    NodeSet& operator-=(const NodeSet& o) {
        check_ambient(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
    friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

    bool intersects(const NodeSet& o) const {
        check_ambient(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const NodeSet& o) const {
        check_ambient(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    // Smallest member of the intersection, or 0 when disjoint.
    int first_common_with(const NodeSet& o) const {
        check_ambient(o);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const std::uint64_t both = words_[i] & o.words_[i];
            if (both) return static_cast<int>(i * 64) + std::countr_zero(both) + 1;
        }
        return 0;
    }

    bool operator==(const NodeSet&) const = default;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(static_cast<int>(w * 64) + b + 1);
                bits &= bits - 1;
            }
        }
    }

private:
    static int check_count(int n) {
        if (n < 0) throw Error("ambient node count must be nonnegative");
        return n;
    }
    static std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

    void check_id(int id) const {
        if (id < 1 || id > n_) throw InvalidNode(id);
    }
    void check_ambient(const NodeSet& o) const {
        if (n_ != o.n_) throw SizeMismatch(n_, o.n_);
    }
    void mask_tail() {
        if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (1ULL << (n_ % 64)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

// A directed graph on nodes 1..n with mandatory self-loops. Both adjacency
// directions are stored as per-node bit rows and kept consistent. Immutable
// after construction.
class CommunicationGraph {
public:
    CommunicationGraph(int n, std::span<const std::pair<int, int>> edges);
    CommunicationGraph(int n, std::initializer_list<std::pair<int, int>> edges)
        : CommunicationGraph(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size())) {}

    // The self-loops-only graph (the empty product).
    static CommunicationGraph identity(int n);

    // Build from adjacency rows. Missing self-loops are added; the dual view
    // is derived.
    static CommunicationGraph from_out_rows(std::vector<NodeSet> out_rows);
    static CommunicationGraph from_in_rows(std::vector<NodeSet> in_rows);

    int node_count() const { return n_; }

    bool has_edge(int from, int to) const {
        check_node(from);
        check_node(to);
        return out_[static_cast<std::size_t>(from) - 1].contains(to);
    }

    const NodeSet& in_neighbors(int node) const {
        check_node(node);
        return in_[static_cast<std::size_t>(node) - 1];
    }

    const NodeSet& out_neighbors(int node) const {
        check_node(node);
        return out_[static_cast<std::size_t>(node) - 1];
    }

    // All edges including self-loops, sorted by (from, to).
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const CommunicationGraph& o) const { return n_ == o.n_ && out_ == o.out_; }

private:
    CommunicationGraph() = default;

    void check_node(int node) const {
        if (node < 1 || node > n_) throw InvalidNode(node);
    }

    int n_ = 0;
    std::vector<NodeSet> in_;
    std::vector<NodeSet> out_;
};

// Relational composition: (i,j) in product(G,H) iff some k has (i,k) in G and
// (k,j) in H. Computed row-wise over out rows.
CommunicationGraph product(const CommunicationGraph& g, const CommunicationGraph& h);

// Edge reversal; self-loops are preserved.
CommunicationGraph transpose(const CommunicationGraph& g);

struct NonsplitCheck {
    bool nonsplit = false;
    // Lexicographically smallest pair with empty in-neighborhood intersection;
    // meaningful only when !nonsplit.
    int split_first = 0;
    int split_second = 0;
    explicit operator bool() const { return nonsplit; }
};

// True iff every pair of nodes has a common in-neighbor.
NonsplitCheck is_nonsplit(const CommunicationGraph& g);

// Nodes whose out-neighborhood is all of 1..n.
NodeSet broadcasters(const CommunicationGraph& g);

struct RootedCheck {
    bool rooted = false;
    int root = 0;  // smallest-id node reaching all nodes, when rooted
    explicit operator bool() const { return rooted; }
};

// True iff some node has directed paths to every node.
RootedCheck is_rooted(const CommunicationGraph& g);

struct StaticRadius {
    std::optional<int> radius;  // nullopt when no node reaches all nodes
    int center = 0;             // smallest-id node attaining the radius, when bounded
};

// min over u of max over v of the shortest-path length u -> v.
StaticRadius static_radius(const CommunicationGraph& g);

}  // namespace dynrad
