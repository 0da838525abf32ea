#include "dynrad/graph.hpp"

#include <algorithm>

namespace dynrad {

namespace {

std::vector<NodeSet> empty_rows(int n) {
    return std::vector<NodeSet>(static_cast<std::size_t>(n), NodeSet(n));
}

std::vector<NodeSet> transpose_rows(int n, const std::vector<NodeSet>& rows) {
    auto dual = empty_rows(n);
    for (int i = 1; i <= n; ++i)
        rows[static_cast<std::size_t>(i) - 1].for_each(
            [&](int j) { dual[static_cast<std::size_t>(j) - 1].insert(i); });
    return dual;
}

}  // namespace

CommunicationGraph::CommunicationGraph(int n, std::span<const std::pair<int, int>> edges) {
    if (n < 1) throw Error("a communication graph needs at least one node");
    n_ = n;
    out_ = empty_rows(n);
    for (auto [u, v] : edges) {
        if (u < 1 || u > n) throw InvalidNode(u);
        if (v < 1 || v > n) throw InvalidNode(v);
        out_[static_cast<std::size_t>(u) - 1].insert(v);
    }
    // The model mandates self-loops; inputs may omit them.
    for (int i = 1; i <= n; ++i) out_[static_cast<std::size_t>(i) - 1].insert(i);
    in_ = transpose_rows(n, out_);
}

CommunicationGraph CommunicationGraph::identity(int n) {
    if (n < 1) throw Error("a communication graph needs at least one node");
    CommunicationGraph g;
    g.n_ = n;
    g.out_ = empty_rows(n);
    for (int i = 1; i <= n; ++i) g.out_[static_cast<std::size_t>(i) - 1].insert(i);
    g.in_ = g.out_;
    return g;
}

CommunicationGraph CommunicationGraph::from_out_rows(std::vector<NodeSet> out_rows) {
    const int n = static_cast<int>(out_rows.size());
    if (n < 1) throw Error("a communication graph needs at least one node");
    CommunicationGraph g;
    g.n_ = n;
    for (int i = 1; i <= n; ++i) {
        auto& row = out_rows[static_cast<std::size_t>(i) - 1];
        if (row.ambient() != n) throw SizeMismatch(row.ambient(), n);
        row.insert(i);
    }
    g.out_ = std::move(out_rows);
    g.in_ = transpose_rows(n, g.out_);
    return g;
}

CommunicationGraph CommunicationGraph::from_in_rows(std::vector<NodeSet> in_rows) {
    const int n = static_cast<int>(in_rows.size());
    if (n < 1) throw Error("a communication graph needs at least one node");
    CommunicationGraph g;
    g.n_ = n;
    for (int i = 1; i <= n; ++i) {
        auto& row = in_rows[static_cast<std::size_t>(i) - 1];
        if (row.ambient() != n) throw SizeMismatch(row.ambient(), n);
        row.insert(i);
    }
    g.in_ = std::move(in_rows);
    g.out_ = transpose_rows(n, g.in_);
    return g;
}

std::vector<std::pair<int, int>> CommunicationGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 1; u <= n_; ++u)
        out_[static_cast<std::size_t>(u) - 1].for_each([&](int v) { out.emplace_back(u, v); });
    return out;  // already sorted: rows ascending, bits ascending
}

CommunicationGraph product(const CommunicationGraph& g, const CommunicationGraph& h) {
    const int n = g.node_count();
    if (n != h.node_count()) throw SizeMismatch(n, h.node_count());
    std::vector<NodeSet> rows(static_cast<std::size_t>(n), NodeSet(n));
    for (int i = 1; i <= n; ++i) {
        NodeSet& row = rows[static_cast<std::size_t>(i) - 1];
        g.out_neighbors(i).for_each([&](int k) { row |= h.out_neighbors(k); });
    }
    return CommunicationGraph::from_out_rows(std::move(rows));
}

CommunicationGraph transpose(const CommunicationGraph& g) {
    const int n = g.node_count();
    std::vector<NodeSet> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) rows.push_back(g.in_neighbors(i));
    return CommunicationGraph::from_out_rows(std::move(rows));
}

NonsplitCheck is_nonsplit(const CommunicationGraph& g) {
    const int n = g.node_count();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!g.in_neighbors(i).intersects(g.in_neighbors(j)))
                return {false, i, j};
    return {true, 0, 0};
}

NodeSet broadcasters(const CommunicationGraph& g) {
    const int n = g.node_count();
    NodeSet result(n);
    for (int i = 1; i <= n; ++i)
        if (g.out_neighbors(i).is_full()) result.insert(i);
    return result;
}

namespace {

// Reach set of `start` under repeated out-row expansion.
NodeSet reachable_from(const CommunicationGraph& g, int start) {
    NodeSet reach(g.node_count());
    reach.insert(start);
    NodeSet frontier = reach;
    while (!frontier.empty()) {
        NodeSet next(g.node_count());
        frontier.for_each([&](int k) { next |= g.out_neighbors(k); });
        next -= reach;
        reach |= next;
        frontier = std::move(next);
    }
    return reach;
}

}  // namespace

RootedCheck is_rooted(const CommunicationGraph& g) {
    for (int r = 1; r <= g.node_count(); ++r)
        if (reachable_from(g, r).is_full()) return {true, r};
    return {false, 0};
}

StaticRadius static_radius(const CommunicationGraph& g) {
    const int n = g.node_count();
    StaticRadius result;
    for (int u = 1; u <= n; ++u) {
        // BFS layers from u; eccentricity = number of expansions to fill [n].
        NodeSet reach(n);
        reach.insert(u);
        int ecc = 0;
        while (!reach.is_full()) {
            NodeSet next = reach;
            reach.for_each([&](int k) { next |= g.out_neighbors(k); });
            if (next == reach) {
                ecc = -1;  // u does not reach all nodes
                break;
            }
            reach = std::move(next);
            ++ecc;
        }
        if (ecc < 0) continue;
        if (!result.radius || ecc < *result.radius) {
            result.radius = ecc;
            result.center = u;
        }
    }
    return result;
}

}  // namespace dynrad
