#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrad/cover.hpp"
#include "dynrad/pattern.hpp"
#include "dynrad/radius.hpp"
#include "dynrad/rng.hpp"
#include "oracles.hpp"

using namespace dynrad;

TEST_CASE("splitmix64 reference vectors") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("stored patterns index rounds and enforce the horizon") {
    const auto g = CommunicationGraph::identity(3);
    const CommunicationGraph h(3, {{1, 2}});
    const auto p = CommunicationPattern::from_rounds({g, h});
    CHECK(p.horizon() == 2);
    CHECK(p.graph_at(1) == g);
    CHECK(p.graph_at(2) == h);
    CHECK_THROWS_AS(p.graph_at(3), HorizonExceeded);
    CHECK_THROWS_AS(p.graph_at(0), Error);
}

TEST_CASE("generator patterns are referentially transparent") {
    const auto p = gen_random_nonsplit(8, 42, 0.2);
    CHECK_FALSE(p.horizon().has_value());
    for (int t = 1; t <= 5; ++t) CHECK(p.graph_at(t) == p.graph_at(t));
    // a second pattern with the same parameters generates the same rounds
    const auto q = gen_random_nonsplit(8, 42, 0.2);
    for (int t = 1; t <= 5; ++t) CHECK(p.graph_at(t) == q.graph_at(t));
    CHECK_FALSE(p.graph_at(1) == gen_random_nonsplit(8, 43, 0.2).graph_at(1));
}

TEST_CASE("figure-1 pattern is constant with the published properties") {
    const auto p = gen_figure1();
    CHECK(p.node_count() == 6);
    CHECK(p.graph_at(1) == figure1_graph());
    CHECK(p.graph_at(17) == figure1_graph());
    CHECK(is_nonsplit(p.graph_at(1)));
    CHECK(static_radius(p.graph_at(1)).radius == 3);
    CHECK(p.graph_at(1).in_neighbors(1) == NodeSet::of(6, {1, 4, 6}));
}

TEST_CASE("star generator") {
    const auto fixed = gen_star_fixed(5, 2);
    const auto g = fixed.graph_at(3);
    CHECK(g.out_neighbors(2).is_full());
    CHECK(g.out_neighbors(1) == NodeSet::of(5, {1}));
    CHECK(is_nonsplit(g));
    CHECK(dynamic_radius(fixed, 4).dynamic_radius == 1);

    const auto rotating = gen_star_rotating(4);
    for (int t = 1; t <= 8; ++t) {
        const int center = (t - 1) % 4 + 1;
        CHECK(rotating.graph_at(t).out_neighbors(center).is_full());
        CHECK(is_nonsplit(rotating.graph_at(t)));
    }
    CHECK_THROWS_AS(gen_star_fixed(4, 5), InvalidNode);
}

TEST_CASE("line generator") {
    const auto p = gen_line(3);
    const auto g = p.graph_at(1);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 3));
    CHECK_FALSE(g.has_edge(2, 1));
    CHECK(is_rooted(g));
    const auto check = is_nonsplit(g);
    CHECK_FALSE(check);
    CHECK(check.split_first == 1);
    CHECK(check.split_second == 3);
    CHECK(gen_line(1).graph_at(1) == CommunicationGraph::identity(1));
}

TEST_CASE("random nonsplit rounds are nonsplit for every seed tried") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto p = gen_random_nonsplit(9, seed, 0.1);
        for (int t = 1; t <= 4; ++t) CHECK(is_nonsplit(p.graph_at(t)));
    }
    // extra_edge_prob = 1 gives the complete graph
    const auto complete = gen_random_nonsplit(6, 7, 1.0).graph_at(1);
    for (int i = 1; i <= 6; ++i) CHECK(complete.out_neighbors(i).is_full());
    CHECK(dynamic_radius(gen_random_nonsplit(6, 7, 1.0), 2).dynamic_radius == 1);
}

TEST_CASE("random rooted rounds are rooted and n-1 of them multiply to nonsplit") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto p = gen_random_rooted(6, seed);
        for (int t = 1; t <= 5; ++t) CHECK(is_rooted(p.graph_at(t)));
        auto acc = CommunicationGraph::identity(6);
        for (int t = 1; t <= 5; ++t) acc = product(acc, p.graph_at(t));
        CHECK(oracles::is_nonsplit_oracle(acc));
    }
    // every rooted graph on two nodes is nonsplit: the root is a common in-neighbor
    for (std::uint64_t seed = 0; seed < 25; ++seed)
        CHECK(is_nonsplit(gen_random_rooted(2, seed).graph_at(1)));
}

TEST_CASE("async generator respects the in-degree floor") {
    for (const auto policy : {AsyncPolicy::UniformQuorums, AsyncPolicy::CrashFixedSet,
                              AsyncPolicy::RotatingExclusion}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            AsyncAdversaryConfig cfg{7, 3, seed, policy};
            const auto p = gen_async(cfg);
            for (int t = 1; t <= 4; ++t) {
                const auto g = p.graph_at(t);
                for (int i = 1; i <= 7; ++i) {
                    CHECK(g.in_neighbors(i).size() >= 4);
                    CHECK(g.in_neighbors(i).contains(i));
                }
                CHECK(is_nonsplit(g));  // n > 2f forces quorum intersection
            }
        }
    }
}

TEST_CASE("async special cases") {
    // f = 0: complete graph every round
    const auto p = gen_async({4, 0, 9, AsyncPolicy::UniformQuorums});
    for (int i = 1; i <= 4; ++i) CHECK(p.graph_at(1).out_neighbors(i).is_full());
    CHECK(dynamic_radius(p, 2).dynamic_radius == 1);

    // crash-fixed: the crashed senders stay absent from everyone else's in-rows
    const auto crash = gen_async({6, 2, 11, AsyncPolicy::CrashFixedSet});
    const auto g1 = crash.graph_at(1);
    const auto g2 = crash.graph_at(5);
    NodeSet crashed(6);
    for (int j = 1; j <= 6; ++j) {
        bool absent_everywhere = true;
        for (int i = 1; i <= 6; ++i)
            if (i != j && g1.in_neighbors(i).contains(j)) absent_everywhere = false;
        if (absent_everywhere) crashed.insert(j);
    }
    CHECK(crashed.size() == 2);
    CHECK(g1 == g2);  // crash set is fixed across rounds

    // n = 3, f = 1: every round graph of every policy is nonsplit
    for (const auto policy : {AsyncPolicy::UniformQuorums, AsyncPolicy::CrashFixedSet,
                              AsyncPolicy::RotatingExclusion})
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            CHECK(is_nonsplit(gen_async({3, 1, seed, policy}).graph_at(1)));

    CHECK_THROWS_AS(gen_async({3, 3, 0, AsyncPolicy::UniformQuorums}), InvalidConfig);
    CHECK_THROWS_AS(gen_async({3, -1, 0, AsyncPolicy::UniformQuorums}), InvalidConfig);
}

TEST_CASE("async round enumeration covers exactly the valid in-row choices") {
    const auto graphs = enumerate_async_round_graphs(3, 1);
    // per node: {i,a}, {i,b}, {i,a,b} -> 3 choices, 3 nodes -> 27 graphs
    CHECK(graphs.size() == 27);
    for (const auto& g : graphs) {
        for (int i = 1; i <= 3; ++i) {
            CHECK(g.in_neighbors(i).size() >= 2);
            CHECK(g.in_neighbors(i).contains(i));
        }
        CHECK(is_nonsplit(g));
    }
    CHECK(enumerate_async_round_graphs(2, 0).size() == 1);
}
