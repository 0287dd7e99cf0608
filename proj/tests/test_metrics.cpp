#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include "graphoid/gql.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace graphoid;
using namespace graphoid::testing;

namespace {

const NodeFilter kAnyPhone{"Phone", std::nullopt};

Graphoid triangle() {
    GraphoidDecls decls;
    decls.node_types = {{"Phone", {"Id", "Phone"}}};
    decls.edge_types = {{"Call", {"Time", "Duration"}, {{1, AggregateFn::Sum}}}};
    return build_graphoid(phone_catalog(), decls, {{"Phone", {1, "Ph1"}}, {"Phone", {2, "Ph2"}}, {"Phone", {3, "Ph3"}}},
                          {{"Call", {}, {1, 2, 3}, {Value("2016-10-10"), Value(1)}}});
}

} // namespace

TEST(Projection, BaseGraphPairs) {
    auto p = adjacency_projection(fig3());
    using P = std::pair<NodeId, NodeId>;
    EXPECT_EQ(p.pairs(), (std::vector<P>{{11, 12}, {12, 13}, {12, 15}, {13, 14}, {13, 15}, {14, 15}}));
    EXPECT_EQ(p.ids, (std::vector<NodeId>{11, 12, 13, 14, 15}));
}

TEST(Projection, NoEdgesNoPairs) {
    auto g = dice(fig3(), parse_condition("Duration > 1000"));
    EXPECT_TRUE(adjacency_projection(g).pairs().empty());
    EXPECT_EQ(adjacency_projection(g).ids.size(), 5u);
}

TEST(Projection, HyperedgeGivesATriangle) {
    using P = std::pair<NodeId, NodeId>;
    EXPECT_EQ(adjacency_projection(triangle()).pairs(), (std::vector<P>{{1, 2}, {1, 3}, {2, 3}}));
}

TEST(Projection, ViaRestrictsEdgeTypes) {
    auto g = edgify(fig3(), "Phone", 1);
    EXPECT_EQ(adjacency_projection(g, TargetSet::of({"HasPhone"})).pairs().size(), 0u);
    EXPECT_EQ(adjacency_projection(g, TargetSet::of({"Call"})).pairs().size(), 6u);
}

TEST(ShortestPaths, ElevenToFourteenTakesThreeHops) {
    auto results = shortest_paths(fig3(), kAnyPhone, kAnyPhone);
    EXPECT_EQ(results.size(), 20u); // 5 * 4 ordered pairs, no (u, u)
    for (const auto& r : results) {
        EXPECT_NE(r.source, r.target);
        if (r.source == 11 && r.target == 14) {
            EXPECT_EQ(r.hops, 3);
            EXPECT_EQ(r.path, (std::vector<NodeId>{11, 12, 13, 14}));
        }
        if (r.source == 11 && r.target == 12) EXPECT_EQ(r.hops, 1);
    }
}

TEST(ShortestPaths, UnreachablePairsAreReported) {
    auto g = dice(fig3(), parse_condition("Duration < 4"));
    auto results = shortest_paths(g, kAnyPhone, kAnyPhone);
    std::size_t unreachable = 0;
    for (const auto& r : results)
        if (r.hops < 0) {
            ++unreachable;
            EXPECT_TRUE(r.path.empty());
        }
    EXPECT_EQ(unreachable, 18u); // only 13 and 14 are connected
}

TEST(ShortestPaths, FiltersAndErrors) {
    auto vodafone = NodeFilter{"Phone", parse_condition("Phone.Operator = \"Vodafone\"")};
    EXPECT_EQ(filter_nodes(fig3(), vodafone), (std::vector<NodeId>{12, 14}));
    auto results = shortest_paths(fig3(), vodafone, vodafone);
    ASSERT_EQ(results.size(), 2u);
    EXPECT_EQ(results[0].source, 12);
    EXPECT_EQ(results[0].hops, 2);
    EXPECT_THROW(shortest_paths(fig3(), {"Robot", std::nullopt}, kAnyPhone), Error);
    EXPECT_THROW(filter_nodes(fig3(), {"Phone", parse_condition("Duration > 3")}), Error);
    EXPECT_THROW(filter_nodes(fig3(), {"Phone", parse_condition("Time.Year = 2016")}), Error);
}

TEST(ShortestPaths, CsvExport) {
    std::vector<PathResult> rows{{11, 14, 3, {11, 12, 13, 14}}, {11, 99, -1, {}}};
    EXPECT_EQ(paths_to_csv(rows), "source,target,hops,path\n11,14,3,11/12/13/14\n11,99,-1,\n");
}

TEST(ShortestPaths, WorkerCountDoesNotChangeResults) {
    Rng rng(2);
    auto g = random_graphoid(rng, {120, 150});
    const NodeFilter all{"N0", std::nullopt};
    EXPECT_EQ(shortest_paths(g, all, all, TargetSet::all(), {1}), shortest_paths(g, all, all, TargetSet::all(), {4}));
}

TEST(ShortestPathsProperty, MatchesFloydWarshall) {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_graphoid(rng, {60, 50});
        auto ap = floyd_warshall(g);
        for (const auto& t : g.node_types()) {
            const NodeFilter f{t.name, std::nullopt};
            for (const auto& t2 : g.node_types()) {
                for (const auto& r : shortest_paths(g, f, {t2.name, std::nullopt})) {
                    ASSERT_EQ(r.hops, ap.hops(r.source, r.target));
                    EXPECT_EQ(r.path, ap.witness(r.source, r.target));
                }
            }
        }
    }
}

TEST(ShortestPathsProperty, SymmetryTriangleAndMonotonicity) {
    Rng rng(23);
    auto data = generate(GeneratorConfig{.phone_count = 40, .user_count = 25, .call_count = 120, .seed = 9});
    const auto& g = data.graph;
    auto results = shortest_paths(g, kAnyPhone, kAnyPhone);
    std::map<std::pair<NodeId, NodeId>, std::int64_t> hops;
    for (const auto& r : results) hops[{r.source, r.target}] = r.hops;
    for (const auto& [k, h] : hops) EXPECT_EQ(h, (hops[{k.second, k.first}]));
    std::vector<NodeId> ids = adjacency_projection(g).ids;
    for (int k = 0; k < 2000; ++k) {
        NodeId a = ids[pick(rng, ids.size())], b = ids[pick(rng, ids.size())], c = ids[pick(rng, ids.size())];
        if (a == b || b == c || a == c) continue;
        auto ab = hops[{a, b}], bc = hops[{b, c}], ac = hops[{a, c}];
        if (ab >= 0 && bc >= 0) EXPECT_LE(ac, ab + bc);
    }
    NodeFilter claro{"Phone", parse_condition("Phone.Operator = \"Claro\"")};
    for (const auto& r : shortest_paths(g, claro, kAnyPhone)) EXPECT_EQ(r.hops, (hops[{r.source, r.target}]));
}

TEST(ExpandGroups, SubsetsOfEachAdjacency) {
    auto two = expand_groups(fig3(), "Call", 2);
    EXPECT_EQ(two.edges().size(), 10u);
    for (const auto& e : two.edges()) {
        EXPECT_TRUE(e.source.empty());
        EXPECT_EQ(e.target.size(), 2u);
    }
    auto three = expand_groups(fig3(), "Call", 3);
    EXPECT_EQ(three.edges().size(), 2u);
    EXPECT_EQ(three.history().back(), OpKind::Expand);
}

TEST(GroupAverages, BaseGraphByOperatorPairs) {
    auto rows = group_averages(fig3(), "Phone", {"Phone", "Phone", "Operator"}, "Call", "Duration", 2);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].members, (std::vector<Value>{"ATT", "Vodafone"}));
    EXPECT_DOUBLE_EQ(rows[0].average, 4.0);
    EXPECT_EQ(rows[1].members, (std::vector<Value>{"Movistar", "Vodafone"}));
    EXPECT_DOUBLE_EQ(rows[1].average, 6.0);
}

TEST(GroupAverages, MatchFlatEnumeration) {
    auto data = generate(GeneratorConfig{.phone_count = 30, .user_count = 20, .call_count = 150, .seed = 4});
    const std::string bottom = data.catalog->at("Phone").bottom();
    for (const std::string level : {bottom, std::string("Customer"), std::string("City")}) {
        for (std::size_t n : {2, 3}) {
            auto oracle = flat_group_averages(data.calls, *data.catalog, level, n);
            auto rows = group_averages(data.graph, "Phone", {"Phone", bottom, level}, "Call", "Duration", n);
            ASSERT_EQ(rows.size(), oracle.size()) << level << " " << n;
            for (const auto& r : rows) EXPECT_NEAR(r.average, oracle.at(r.members), 1e-9);
        }
    }
}
