#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace graphoid;
using namespace graphoid::testing;

namespace {

ErrorCode build_error(std::vector<NodeInput> nodes, std::vector<EdgeInput> edges) {
    GraphoidDecls decls;
    decls.node_types = {{"Phone", {"Id", "Phone"}}};
    decls.edge_types = {{"Call", {"Time", "Duration"}, {{1, AggregateFn::Sum}}}};
    try {
        build_graphoid(phone_catalog(), decls, std::move(nodes), std::move(edges));
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::Parse;
}

std::size_t count_nodes(const Graphoid& g, const std::string& type) {
    return static_cast<std::size_t>(
        std::count_if(g.nodes().begin(), g.nodes().end(), [&](const Node& n) { return n.type == type; }));
}

} // namespace

TEST(Build, BaseGraphHasFiveNodesAndSixEdges) {
    auto g = fig3_built(phone_catalog());
    EXPECT_EQ(g.nodes().size(), 5u);
    EXPECT_EQ(g.edges().size(), 6u);
    for (int i = 1; i <= 5; ++i) {
        const Node* n = g.find_node(10 + i);
        ASSERT_NE(n, nullptr);
        EXPECT_EQ(n->label[1], Value("Ph" + std::to_string(i)));
    }
    EXPECT_EQ(g.level({"Phone", 0}), "Id");
    EXPECT_EQ(g.level({"Phone", 1}), "Phone");
    EXPECT_EQ(g.level({"Call", 0}), "Day");
    EXPECT_TRUE(validate_graphoid(g.data()).empty());
    EXPECT_TRUE(bag_equal(g, fig3()));
}

TEST(Build, EmptyNodeSetIsRejected) {
    try {
        build_graphoid(phone_catalog(), {}, {}, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyNodeSet);
        EXPECT_NE(std::string(e.what()).find("non-empty node set required"), std::string::npos);
    }
}

TEST(Build, IdenticalEdgesAreBothStored) {
    auto g = fig3();
    const auto& e = g.edges();
    EXPECT_EQ(std::count_if(e.begin(), e.end(), [](const HyperEdge& x) {
                  return x.source == NodeSet{11} && x.target == NodeSet{12};
              }),
              2);
    EXPECT_NE(e[0].surrogate, e[1].surrogate);
}

TEST(Build, Violations) {
    EXPECT_EQ(build_error({{"Phone", {11, "Ph1"}}, {"Phone", {11, "Ph2"}}}, {}), ErrorCode::DuplicateNode);
    EXPECT_EQ(build_error({{"Phone", {11, "Ph1", "extra"}}}, {}), ErrorCode::ArityMismatch);
    EXPECT_EQ(build_error({{"Phone", {11, "Ph9"}}}, {}), ErrorCode::ValueOutsideDomain);
    EXPECT_EQ(build_error({{"Phone", {11, "Ph1"}}}, {{"Call", {11}, {99}, {Value("2016-10-10"), Value(1)}}}),
              ErrorCode::UnknownEndpoint);
    EXPECT_EQ(build_error({{"Phone", {11, "Ph1"}}}, {{"Call", {}, {}, {Value("2016-10-10"), Value(1)}}}),
              ErrorCode::EmptyEdge);
    EXPECT_EQ(build_error({{"Robot", {11, "Ph1"}}}, {}), ErrorCode::UnknownType);
    EXPECT_EQ(build_error({{"Phone", {11, "Ph1"}}}, {{"Call", {11}, {11}, {Value("1999-01-01"), Value(1)}}}),
              ErrorCode::ValueOutsideDomain);
}

TEST(Build, NodeTypeMustStartWithId) {
    GraphoidDecls decls;
    decls.node_types = {{"Phone", {"Phone", "Id"}}};
    EXPECT_THROW(build_graphoid(phone_catalog(), decls, {{"Phone", {"Ph1", 11}}}, {}), Error);
    decls.node_types = {{"Phone", {"Id", "Phone", "Phone"}}};
    EXPECT_THROW(build_graphoid(phone_catalog(), decls, {{"Phone", {11, "Ph1", "Ph1"}}}, {}), Error);
}

TEST(Adjacency, UnionOfEndpoints) {
    EXPECT_EQ(adjacency(HyperEdge{0, {3}, {2, 5}, "Call", {}}), (NodeSet{2, 3, 5}));
    EXPECT_EQ(adjacency(HyperEdge{0, {}, {1, 2, 3}, "Call", {}}), (NodeSet{1, 2, 3}));
    EXPECT_EQ(adjacency(HyperEdge{0, {1}, {1}, "Call", {}}), (NodeSet{1}));
}

TEST(NodeSets, SortedAndUnique) {
    EXPECT_EQ(make_node_set({5, 1, 5, 3}), (NodeSet{1, 3, 5}));
    EXPECT_EQ(set_union({1, 4}, {2, 4}), (NodeSet{1, 2, 4}));
}

TEST(BagEqual, IgnoresOrderButCountsMultiplicity) {
    Rng rng(3);
    auto g = fig3();
    EXPECT_TRUE(bag_equal(g, shuffled(g, rng)));
    EXPECT_TRUE(bag_difference(g, shuffled(g, rng)).empty());

    // Dropping one copy of the duplicated call changes the bag.
    GraphoidData d = g.data();
    d.edges.erase(d.edges.begin());
    auto fewer = g.derive(d, OpKind::Dice);
    EXPECT_FALSE(bag_equal(g, fewer));
    EXPECT_FALSE(bag_difference(g, fewer).empty());

    // Same edge count, different multiplicities.
    d = g.data();
    d.edges[0] = d.edges[2];
    EXPECT_FALSE(bag_equal(g, g.derive(d, OpKind::Dice)));
}

TEST(BagEqual, LevelMapMatters) {
    auto g = fig3();
    GraphoidData d = g.data();
    d.levels[{"Call", 0}] = "Month";
    EXPECT_FALSE(bag_equal(g, g.derive(d, OpKind::Climb)));
}

TEST(Edgify, MovesExpectedBillOntoAnEdge) {
    auto catalog = billing_catalog();
    auto g = billing_graph(catalog);
    auto h = edgify(g, "Phone", 2);
    EXPECT_EQ(h.nodes().size(), g.nodes().size());
    EXPECT_EQ(h.edges().size(), g.edges().size() + 3);
    EXPECT_EQ(h.find_node(11)->label, (std::vector<Value>{11, "Ph1", Value::all()}));
    EXPECT_EQ(h.level({"Phone", 2}), "All");
    const auto* has = h.data().find_edge_type("HasExpectedBill");
    ASSERT_NE(has, nullptr);
    EXPECT_EQ(has->dims, (std::vector<std::string>{"ExpectedBill"}));
    std::size_t found = 0;
    for (const auto& e : h.edges())
        if (e.type == "HasExpectedBill" && e.source.empty() && e.target == NodeSet{11}) {
            EXPECT_EQ(e.label, (std::vector<Value>{880}));
            ++found;
        }
    EXPECT_EQ(found, 1u);
    EXPECT_TRUE(validate_graphoid(h.data()).empty());
    EXPECT_EQ(h.history(), (std::vector<OpKind>{OpKind::Edgify}));
}

TEST(Edgify, TwiceIsIdentityOnLabels) {
    auto g = billing_graph(billing_catalog());
    auto once = edgify(g, "Phone", 2);
    auto twice = edgify(once, "Phone", 2);
    EXPECT_TRUE(bag_equal(once, twice));
}

TEST(Edgify, TypeWithoutNodesOnlyRegistersTheEdgeType) {
    auto catalog = billing_catalog();
    GraphoidDecls decls;
    decls.node_types = {{"Phone", {"Id", "Phone"}}, {"Account", {"Id", "ExpectedBill"}}};
    auto g = build_graphoid(catalog, decls, {{"Phone", {11, "Ph1"}}}, {});
    auto h = edgify(g, "Account", 1);
    EXPECT_EQ(h.edges().size(), 0u);
    EXPECT_NE(h.data().find_edge_type("HasExpectedBill"), nullptr);
    EXPECT_EQ(h.nodes(), g.nodes());
}

TEST(Edgify, RejectsIdAndUnknownSlots) {
    auto g = billing_graph(billing_catalog());
    EXPECT_THROW(edgify(g, "Phone", 0), Error);
    EXPECT_THROW(edgify(g, "Phone", 7), Error);
    EXPECT_THROW(edgify(g, "Robot", 1), Error);
}

TEST(Edgify, StringAttributeKeepsItsLevel) {
    auto g = fig3();
    auto h = edgify(g, "Phone", 1);
    EXPECT_EQ(h.level({"HasPhone", 0}), "Phone");
    EXPECT_EQ(h.edges().size(), 11u);
    EXPECT_TRUE(validate_graphoid(h.data()).empty());
}

TEST(EdgifyProperty, PreservesNodesAndAddsOneEdgePerNode) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = random_graphoid(rng);
        const auto& t = g.node_types()[pick(rng, g.node_types().size())];
        const std::size_t slot = 1 + pick(rng, t.arity() - 1);
        if (g.level({t.name, slot}) == "All") continue;
        auto h = edgify(g, t.name, slot);
        EXPECT_EQ(h.nodes().size(), g.nodes().size());
        EXPECT_EQ(h.edges().size(), g.edges().size() + count_nodes(g, t.name));
        EXPECT_TRUE(validate_graphoid(h.data()).empty());
    }
}

TEST(Lineage, DerivedValuesRememberTheirBase) {
    auto g = fig3();
    EXPECT_FALSE(g.has_base());
    GraphoidData d = g.data();
    auto h = g.derive(d, OpKind::Minimize).derive(d, OpKind::Aggr);
    EXPECT_TRUE(h.has_base());
    EXPECT_EQ(&h.base().data(), &g.data());
    EXPECT_EQ(h.history(), (std::vector<OpKind>{OpKind::Minimize, OpKind::Aggr}));
    EXPECT_STREQ(to_string(OpKind::RollUp), "ROLLUP");
    EXPECT_EQ(format_type("Call"), "#Call");
}
