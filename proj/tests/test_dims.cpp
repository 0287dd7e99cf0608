#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace graphoid;
using namespace graphoid::testing;

namespace {

bool mentions(const ValidationReport& report, const std::string& needle) {
    return std::any_of(report.begin(), report.end(),
                       [&](const std::string& line) { return line.find(needle) != std::string::npos; });
}

DimensionSchema phone_schema() { return phone_catalog()->at("Phone").schema(); }

// Bottom -> {A, B} -> Country -> All with one bottom member.
DimensionInstance diamond(const std::string& via_a, const std::string& via_b) {
    DimensionInstance inst;
    inst.schema = {"Geo",
                   {{"Bottom"}, {"A"}, {"B"}, {"Country"}, {"All"}},
                   {{"Bottom", "A"}, {"Bottom", "B"}, {"A", "Country"}, {"B", "Country"}, {"Country", "All"}}};
    inst.members = {{"Bottom", {"x"}}, {"A", {"a1"}}, {"B", {"b1"}}, {"Country", {"c1", "c2"}}};
    inst.parents = {{"x", "Bottom", "a1", "A"},
                    {"x", "Bottom", "b1", "B"},
                    {"a1", "A", Value(via_a), "Country"},
                    {"b1", "B", Value(via_b), "Country"}};
    return inst;
}

} // namespace

TEST(Schema, PhoneWithTwoHierarchiesIsValid) {
    auto schema = phone_schema();
    EXPECT_TRUE(validate_schema(schema).empty());
    EXPECT_EQ(schema.edges.size(), 6u);
}

TEST(Schema, BottomToAllIsValid) {
    DimensionSchema s{"Tiny", {{"Bottom"}, {"All"}}, {{"Bottom", "All"}}};
    EXPECT_TRUE(validate_schema(s).empty());
}

TEST(Schema, TwoSinksReportNonUniqueTop) {
    DimensionSchema s{"Bad", {{"Bottom"}, {"Left"}, {"All"}}, {{"Bottom", "Left"}, {"Bottom", "All"}}};
    EXPECT_TRUE(mentions(validate_schema(s), "non-unique top"));
}

TEST(Schema, TwoSourcesReportNonUniqueBottom) {
    DimensionSchema s{"Bad", {{"B1"}, {"B2"}, {"All"}}, {{"B1", "All"}, {"B2", "All"}}};
    EXPECT_TRUE(mentions(validate_schema(s), "non-unique bottom"));
}

TEST(Schema, CyclesAndSelfEdgesAreReported) {
    DimensionSchema cyc{"Cyc", {{"B"}, {"X"}, {"Y"}, {"All"}}, {{"B", "X"}, {"X", "Y"}, {"Y", "X"}, {"Y", "All"}}};
    EXPECT_TRUE(mentions(validate_schema(cyc), "cycle"));
    DimensionSchema self{"Self", {{"B"}, {"All"}}, {{"B", "B"}, {"B", "All"}}};
    EXPECT_TRUE(mentions(validate_schema(self), "self-edge"));
}

TEST(Schema, TopMustBeCalledAll) {
    DimensionSchema s{"Top", {{"B"}, {"Everything"}}, {{"B", "Everything"}}};
    EXPECT_FALSE(validate_schema(s).empty());
}

TEST(Instance, PhoneInstanceIsValid) {
    const auto& inst = phone_catalog()->at("Phone").instance();
    EXPECT_TRUE(validate_instance(inst).empty());
    EXPECT_EQ(phone_catalog()->at("Phone").rollup("Phone", "Operator", "Ph2"), Value("Vodafone"));
    EXPECT_EQ(phone_catalog()->at("Phone").rollup("Phone", "Operator", "Ph4"), Value("Vodafone"));
}

TEST(Instance, TwoParentsAtOneLevelIsNonFunctional) {
    auto inst = phone_catalog()->at("Phone").instance();
    inst.parents.push_back({"Ph1", "Phone", "Vodafone", "Operator"});
    EXPECT_TRUE(mentions(validate_instance(inst), "non-functional roll-up"));
    EXPECT_THROW(Dimension::build(inst), Error);
}

TEST(Instance, MissingParentIsReported) {
    auto inst = phone_catalog()->at("Phone").instance();
    std::erase_if(inst.parents, [](const ParentEdge& e) { return e.child == Value("Ph5") && e.parent_level == "Operator"; });
    EXPECT_TRUE(mentions(validate_instance(inst), "missing parent"));
}

TEST(Instance, DiamondReachingTwoCountriesIsUnsound) {
    EXPECT_TRUE(validate_instance(diamond("c1", "c1")).empty());
    auto bad = diamond("c1", "c2");
    auto report = validate_instance(bad);
    EXPECT_TRUE(mentions(report, "unsound"));

    // Oracle: compose both paths by hand from the single bottom member.
    auto parent = [&](const Value& child, const std::string& level, const std::string& to) {
        for (const auto& e : bad.parents)
            if (e.child == child && e.child_level == level && e.parent_level == to) return e.parent;
        return Value();
    };
    EXPECT_NE(parent(parent("x", "Bottom", "A"), "A", "Country"), parent(parent("x", "Bottom", "B"), "B", "Country"));
}

TEST(Instance, AllDomainIsExactlyAll) {
    auto inst = phone_catalog()->at("Phone").instance();
    inst.members["All"] = {"all", "everything"};
    EXPECT_TRUE(mentions(validate_instance(inst), "dom(All)"));
}

TEST(Rollup, Ph3RollsUpToMovistar) {
    const auto& phone = phone_catalog()->at("Phone");
    EXPECT_EQ(rollup(phone, {"Phone", "Phone", "Operator"}, "Ph3"), Value("Movistar"));
}

TEST(Rollup, ToAllIsConstant) {
    const auto& phone = phone_catalog()->at("Phone");
    for (const auto& level : {"Phone", "Customer", "City", "Country", "Operator"})
        for (const auto& m : phone.members(level)) EXPECT_EQ(phone.rollup(level, "All", m), Value::all());
}

TEST(Rollup, DayToYearComposesMonths) {
    const auto& time = phone_catalog()->at("Time");
    const Value day = *parse_date("2016-10-10");
    const Value month = time.rollup("Day", "Month", day);
    EXPECT_EQ(month, Value("2016-10"));
    EXPECT_EQ(time.rollup("Day", "Year", day), time.rollup("Month", "Year", month));
    EXPECT_EQ(time.rollup("Day", "Year", day), Value(2016));
}

TEST(Rollup, SameLevelIsIdentity) {
    const auto& phone = phone_catalog()->at("Phone");
    EXPECT_EQ(phone.rollup("Customer", "Customer", "C3"), Value("C3"));
}

TEST(Rollup, Errors) {
    const auto& phone = phone_catalog()->at("Phone");
    try {
        phone.rollup("Phone", "Operator", "Ph9");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownMember);
    }
    try {
        phone.rollup("Operator", "Country", "ATT");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnreachableLevel);
    }
    try {
        phone.rollup("Phone", "Planet", "Ph1");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownLevel);
    }
}

TEST(Rollup, IdentifierDimension) {
    auto id = Dimension::identifier();
    EXPECT_TRUE(id.is_identifier());
    EXPECT_EQ(id.bottom(), "Id");
    EXPECT_EQ(id.rollup("Id", "All", Value(42)), Value::all());
    EXPECT_NE(phone_catalog()->find("Id"), nullptr);
}

// Exhaustive on random dimensions: composition through every intermediate
// level agrees with the direct roll-up, which covers both path independence
// and transitivity.
TEST(RollupProperty, CompositionAndPathIndependence) {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto dim = random_dimension("D", rng);
        ASSERT_TRUE(validate_instance(dim.instance()).empty());
        const auto& levels = dim.schema().levels;
        for (const auto& a : levels)
            for (const auto& b : levels)
                for (const auto& c : levels) {
                    if (!dim.reachable(a.name, b.name) || !dim.reachable(b.name, c.name)) continue;
                    for (const auto& m : dim.members(a.name)) {
                        auto direct = dim.rollup(a.name, c.name, m);
                        auto via = dim.rollup(b.name, c.name, dim.rollup(a.name, b.name, m));
                        ASSERT_EQ(direct, via) << a.name << "->" << b.name << "->" << c.name;
                    }
                }
        for (const auto& l : levels)
            for (const auto& m : dim.members(l.name)) ASSERT_TRUE(dim.rollup(l.name, "All", m).is_all());
    }
}

TEST(Catalog, RejectsDuplicates) {
    Catalog c;
    c.add(chain_dimension("D", {"L"}, {{{"x", ""}}}));
    EXPECT_THROW(c.add(chain_dimension("D", {"L"}, {{{"y", ""}}})), Error);
    EXPECT_THROW(c.at("Nope"), Error);
}
