#pragma once
// Dimension schemas (level lattices), dimension instances (member roll-up graphs)
// and the validated, materialized form used by the OLAP operations.
//
// A schema edge From -> To means members of From roll up to members of To.
// The top level is always named "All" and holds the single member "all".

#include "graphoid/error.hpp"
#include "graphoid/value.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace graphoid {

inline constexpr std::string_view kAllLevel = "All";
inline constexpr std::string_view kIdDimension = "Id";

struct LevelDecl {
    std::string name;
    ValueType type = ValueType::String;
    bool ordered = false;

    friend bool operator==(const LevelDecl&, const LevelDecl&) = default;
};

struct DimensionSchema {
    std::string name;
    std::vector<LevelDecl> levels;
    std::vector<std::pair<std::string, std::string>> edges;

    const LevelDecl* find_level(std::string_view level) const;

    friend bool operator==(const DimensionSchema&, const DimensionSchema&) = default;
};

ValidationReport validate_schema(const DimensionSchema& schema);

struct ParentEdge {
    Value child;
    std::string child_level;
    Value parent;
    std::string parent_level;

    friend bool operator==(const ParentEdge&, const ParentEdge&) = default;
};

struct DimensionInstance {
    DimensionSchema schema;
    // Members per level, in declaration order. The All level may be omitted.
    std::map<std::string, std::vector<Value>> members;
    std::vector<ParentEdge> parents;

    friend bool operator==(const DimensionInstance&, const DimensionInstance&) = default;
};

ValidationReport validate_instance(const DimensionInstance& instance);

struct RollupStep {
    std::string dimension;
    std::string from_level;
    std::string to_level;

    friend bool operator==(const RollupStep&, const RollupStep&) = default;
};

// A validated dimension instance with every roll-up function rho(from -> to)
// materialized for all reachable level pairs.
class Dimension {
public:
    // Throws Error(InvalidSchema / InvalidInstance) carrying the validation report.
    static Dimension build(DimensionInstance instance);

    // The built-in identifier dimension: levels Id -> All, integer domain.
    static Dimension identifier();

    const std::string& name() const { return instance_.schema.name; }
    const DimensionSchema& schema() const { return instance_.schema; }
    const DimensionInstance& instance() const { return instance_; }
    const std::string& bottom() const { return bottom_; }
    bool is_identifier() const { return identifier_; }

    bool has_level(std::string_view level) const;
    const LevelDecl& level(std::string_view level) const;
    // Reflexive, transitive reachability in the schema.
    bool reachable(std::string_view from, std::string_view to) const;
    bool contains(std::string_view level, const Value& member) const;
    const std::vector<Value>& members(std::string_view level) const;

    // rho_{from -> to}(member). Throws UnknownLevel, UnreachableLevel, UnknownMember.
    Value rollup(std::string_view from, std::string_view to, const Value& member) const;

private:
    Dimension() = default;

    DimensionInstance instance_;
    std::string bottom_;
    bool identifier_ = false;
    std::set<std::pair<std::string, std::string>, std::less<>> reach_;
    std::map<std::string, std::unordered_set<Value>, std::less<>> member_sets_;
    std::map<std::pair<std::string, std::string>, std::unordered_map<Value, Value>> rho_;
};

Value rollup(const Dimension& dimension, const RollupStep& step, const Value& member);

// The set of dimensions a graphoid or cube refers to. Always contains Id.
class Catalog {
public:
    Catalog();

    void add(Dimension dimension);

    const Dimension* find(std::string_view name) const;
    const Dimension& at(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, Dimension, std::less<>> dims_;
};

using CatalogPtr = std::shared_ptr<const Catalog>;

} // namespace graphoid
