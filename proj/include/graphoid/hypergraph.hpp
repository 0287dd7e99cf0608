#pragma once
// The graphoid: typed, labelled nodes plus a bag of directed hyperedges, with
// the current level of every (type, slot) attribute.
//
// Graphoid values are immutable. They share their payload, so copies are cheap
// and every operation returns a new value.

#include "graphoid/dims.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphoid {

using NodeId = std::int64_t;
// Sorted, duplicate-free node identifiers.
using NodeSet = std::vector<NodeId>;

NodeSet make_node_set(std::vector<NodeId> ids);
NodeSet set_union(const NodeSet& a, const NodeSet& b);

struct NodeTypeDecl {
    std::string name; // without the leading '#'
    std::vector<std::string> dims;

    std::size_t arity() const { return dims.size(); }
    friend bool operator==(const NodeTypeDecl&, const NodeTypeDecl&) = default;
};

struct EdgeTypeDecl {
    std::string name;
    std::vector<std::string> dims;
    // Slots that carry measures, with their default aggregate function.
    std::map<std::size_t, AggregateFn> measures;

    std::size_t arity() const { return dims.size(); }
    bool is_measure(std::size_t slot) const { return measures.count(slot) > 0; }
    friend bool operator==(const EdgeTypeDecl&, const EdgeTypeDecl&) = default;
};

// Index of the slot carrying `dim`, if the type has it.
std::optional<std::size_t> slot_of(const std::vector<std::string>& dims, std::string_view dim);

struct Node {
    std::string type;
    std::vector<Value> label; // label[0] is the identifier

    NodeId id() const { return label.front().as_integer(); }
    friend bool operator==(const Node&, const Node&) = default;
};

struct HyperEdge {
    std::uint64_t surrogate = 0; // bag bookkeeping only; never part of equality
    NodeSet source;
    NodeSet target;
    std::string type;
    std::vector<Value> label;
};

NodeSet adjacency(const HyperEdge& edge);

struct TypeSlot {
    std::string type;
    std::size_t slot = 0;

    auto operator<=>(const TypeSlot&) const = default;
};

// Current level of each dimensional slot. Measure slots have no entry.
using LevelMap = std::map<TypeSlot, std::string>;

struct GraphoidData {
    CatalogPtr catalog;
    std::vector<NodeTypeDecl> node_types;
    std::vector<EdgeTypeDecl> edge_types;
    LevelMap levels;
    std::vector<Node> nodes;
    std::vector<HyperEdge> edges;
    std::uint64_t next_surrogate = 0;

    const NodeTypeDecl* find_node_type(std::string_view name) const;
    const EdgeTypeDecl* find_edge_type(std::string_view name) const;
    // Dimension list of a node or edge type; nullptr if unknown.
    const std::vector<std::string>* dims_of(std::string_view type) const;
    bool is_node_type(std::string_view name) const { return find_node_type(name) != nullptr; }

    HyperEdge& append_edge(NodeSet source, NodeSet target, std::string type, std::vector<Value> label);
};

// Operations recorded in a derived graphoid's lineage.
enum class OpKind { Climb, Minimize, Group, Aggr, RollUp, DrillDown, Dice, SDice, Slice, NDelete, Edgify, Expand };

const char* to_string(OpKind op);

class Graphoid {
public:
    explicit Graphoid(std::shared_ptr<const GraphoidData> data) : data_(std::move(data)) {}

    const GraphoidData& data() const { return *data_; }
    const Catalog& catalog() const { return *data_->catalog; }
    const CatalogPtr& catalog_ptr() const { return data_->catalog; }
    const std::vector<NodeTypeDecl>& node_types() const { return data_->node_types; }
    const std::vector<EdgeTypeDecl>& edge_types() const { return data_->edge_types; }
    const std::vector<Node>& nodes() const { return data_->nodes; }
    const std::vector<HyperEdge>& edges() const { return data_->edges; }
    const LevelMap& levels() const { return data_->levels; }
    const std::string& level(const TypeSlot& slot) const;

    const Node* find_node(NodeId id) const;

    // Lineage: the base graph this value was derived from (itself when none)
    // and the operations applied since.
    bool has_base() const { return base_ != nullptr; }
    Graphoid base() const { return base_ ? Graphoid(base_) : Graphoid(data_); }
    const std::vector<OpKind>& history() const { return history_; }

    // New value derived from this one by `op`.
    Graphoid derive(GraphoidData data, OpKind op) const;

private:
    std::shared_ptr<const GraphoidData> data_;
    std::shared_ptr<const GraphoidData> base_;
    std::vector<OpKind> history_;
};

struct NodeInput {
    std::string type;
    std::vector<Value> label;
};

struct EdgeInput {
    std::string type;
    std::vector<NodeId> source;
    std::vector<NodeId> target;
    std::vector<Value> label;
};

struct GraphoidDecls {
    std::vector<NodeTypeDecl> node_types;
    std::vector<EdgeTypeDecl> edge_types;
    // Missing entries default to the dimension's bottom level.
    LevelMap levels;
};

// Validates and assembles a graphoid; throws Error on the first violation.
// Label values are coerced to their level's declared type.
Graphoid build_graphoid(CatalogPtr catalog, GraphoidDecls decls, std::vector<NodeInput> nodes,
                        std::vector<EdgeInput> edges);

// Same checks as build_graphoid, applied to an assembled value.
ValidationReport validate_graphoid(const GraphoidData& data);

// Moves attribute `slot` of every node of `node_type` onto a new edge of type
// Has<Dim> (empty source, the node as target); the node keeps "all" there.
Graphoid edgify(const Graphoid& g, std::string_view node_type, std::size_t slot);

// Multiplicity-aware equality: same declarations, level map, node set and edge
// bag, ignoring surrogates and ordering.
bool bag_equal(const Graphoid& a, const Graphoid& b);
// Human-readable first difference, empty when bag_equal holds.
std::string bag_difference(const Graphoid& a, const Graphoid& b);

std::string format_type(std::string_view name); // "#Name"

} // namespace graphoid
