#include "graphoid/hypergraph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <unordered_set>

namespace graphoid {

NodeSet make_node_set(std::vector<NodeId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

NodeSet adjacency(const HyperEdge& edge) {
    return set_union(edge.source, edge.target);
}

std::optional<std::size_t> slot_of(const std::vector<std::string>& dims, std::string_view dim) {
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (dims[i] == dim) return i;
    return std::nullopt;
}

std::string format_type(std::string_view name) {
    return "#" + std::string(name);
}

const char* to_string(OpKind op) {
    switch (op) {
    case OpKind::Climb: return "CLIMB";
    case OpKind::Minimize: return "MINIMIZE";
    case OpKind::Group: return "GROUP";
    case OpKind::Aggr: return "AGGR";
    case OpKind::RollUp: return "ROLLUP";
    case OpKind::DrillDown: return "DRILLDOWN";
    case OpKind::Dice: return "DICE";
    case OpKind::SDice: return "SDICE";
    case OpKind::Slice: return "SLICE";
    case OpKind::NDelete: return "NDELETE";
    case OpKind::Edgify: return "EDGIFY";
    case OpKind::Expand: return "EXPAND";
    }
    return "?";
}

const NodeTypeDecl* GraphoidData::find_node_type(std::string_view name) const {
    for (const auto& t : node_types)
        if (t.name == name) return &t;
    return nullptr;
}

const EdgeTypeDecl* GraphoidData::find_edge_type(std::string_view name) const {
    for (const auto& t : edge_types)
        if (t.name == name) return &t;
    return nullptr;
}

const std::vector<std::string>* GraphoidData::dims_of(std::string_view type) const {
    if (const auto* n = find_node_type(type)) return &n->dims;
    if (const auto* e = find_edge_type(type)) return &e->dims;
    return nullptr;
}

HyperEdge& GraphoidData::append_edge(NodeSet source, NodeSet target, std::string type, std::vector<Value> label) {
    edges.push_back(HyperEdge{next_surrogate++, std::move(source), std::move(target), std::move(type),
                              std::move(label)});
    return edges.back();
}

const std::string& Graphoid::level(const TypeSlot& slot) const {
    auto it = data_->levels.find(slot);
    if (it == data_->levels.end())
        throw Error(ErrorCode::UnknownSlot,
                    "no level recorded for " + format_type(slot.type) + " slot " + std::to_string(slot.slot));
    return it->second;
}

const Node* Graphoid::find_node(NodeId id) const {
    for (const auto& n : data_->nodes)
        if (n.id() == id) return &n;
    return nullptr;
}

Graphoid Graphoid::derive(GraphoidData data, OpKind op) const {
    Graphoid out(std::make_shared<const GraphoidData>(std::move(data)));
    out.base_ = base_ ? base_ : data_;
    out.history_ = history_;
    out.history_.push_back(op);
    return out;
}

namespace {

using Sink = std::function<void(ErrorCode, std::string)>;

void check_decls(const GraphoidData& g, const Sink& report) {
    const auto& catalog = *g.catalog;
    std::set<std::string> names;
    for (const auto& t : g.node_types) {
        if (!names.insert(t.name).second) report(ErrorCode::DuplicateType, "duplicate type " + format_type(t.name));
        if (t.dims.empty() || t.dims.front() != kIdDimension)
            report(ErrorCode::ArityMismatch, "node type " + format_type(t.name) + " must start with the Id dimension");
        std::set<std::string> seen;
        for (const auto& d : t.dims) {
            if (!seen.insert(d).second)
                report(ErrorCode::DuplicateType, "node type " + format_type(t.name) + " repeats dimension " + d);
            if (!catalog.find(d))
                report(ErrorCode::UnknownDimension, "node type " + format_type(t.name) + " uses unknown dimension " + d);
        }
    }
    for (const auto& t : g.edge_types) {
        if (!names.insert(t.name).second) report(ErrorCode::DuplicateType, "duplicate type " + format_type(t.name));
        std::set<std::string> seen;
        for (std::size_t i = 0; i < t.dims.size(); ++i) {
            const auto& d = t.dims[i];
            if (!seen.insert(d).second)
                report(ErrorCode::DuplicateType, "edge type " + format_type(t.name) + " repeats dimension " + d);
            if (t.is_measure(i)) {
                if (d == kIdDimension)
                    report(ErrorCode::UnknownMeasure, "edge type " + format_type(t.name) + ": Id cannot be a measure");
            } else if (!catalog.find(d)) {
                report(ErrorCode::UnknownDimension, "edge type " + format_type(t.name) + " uses unknown dimension " + d);
            }
        }
        for (const auto& [slot, fn] : t.measures)
            if (slot >= t.dims.size())
                report(ErrorCode::UnknownSlot, "edge type " + format_type(t.name) + " flags measure slot " +
                                                   std::to_string(slot) + " beyond its arity");
    }
    auto check_levels = [&](const std::string& type, const std::vector<std::string>& dims,
                            const EdgeTypeDecl* edge) {
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (edge && edge->is_measure(i)) continue;
            const auto* dim = catalog.find(dims[i]);
            if (!dim) continue;
            auto it = g.levels.find({type, i});
            if (it == g.levels.end()) {
                report(ErrorCode::UnknownLevel, "no level for " + format_type(type) + " slot " + std::to_string(i));
                continue;
            }
            if (!dim->has_level(it->second))
                report(ErrorCode::UnknownLevel, "dimension " + dims[i] + " has no level " + it->second);
            if (dims[i] == kIdDimension && it->second != kIdDimension)
                report(ErrorCode::LevelMismatch, "Id slot of " + format_type(type) + " must stay at level Id");
        }
    };
    for (const auto& t : g.node_types) check_levels(t.name, t.dims, nullptr);
    for (const auto& t : g.edge_types) check_levels(t.name, t.dims, &t);
}

void check_label(const GraphoidData& g, const std::string& what, const std::string& type,
                 const std::vector<std::string>& dims, const EdgeTypeDecl* edge, const std::vector<Value>& label,
                 const Sink& report) {
    if (label.size() != dims.size()) {
        report(ErrorCode::ArityMismatch, what + " has " + std::to_string(label.size()) + " attributes, type " +
                                             format_type(type) + " expects " + std::to_string(dims.size()));
        return;
    }
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (edge && edge->is_measure(i)) {
            if (!label[i].is_numeric())
                report(ErrorCode::TypeMismatch, what + ": measure " + dims[i] + " must be numeric, got " +
                                                    label[i].to_string());
            continue;
        }
        const auto* dim = g.catalog->find(dims[i]);
        auto it = g.levels.find({type, i});
        if (!dim || it == g.levels.end()) continue;
        if (!dim->contains(it->second, label[i]))
            report(ErrorCode::ValueOutsideDomain, what + ": " + label[i].to_string() + " is not in dom(" + dims[i] +
                                                      "." + it->second + ")");
    }
}

void check_graphoid(const GraphoidData& g, const Sink& report) {
    check_decls(g, report);
    std::unordered_set<NodeId> ids;
    for (const auto& n : g.nodes) {
        const auto* t = g.find_node_type(n.type);
        if (!t) {
            report(ErrorCode::UnknownType, "node of unknown type " + format_type(n.type));
            continue;
        }
        if (n.label.empty() || !n.label.front().is_integer()) {
            report(ErrorCode::TypeMismatch, "node of type " + format_type(n.type) + " lacks an integer identifier");
            continue;
        }
        std::string what = "node " + std::to_string(n.id());
        if (!ids.insert(n.id()).second) report(ErrorCode::DuplicateNode, "duplicate node identifier " + std::to_string(n.id()));
        check_label(g, what, n.type, t->dims, nullptr, n.label, report);
    }
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const auto& e = g.edges[k];
        std::string what = "edge " + std::to_string(k);
        const auto* t = g.find_edge_type(e.type);
        if (!t) {
            report(ErrorCode::UnknownType, what + " has unknown type " + format_type(e.type));
            continue;
        }
        if (e.source.empty() && e.target.empty()) report(ErrorCode::EmptyEdge, what + " has no endpoints");
        for (const auto* side : {&e.source, &e.target})
            for (auto id : *side)
                if (!ids.count(id))
                    report(ErrorCode::UnknownEndpoint, what + " references unknown node " + std::to_string(id));
        check_label(g, what, e.type, t->dims, t, e.label, report);
    }
}

std::vector<Value> coerce_label(const GraphoidData& g, const std::string& type, const std::vector<std::string>& dims,
                                const EdgeTypeDecl* edge, std::vector<Value> label) {
    for (std::size_t i = 0; i < label.size() && i < dims.size(); ++i) {
        if (edge && edge->is_measure(i)) continue;
        const auto* dim = g.catalog->find(dims[i]);
        auto it = g.levels.find({type, i});
        if (!dim || it == g.levels.end() || !dim->has_level(it->second)) continue;
        label[i] = coerce(label[i], dim->level(it->second).type);
    }
    return label;
}

} // namespace

Graphoid build_graphoid(CatalogPtr catalog, GraphoidDecls decls, std::vector<NodeInput> nodes,
                        std::vector<EdgeInput> edges) {
    if (nodes.empty()) throw Error(ErrorCode::EmptyNodeSet, "non-empty node set required");
    GraphoidData g;
    g.catalog = std::move(catalog);
    g.node_types = std::move(decls.node_types);
    g.edge_types = std::move(decls.edge_types);
    g.levels = std::move(decls.levels);

    Sink thrower = [](ErrorCode code, std::string message) { throw Error(code, message); };
    // Default unspecified levels to Bottom before anything is coerced.
    auto default_levels = [&](const std::string& type, const std::vector<std::string>& dims, const EdgeTypeDecl* e) {
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (e && e->is_measure(i)) continue;
            if (const auto* dim = g.catalog->find(dims[i])) g.levels.try_emplace({type, i}, dim->bottom());
        }
    };
    for (const auto& t : g.node_types) default_levels(t.name, t.dims, nullptr);
    for (const auto& t : g.edge_types) default_levels(t.name, t.dims, &t);
    check_decls(g, thrower);

    g.nodes.reserve(nodes.size());
    for (auto& n : nodes) {
        const auto* t = g.find_node_type(n.type);
        if (!t) throw Error(ErrorCode::UnknownType, "node of unknown type " + format_type(n.type));
        g.nodes.push_back(Node{n.type, coerce_label(g, n.type, t->dims, nullptr, std::move(n.label))});
    }
    g.edges.reserve(edges.size());
    for (auto& e : edges) {
        const auto* t = g.find_edge_type(e.type);
        if (!t) throw Error(ErrorCode::UnknownType, "edge of unknown type " + format_type(e.type));
        auto label = coerce_label(g, e.type, t->dims, t, std::move(e.label));
        g.append_edge(make_node_set(std::move(e.source)), make_node_set(std::move(e.target)), e.type,
                      std::move(label));
    }
    check_graphoid(g, thrower);
    return Graphoid(std::make_shared<const GraphoidData>(std::move(g)));
}

ValidationReport validate_graphoid(const GraphoidData& data) {
    ValidationReport report;
    if (data.nodes.empty()) report.push_back("non-empty node set required");
    check_graphoid(data, [&](ErrorCode, std::string message) { report.push_back(std::move(message)); });
    return report;
}

Graphoid edgify(const Graphoid& g, std::string_view node_type, std::size_t slot) {
    const auto* t = g.data().find_node_type(node_type);
    if (!t) throw Error(ErrorCode::UnknownType, "unknown node type " + format_type(node_type));
    if (slot == 0) throw Error(ErrorCode::UnknownSlot, "slot 0 holds the identifier and cannot be edgified");
    if (slot >= t->arity())
        throw Error(ErrorCode::UnknownSlot,
                    format_type(node_type) + " has no slot " + std::to_string(slot));

    GraphoidData out = g.data();
    const std::string dim_name = t->dims[slot];
    const std::string type_name(node_type);
    const auto& dim = g.catalog().at(dim_name);
    const std::string level = g.level({type_name, slot});
    // Already moved: nothing left on the nodes to move.
    if (level == kAllLevel && out.find_edge_type("Has" + dim_name)) return g.derive(std::move(out), OpKind::Edgify);
    const bool numeric = dim.level(level).type == ValueType::Integer || dim.level(level).type == ValueType::Decimal;

    EdgeTypeDecl has{"Has" + dim_name, {dim_name}, {}};
    if (numeric) has.measures[0] = AggregateFn::Sum;
    if (const auto* existing = out.find_edge_type(has.name)) {
        if (*existing != has) throw Error(ErrorCode::DuplicateType, "type " + format_type(has.name) + " already exists");
        if (!numeric && out.levels.at({has.name, 0}) != level)
            throw Error(ErrorCode::LevelMismatch, format_type(has.name) + " holds " + dim_name + " at another level");
    } else {
        if (out.find_node_type(has.name)) throw Error(ErrorCode::DuplicateType, "type " + format_type(has.name) + " already exists");
        out.edge_types.push_back(has);
        if (!numeric) out.levels[{has.name, 0}] = level;
    }

    if (level != kAllLevel) {
        for (auto& n : out.nodes) {
            if (n.type != node_type) continue;
            Value moved = std::exchange(n.label[slot], Value::all());
            out.append_edge({}, {n.id()}, has.name, {std::move(moved)});
        }
        out.levels[{type_name, slot}] = std::string(kAllLevel);
    }
    return g.derive(std::move(out), OpKind::Edgify);
}

namespace {

using EdgeKey = std::tuple<std::string, NodeSet, NodeSet, std::vector<Value>>;

std::vector<EdgeKey> edge_keys(const Graphoid& g) {
    std::vector<EdgeKey> keys;
    keys.reserve(g.edges().size());
    for (const auto& e : g.edges()) keys.emplace_back(e.type, e.source, e.target, e.label);
    std::sort(keys.begin(), keys.end());
    return keys;
}

template <class T>
std::vector<T> sorted_by_name(std::vector<T> v) {
    std::sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.name < b.name; });
    return v;
}

std::string describe(const EdgeKey& k) {
    std::string out = format_type(std::get<0>(k)) + " {";
    for (auto id : std::get<1>(k)) out += std::to_string(id) + " ";
    out += "} -> {";
    for (auto id : std::get<2>(k)) out += std::to_string(id) + " ";
    out += "} [";
    for (const auto& v : std::get<3>(k)) out += v.to_string() + " ";
    return out + "]";
}

} // namespace

std::string bag_difference(const Graphoid& a, const Graphoid& b) {
    if (sorted_by_name(a.node_types()) != sorted_by_name(b.node_types())) return "node type declarations differ";
    if (sorted_by_name(a.edge_types()) != sorted_by_name(b.edge_types())) return "edge type declarations differ";
    if (a.levels() != b.levels()) return "level maps differ";
    auto nodes_a = a.nodes(), nodes_b = b.nodes();
    auto by_id = [](const Node& x, const Node& y) { return x.id() < y.id(); };
    std::sort(nodes_a.begin(), nodes_a.end(), by_id);
    std::sort(nodes_b.begin(), nodes_b.end(), by_id);
    if (nodes_a.size() != nodes_b.size())
        return "node counts differ: " + std::to_string(nodes_a.size()) + " vs " + std::to_string(nodes_b.size());
    for (std::size_t i = 0; i < nodes_a.size(); ++i)
        if (nodes_a[i] != nodes_b[i]) return "node " + std::to_string(nodes_a[i].id()) + " differs";
    auto ka = edge_keys(a), kb = edge_keys(b);
    if (ka.size() != kb.size())
        return "edge counts differ: " + std::to_string(ka.size()) + " vs " + std::to_string(kb.size());
    for (std::size_t i = 0; i < ka.size(); ++i)
        if (ka[i] != kb[i]) return "edge bags differ at " + describe(ka[i]) + " vs " + describe(kb[i]);
    return {};
}

bool bag_equal(const Graphoid& a, const Graphoid& b) {
    return bag_difference(a, b).empty();
}

} // namespace graphoid
