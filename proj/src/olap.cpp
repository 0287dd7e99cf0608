#include "graphoid/olap.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace graphoid {

unsigned default_workers() {
    if (const char* env = std::getenv("GRAPHOID_WORKERS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

bool TargetSet::contains(std::string_view type) const {
    return wildcard || std::find(types.begin(), types.end(), type) != types.end();
}

namespace {

// Non-measure slot of `dim` in the given type.
std::optional<std::size_t> dimensional_slot(const GraphoidData& g, std::string_view type, std::string_view dim) {
    const auto* dims = g.dims_of(type);
    if (!dims) return std::nullopt;
    auto slot = slot_of(*dims, dim);
    if (!slot) return std::nullopt;
    if (const auto* e = g.find_edge_type(type); e && e->is_measure(*slot)) return std::nullopt;
    return slot;
}

std::vector<std::string> all_type_names(const GraphoidData& g) {
    std::vector<std::string> out;
    for (const auto& t : g.node_types) out.push_back(t.name);
    for (const auto& t : g.edge_types) out.push_back(t.name);
    return out;
}

void climb_in_place(GraphoidData& g, const TargetSet& targets, const RollupStep& step, ExecPolicy policy) {
    const auto& dim = g.catalog->at(step.dimension);
    dim.level(step.from_level);
    dim.level(step.to_level);
    if (!dim.reachable(step.from_level, step.to_level))
        throw Error(ErrorCode::UnreachableLevel, "dimension " + step.dimension + ": level " + step.to_level +
                                                     " is not reachable from " + step.from_level);

    std::map<std::string, std::size_t> slots;
    for (const auto& type : targets.wildcard ? all_type_names(g) : targets.types) {
        if (!g.dims_of(type)) throw Error(ErrorCode::UnknownType, "unknown type " + format_type(type));
        auto slot = dimensional_slot(g, type, step.dimension);
        if (!slot) {
            if (targets.wildcard) continue;
            throw Error(ErrorCode::TargetLacksDimension,
                        format_type(type) + " has no attribute of dimension " + step.dimension);
        }
        if (*slot == 0 && g.is_node_type(type))
            throw Error(ErrorCode::LevelMismatch, "the identifier of " + format_type(type) + " cannot climb");
        const auto& current = g.levels.at({type, *slot});
        if (current != step.from_level)
            throw Error(ErrorCode::LevelMismatch, format_type(type) + " holds " + step.dimension + " at level " +
                                                      current + ", not " + step.from_level);
        slots[type] = *slot;
    }
    if (slots.empty() || step.from_level == step.to_level) return;

    auto rewrite = [&](const std::string& type, std::vector<Value>& label) {
        auto it = slots.find(type);
        if (it != slots.end()) label[it->second] = dim.rollup(step.from_level, step.to_level, label[it->second]);
    };
    parallel_for(g.nodes.size(), policy.workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) rewrite(g.nodes[i].type, g.nodes[i].label);
    });
    parallel_for(g.edges.size(), policy.workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) rewrite(g.edges[i].type, g.edges[i].label);
    });
    for (const auto& [type, slot] : slots) g.levels[{type, slot}] = step.to_level;
}

void minimize_in_place(GraphoidData& g) {
    // (type, label without identifier) -> smallest identifier
    std::map<std::pair<std::string, std::vector<Value>>, NodeId> reps;
    for (const auto& n : g.nodes) {
        std::pair<std::string, std::vector<Value>> key{n.type, {n.label.begin() + 1, n.label.end()}};
        auto [it, inserted] = reps.emplace(std::move(key), n.id());
        if (!inserted) it->second = std::min(it->second, n.id());
    }
    std::unordered_map<NodeId, NodeId> rep_of;
    rep_of.reserve(g.nodes.size());
    std::vector<Node> kept;
    for (auto& n : g.nodes) {
        NodeId rep = reps.at({n.type, {n.label.begin() + 1, n.label.end()}});
        rep_of.emplace(n.id(), rep);
        if (rep == n.id()) kept.push_back(std::move(n));
    }
    std::sort(kept.begin(), kept.end(), [](const Node& a, const Node& b) { return a.id() < b.id(); });
    g.nodes = std::move(kept);

    auto remap = [&](NodeSet& ids) {
        for (auto& id : ids) id = rep_of.at(id);
        ids = make_node_set(std::move(ids));
    };
    for (auto& e : g.edges) {
        remap(e.source);
        remap(e.target);
    }
}

void aggr_in_place(GraphoidData& g, std::string_view edge_type, const MeasureSpec& measures) {
    minimize_in_place(g);

    std::set<std::string> seen;
    for (const auto& m : measures)
        if (!seen.insert(m.measure).second)
            throw Error(ErrorCode::UnknownMeasure, "measure " + m.measure + " is aggregated twice");

    // edge type -> (measure slot -> function)
    std::map<std::string, std::map<std::size_t, AggregateFn>> plan;
    if (edge_type == kAnyEdgeType) {
        for (const auto& t : g.edge_types)
            for (const auto& m : measures)
                if (auto slot = slot_of(t.dims, m.measure); slot && t.is_measure(*slot)) plan[t.name][*slot] = m.fn;
    } else {
        const auto* t = g.find_edge_type(edge_type);
        if (!t) throw Error(ErrorCode::UnknownType, "unknown edge type " + format_type(edge_type));
        auto& entry = plan[t->name];
        for (const auto& m : measures) {
            auto slot = slot_of(t->dims, m.measure);
            if (!slot || !t->is_measure(*slot))
                throw Error(ErrorCode::UnknownMeasure, m.measure + " is not a measure of " + format_type(t->name));
            entry[*slot] = m.fn;
        }
    }

    using ClassKey = std::tuple<std::string, NodeSet, NodeSet, std::vector<Value>>;
    std::map<ClassKey, std::vector<std::size_t>> classes;
    std::vector<const ClassKey*> class_of(g.edges.size(), nullptr);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        auto it = plan.find(e.type);
        if (it == plan.end()) continue;
        const auto& dims = g.find_edge_type(e.type)->dims;
        std::vector<Value> key_label;
        for (std::size_t s = 0; s < e.label.size(); ++s)
            if (!it->second.count(s) && dims[s] != kIdDimension) key_label.push_back(e.label[s]);
        auto [cit, _] = classes.try_emplace(ClassKey{e.type, e.source, e.target, std::move(key_label)});
        cit->second.push_back(i);
        class_of[i] = &cit->first;
    }

    std::vector<bool> keep(g.edges.size(), true);
    for (auto& [key, members] : classes) {
        std::sort(members.begin(), members.end(),
                  [&](std::size_t a, std::size_t b) { return g.edges[a].surrogate < g.edges[b].surrogate; });
        auto& survivor = g.edges[members.front()];
        for (const auto& [slot, fn] : plan.at(std::get<0>(key))) {
            std::vector<Value> values;
            values.reserve(members.size());
            for (auto idx : members) values.push_back(g.edges[idx].label[slot]);
            survivor.label[slot] = aggregate_values(values, fn);
        }
        for (std::size_t k = 1; k < members.size(); ++k) keep[members[k]] = false;
    }
    std::vector<HyperEdge> out;
    out.reserve(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (keep[i]) out.push_back(std::move(g.edges[i]));
    g.edges = std::move(out);
}

const std::set<OpKind> kBreaksDrillDown{OpKind::Dice, OpKind::SDice, OpKind::Slice, OpKind::NDelete,
                                        OpKind::Edgify, OpKind::Expand};

} // namespace

Value aggregate_values(const std::vector<Value>& values, AggregateFn fn) {
    if (fn == AggregateFn::Count) return Value(static_cast<std::int64_t>(values.size()));
    if (values.empty()) throw Error(ErrorCode::UnknownMeasure, "cannot aggregate an empty class");
    for (const auto& v : values)
        if (!v.is_numeric()) throw Error(ErrorCode::TypeMismatch, "measure value " + v.to_string() + " is not numeric");

    switch (fn) {
    case AggregateFn::Min:
    case AggregateFn::Max: {
        Value best = values.front();
        for (const auto& v : values) {
            auto order = compare_in_domain(v, best);
            if (fn == AggregateFn::Min ? order == std::partial_ordering::less : order == std::partial_ordering::greater)
                best = v;
        }
        return best;
    }
    case AggregateFn::Sum:
    case AggregateFn::Avg: {
        bool exact = std::all_of(values.begin(), values.end(), [](const Value& v) { return v.is_integer(); });
        if (exact) {
            std::int64_t sum = 0;
            for (const auto& v : values)
                if (__builtin_add_overflow(sum, v.as_integer(), &sum))
                    throw Error(ErrorCode::Overflow, "integer overflow while summing measures");
            if (fn == AggregateFn::Sum) return Value(sum);
            return Value(static_cast<double>(sum) / static_cast<double>(values.size()));
        }
        double sum = 0;
        for (const auto& v : values) sum += v.as_number();
        if (fn == AggregateFn::Sum) return Value(sum);
        return Value(sum / static_cast<double>(values.size()));
    }
    case AggregateFn::Count: break;
    }
    return Value(static_cast<std::int64_t>(values.size()));
}

Graphoid climb(const Graphoid& g, const TargetSet& targets, const RollupStep& step, ExecPolicy policy) {
    GraphoidData out = g.data();
    climb_in_place(out, targets, step, policy);
    return g.derive(std::move(out), OpKind::Climb);
}

Graphoid minimize(const Graphoid& g) {
    GraphoidData out = g.data();
    minimize_in_place(out);
    return g.derive(std::move(out), OpKind::Minimize);
}

Graphoid group(const Graphoid& g, std::string_view target, const RollupStep& step, ExecPolicy policy) {
    if (!g.data().dims_of(target)) throw Error(ErrorCode::UnknownType, "unknown type " + format_type(target));
    GraphoidData out = g.data();
    climb_in_place(out, TargetSet::of({std::string(target)}), step, policy);
    if (out.is_node_type(target)) minimize_in_place(out);
    return g.derive(std::move(out), OpKind::Group);
}

Graphoid aggr(const Graphoid& g, std::string_view edge_type, const MeasureSpec& measures) {
    GraphoidData out = g.data();
    aggr_in_place(out, edge_type, measures);
    return g.derive(std::move(out), OpKind::Aggr);
}

Graphoid roll_up(const Graphoid& g, const TargetSet& targets, const RollupStep& step, std::string_view edge_type,
                 const MeasureSpec& measures, ExecPolicy policy) {
    GraphoidData out = g.data();
    climb_in_place(out, targets, step, policy);
    aggr_in_place(out, edge_type, measures); // minimizes first
    return g.derive(std::move(out), OpKind::RollUp);
}

Graphoid drill_down(const Graphoid& g, const TargetSet& targets, std::string_view dimension,
                    std::string_view to_level, std::string_view edge_type, const MeasureSpec& measures,
                    ExecPolicy policy) {
    for (auto op : g.history())
        if (kBreaksDrillDown.count(op))
            throw Error(ErrorCode::MissingLineage,
                        std::string("drill-down cannot re-derive across ") + to_string(op) + " in the lineage");
    const Graphoid base = g.base();
    const auto& dim = g.catalog().at(dimension);
    dim.level(to_level);
    for (const auto& type : targets.types)
        if (!g.data().dims_of(type)) throw Error(ErrorCode::UnknownType, "unknown type " + format_type(type));

    GraphoidData out = base.data();
    bool any_target = false;
    for (const auto& [slot, base_level] : base.levels()) {
        const auto* dims = out.dims_of(slot.type);
        const auto& slot_dim = (*dims)[slot.slot];
        std::string wanted;
        if (slot_dim == dimension && targets.contains(slot.type)) {
            wanted = std::string(to_level);
            any_target = true;
            if (!dim.reachable(base_level, wanted))
                throw Error(ErrorCode::CannotRollDown, format_type(slot.type) + " stores " + std::string(dimension) +
                                                           " at " + base_level + " in the base graph; " + wanted +
                                                           " is below it");
        } else {
            auto it = g.levels().find(slot);
            if (it == g.levels().end()) continue;
            wanted = it->second;
        }
        if (wanted != base_level)
            climb_in_place(out, TargetSet::of({slot.type}), RollupStep{slot_dim, base_level, wanted}, policy);
    }
    if (!any_target)
        throw Error(ErrorCode::TargetLacksDimension, "no targeted type carries dimension " + std::string(dimension));
    aggr_in_place(out, edge_type, measures);
    return g.derive(std::move(out), OpKind::DrillDown);
}

std::vector<bool> dice_mask(const Graphoid& g, const Condition& raw) {
    const Condition cond = bind_condition(raw, g.catalog());
    const auto atoms = atoms_of(cond);
    auto atom_index = [&](const Atom& a) {
        return static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), a) - atoms.begin());
    };
    const auto& data = g.data();

    // Every type carrying a level atom's dimension must be able to roll up to it.
    for (const auto& atom : atoms) {
        if (atom.is_measure()) continue;
        const auto& dim = g.catalog().at(atom.dimension);
        for (const auto& type : all_type_names(data)) {
            auto slot = dimensional_slot(data, type, atom.dimension);
            if (!slot) continue;
            const auto& stored = data.levels.at({type, *slot});
            if (!dim.reachable(stored, *atom.level))
                throw Error(ErrorCode::CannotRollDown, "condition " + to_string(atom) + " refers below stored level " +
                                                           atom.dimension + "." + stored + " of " + format_type(type));
        }
    }

    std::unordered_map<NodeId, std::size_t> node_index;
    node_index.reserve(g.nodes().size());
    for (std::size_t i = 0; i < g.nodes().size(); ++i) node_index.emplace(g.nodes()[i].id(), i);

    // Truth of each atom in each node, evaluated once.
    std::vector<std::vector<Truth>> node_truth(atoms.size(), std::vector<Truth>(g.nodes().size()));
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
        const auto& n = g.nodes()[i];
        ElementView view{n.type, data.find_node_type(n.type)->dims, nullptr, n.label};
        for (std::size_t a = 0; a < atoms.size(); ++a) node_truth[a][i] = evaluate_atom(atoms[a], view, g);
    }
    auto not_false = [](Truth t, bool negated) {
        if (t == Truth::Unknown) return true;
        return (t == Truth::True) != negated;
    };

    std::vector<bool> keep(g.edges().size(), false);
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
        const auto& e = g.edges()[k];
        const auto* type = data.find_edge_type(e.type);
        ElementView view{e.type, type->dims, type, e.label};
        const auto adj = adjacency(e);
        auto holds = [&](const Literal& lit) {
            if (!not_false(evaluate_atom(lit.atom, view, g), lit.negated)) return false;
            auto a = atom_index(lit.atom);
            return std::all_of(adj.begin(), adj.end(),
                               [&](NodeId id) { return not_false(node_truth[a][node_index.at(id)], lit.negated); });
        };
        keep[k] = std::any_of(cond.disjuncts.begin(), cond.disjuncts.end(), [&](const Conjunct& c) {
            return std::all_of(c.begin(), c.end(), holds);
        });
    }
    return keep;
}

std::vector<bool> s_dice_mask(const Graphoid& g, const Condition& cond) {
    auto keep = dice_mask(g, cond);
    std::map<NodeSet, bool> group_ok;
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
        auto [it, _] = group_ok.try_emplace(adjacency(g.edges()[k]), true);
        it->second = it->second && keep[k];
    }
    for (std::size_t k = 0; k < g.edges().size(); ++k) keep[k] = group_ok.at(adjacency(g.edges()[k]));
    return keep;
}

namespace {

Graphoid filter_edges(const Graphoid& g, const std::vector<bool>& keep, OpKind op) {
    GraphoidData out = g.data();
    out.edges.clear();
    for (std::size_t k = 0; k < g.edges().size(); ++k)
        if (keep[k]) out.edges.push_back(g.edges()[k]);
    return g.derive(std::move(out), op);
}

} // namespace

Graphoid dice(const Graphoid& g, const Condition& cond) {
    return filter_edges(g, dice_mask(g, cond), OpKind::Dice);
}

Graphoid s_dice(const Graphoid& g, const Condition& cond) {
    return filter_edges(g, s_dice_mask(g, cond), OpKind::SDice);
}

Graphoid slice(const Graphoid& g, std::string_view dimension, const MeasureSpec& measures, ExecPolicy policy) {
    GraphoidData out = g.data();
    bool present = false;
    for (const auto& type : all_type_names(out)) {
        auto slot = dimensional_slot(out, type, dimension);
        if (!slot) continue;
        present = true;
        std::string current = out.levels.at({type, *slot});
        if (current != kAllLevel)
            climb_in_place(out, TargetSet::of({type}), RollupStep{std::string(dimension), current, std::string(kAllLevel)},
                           policy);
    }
    if (!present)
        throw Error(ErrorCode::TargetLacksDimension, "dimension " + std::string(dimension) + " does not appear in the graphoid");
    aggr_in_place(out, kAnyEdgeType, measures);
    return g.derive(std::move(out), OpKind::Slice);
}

Graphoid n_delete(const Graphoid& g, std::string_view node_type) {
    if (!g.data().find_node_type(node_type))
        throw Error(ErrorCode::UnknownType, "unknown node type " + format_type(node_type));
    GraphoidData out = g.data();
    std::unordered_set<NodeId> removed;
    std::vector<Node> kept;
    for (auto& n : out.nodes) {
        if (n.type == node_type) removed.insert(n.id());
        else kept.push_back(std::move(n));
    }
    out.nodes = std::move(kept);
    std::vector<HyperEdge> edges;
    for (auto& e : out.edges) {
        auto strip = [&](NodeSet& ids) {
            ids.erase(std::remove_if(ids.begin(), ids.end(), [&](NodeId id) { return removed.count(id) > 0; }),
                      ids.end());
        };
        strip(e.source);
        strip(e.target);
        if (!e.source.empty() || !e.target.empty()) edges.push_back(std::move(e));
    }
    out.edges = std::move(edges);
    return g.derive(std::move(out), OpKind::NDelete);
}

} // namespace graphoid
