#include "graphoid/cubes.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace graphoid {

namespace {

std::size_t dim_index(const Cube& c, std::string_view dimension) {
    for (std::size_t i = 0; i < c.dims.size(); ++i)
        if (c.dims[i].name == dimension) return i;
    throw Error(ErrorCode::UnknownDimension, "cube has no dimension " + std::string(dimension));
}

std::size_t measure_index(const Cube& c, std::string_view measure) {
    for (std::size_t j = 0; j < c.measures.size(); ++j)
        if (c.measures[j].name == measure) return j;
    throw Error(ErrorCode::UnknownMeasure, "cube has no measure " + std::string(measure));
}

std::vector<AggregateFn> resolve_fns(const Cube& c, const MeasureSpec& spec) {
    std::vector<AggregateFn> fns;
    for (const auto& m : c.measures) fns.push_back(m.fn);
    for (const auto& m : spec) fns[measure_index(c, m.measure)] = m.fn;
    return fns;
}

// Full measure list for the graphoid side: every measure, overrides applied.
MeasureSpec full_spec(const Cube& c, const MeasureSpec& spec) {
    auto fns = resolve_fns(c, spec);
    MeasureSpec out;
    for (std::size_t j = 0; j < c.measures.size(); ++j) out.push_back({c.measures[j].name, fns[j]});
    return out;
}

// Moves every dimension to `levels[i]` and merges cells that collide.
// Dimensions whose entry in `drop` is set disappear afterwards.
Cube regroup(const Cube& c, const std::vector<std::string>& levels, const std::vector<AggregateFn>& fns,
             const std::vector<bool>& drop) {
    std::vector<const Dimension*> dims;
    for (std::size_t i = 0; i < c.dims.size(); ++i) {
        const auto& dim = c.catalog->at(c.dims[i].name);
        dim.level(levels[i]);
        if (!dim.reachable(c.dims[i].level, levels[i]))
            throw Error(ErrorCode::CannotRollDown, "dimension " + c.dims[i].name + ": " + levels[i] +
                                                       " is not reachable from " + c.dims[i].level);
        dims.push_back(&dim);
    }
    std::map<Coordinates, std::vector<std::vector<Value>>> groups;
    for (const auto& [coords, values] : c.cells) {
        Coordinates key;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (drop[i]) continue;
            key.push_back(dims[i]->rollup(c.dims[i].level, levels[i], coords[i]));
        }
        auto& columns = groups[key];
        columns.resize(values.size());
        for (std::size_t j = 0; j < values.size(); ++j) columns[j].push_back(values[j]);
    }
    Cube out;
    out.catalog = c.catalog;
    out.measures = c.measures;
    for (std::size_t i = 0; i < c.dims.size(); ++i)
        if (!drop[i]) out.dims.push_back({c.dims[i].name, levels[i]});
    for (auto& [key, columns] : groups) {
        std::vector<Value> values;
        for (std::size_t j = 0; j < columns.size(); ++j) values.push_back(aggregate_values(columns[j], fns[j]));
        out.cells.emplace(key, std::move(values));
    }
    return out;
}

std::string format_coords(const Coordinates& coords) {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + coords[i].to_string();
    return s + ")";
}

std::string format_values(const std::vector<Value>& values) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + values[i].to_string();
    return s + "]";
}

std::vector<std::string> cube_difference(const Cube& expected, const Cube& actual) {
    std::vector<std::string> out;
    auto dims_text = [](const Cube& c) {
        std::string s;
        for (const auto& d : c.dims) s += d.name + "." + d.level + " ";
        return s;
    };
    if (expected.dims != actual.dims)
        out.push_back("dimensions differ: expected " + dims_text(expected) + "got " + dims_text(actual));
    if (expected.measures != actual.measures) out.push_back("measures differ");
    for (const auto& [coords, values] : expected.cells) {
        auto it = actual.cells.find(coords);
        if (it == actual.cells.end())
            out.push_back("missing cell " + format_coords(coords) + " " + format_values(values));
        else if (it->second != values)
            out.push_back("cell " + format_coords(coords) + ": expected " + format_values(values) + ", got " +
                          format_values(it->second));
    }
    for (const auto& [coords, values] : actual.cells)
        if (!expected.cells.count(coords))
            out.push_back("extra cell " + format_coords(coords) + " " + format_values(values));
    return out;
}

} // namespace

ValidationReport validate_cube(const Cube& c) {
    ValidationReport report;
    if (!c.catalog) return {"cube has no catalog"};
    std::set<std::string> names;
    for (const auto& d : c.dims) {
        if (!names.insert(d.name).second) report.push_back("duplicate dimension " + d.name);
        const auto* dim = c.catalog->find(d.name);
        if (!dim) report.push_back("unknown dimension " + d.name);
        else if (!dim->has_level(d.level)) report.push_back("dimension " + d.name + " has no level " + d.level);
        if (d.name == kIdDimension) report.push_back("the Id dimension cannot be a cube axis");
    }
    for (const auto& m : c.measures)
        if (!names.insert(m.name).second) report.push_back("measure name " + m.name + " is already taken");
    if (!report.empty()) return report;
    for (const auto& [coords, values] : c.cells) {
        if (coords.size() != c.dims.size()) {
            report.push_back("cell " + format_coords(coords) + " has the wrong number of coordinates");
            continue;
        }
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (!c.catalog->at(c.dims[i].name).contains(c.dims[i].level, coords[i]))
                report.push_back("cell " + format_coords(coords) + ": " + coords[i].to_string() + " is not in dom(" +
                                 c.dims[i].name + "." + c.dims[i].level + ")");
        if (values.size() != c.measures.size())
            report.push_back("cell " + format_coords(coords) + " has the wrong number of measures");
        for (const auto& v : values)
            if (!v.is_numeric()) report.push_back("cell " + format_coords(coords) + ": non-numeric measure");
    }
    return report;
}

Graphoid star(const Cube& c) {
    if (auto report = validate_cube(c); !report.empty()) throw Error(ErrorCode::InvalidInstance, report.front());
    GraphoidDecls decls;
    std::vector<NodeInput> nodes;
    std::vector<std::map<Value, NodeId>> ids(c.dims.size());
    NodeId next = 11;
    for (std::size_t i = 0; i < c.dims.size(); ++i) {
        const auto& d = c.dims[i];
        decls.node_types.push_back({d.name, {std::string(kIdDimension), d.name}});
        decls.levels[{d.name, 1}] = d.level;
        for (const auto& member : c.catalog->at(d.name).members(d.level)) {
            ids[i][member] = next;
            nodes.push_back({d.name, {Value(next), member}});
            ++next;
        }
    }
    std::vector<EdgeInput> edges;
    for (const auto& m : c.measures) decls.edge_types.push_back({m.name, {m.name}, {{0, m.fn}}});
    for (const auto& [coords, values] : c.cells)
        for (std::size_t j = 0; j < c.measures.size(); ++j) {
            std::vector<NodeId> target;
            for (std::size_t i = 0; i < coords.size(); ++i) target.push_back(ids[i].at(coords[i]));
            edges.push_back({c.measures[j].name, {}, std::move(target), {values[j]}});
        }
    return build_graphoid(c.catalog, std::move(decls), std::move(nodes), std::move(edges));
}

Cube unstar(const Graphoid& g) {
    Cube c;
    c.catalog = g.catalog_ptr();
    std::map<std::string, std::size_t> dim_of_type;
    for (const auto& t : g.node_types()) {
        bool populated = std::any_of(g.nodes().begin(), g.nodes().end(), [&](const Node& n) { return n.type == t.name; });
        if (!populated) continue;
        if (t.dims.size() != 2 || t.dims[1] != t.name)
            throw Error(ErrorCode::MalformedStar, "node type " + format_type(t.name) + " is not a star dimension");
        dim_of_type[t.name] = c.dims.size();
        c.dims.push_back({t.name, g.level({t.name, 1})});
    }
    std::map<std::string, std::size_t> measure_of_type;
    for (const auto& t : g.edge_types()) {
        if (t.dims.size() != 1 || !t.is_measure(0))
            throw Error(ErrorCode::MalformedStar, "edge type " + format_type(t.name) + " is not a star measure");
        measure_of_type[t.name] = c.measures.size();
        c.measures.push_back({t.name, t.measures.at(0)});
    }
    std::map<NodeId, const Node*> nodes;
    for (const auto& n : g.nodes()) nodes[n.id()] = &n;

    std::map<Coordinates, std::vector<std::optional<Value>>> partial;
    for (const auto& e : g.edges()) {
        if (!e.source.empty()) throw Error(ErrorCode::MalformedStar, "measure edge with a non-empty source");
        std::vector<std::optional<Value>> coords(c.dims.size());
        for (auto id : e.target) {
            const Node* n = nodes.at(id);
            auto& slot = coords[dim_of_type.at(n->type)];
            if (slot) throw Error(ErrorCode::MalformedStar, "edge hits two nodes of " + format_type(n->type));
            slot = n->label[1];
        }
        Coordinates key;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (!coords[i]) throw Error(ErrorCode::MalformedStar, "edge misses dimension " + c.dims[i].name);
            key.push_back(*coords[i]);
        }
        auto& values = partial[key];
        values.resize(c.measures.size());
        auto& slot = values[measure_of_type.at(e.type)];
        if (slot) throw Error(ErrorCode::MalformedStar, "two " + format_type(e.type) + " edges at " + format_coords(key));
        slot = e.label[0];
    }
    for (auto& [key, values] : partial) {
        std::vector<Value> row;
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (!values[j]) throw Error(ErrorCode::MalformedStar, "cell " + format_coords(key) + " lacks " + c.measures[j].name);
            row.push_back(*values[j]);
        }
        c.cells.emplace(key, std::move(row));
    }
    return c;
}

Cube cube_roll_up(const Cube& c, const std::string& dimension, const std::string& to_level, const MeasureSpec& measures) {
    auto i = dim_index(c, dimension);
    std::vector<std::string> levels;
    for (const auto& d : c.dims) levels.push_back(d.level);
    levels[i] = to_level;
    return regroup(c, levels, resolve_fns(c, measures), std::vector<bool>(c.dims.size(), false));
}

Cube cube_drill_down(const Cube& base, const Cube& current, const std::string& dimension, const std::string& to_level,
                     const MeasureSpec& measures) {
    if (base.dims.size() != current.dims.size())
        throw Error(ErrorCode::MissingLineage, "cube is not derived from the given base");
    std::vector<std::string> levels;
    for (std::size_t i = 0; i < base.dims.size(); ++i) {
        if (base.dims[i].name != current.dims[i].name)
            throw Error(ErrorCode::MissingLineage, "cube is not derived from the given base");
        levels.push_back(current.dims[i].level);
    }
    levels[dim_index(base, dimension)] = to_level;
    return regroup(base, levels, resolve_fns(base, measures), std::vector<bool>(base.dims.size(), false));
}

Cube cube_slice(const Cube& c, const std::string& dimension, const MeasureSpec& measures) {
    auto i = dim_index(c, dimension);
    std::vector<std::string> levels;
    for (const auto& d : c.dims) levels.push_back(d.level);
    levels[i] = std::string(kAllLevel);
    std::vector<bool> drop(c.dims.size(), false);
    drop[i] = true;
    return regroup(c, levels, resolve_fns(c, measures), drop);
}

Cube cube_dice(const Cube& c, const Condition& raw) {
    const Condition cond = bind_condition(raw, *c.catalog);
    for (const auto& atom : atoms_of(cond)) {
        if (atom.is_measure()) measure_index(c, atom.dimension);
        else dim_index(c, atom.dimension);
    }
    Cube out = c;
    out.cells.clear();
    for (const auto& [coords, values] : c.cells) {
        auto truth = [&](const Atom& atom) {
            if (atom.is_measure()) return compare(values[measure_index(c, atom.dimension)], atom.cmp, atom.constant);
            auto i = dim_index(c, atom.dimension);
            const auto& dim = c.catalog->at(atom.dimension);
            if (!dim.reachable(c.dims[i].level, *atom.level))
                throw Error(ErrorCode::CannotRollDown, "condition " + to_string(atom) + " refers below level " +
                                                           c.dims[i].level);
            return compare(dim.rollup(c.dims[i].level, *atom.level, coords[i]), atom.cmp, atom.constant);
        };
        if (evaluate(cond, truth)) out.cells.emplace(coords, values);
    }
    return out;
}

std::string describe(const CubeOp& op) {
    auto measures = [&] {
        std::string s;
        for (const auto& m : op.measures) s += "; " + m.measure + " " + to_string(m.fn);
        return s;
    };
    switch (op.kind) {
    case CubeOp::Kind::RollUp: return "ROLLUP " + op.dimension + " -> " + op.to_level + measures();
    case CubeOp::Kind::DrillDown:
        return "DRILLDOWN " + op.dimension + " -> " + op.via_level + " -> " + op.to_level + measures();
    case CubeOp::Kind::Slice: return "SLICE " + op.dimension + measures();
    case CubeOp::Kind::Dice: return "SDICE " + to_string(op.condition);
    }
    return "?";
}

std::string EquivalenceReport::to_json_line(std::size_t trial) const {
    nlohmann::json j{{"trial", trial}, {"op", op}, {"equivalent", equivalent}, {"mismatches", mismatches}};
    return j.dump();
}

EquivalenceReport check_equivalence(const Cube& c, const CubeOp& op, ExecPolicy policy) {
    EquivalenceReport report;
    report.op = describe(op);

    std::optional<Cube> expected;
    std::optional<ErrorCode> expected_error;
    std::string expected_message;
    try {
        switch (op.kind) {
        case CubeOp::Kind::RollUp: expected = cube_roll_up(c, op.dimension, op.to_level, op.measures); break;
        case CubeOp::Kind::DrillDown: {
            Cube mid = cube_roll_up(c, op.dimension, op.via_level, op.measures);
            expected = cube_drill_down(c, mid, op.dimension, op.to_level, op.measures);
            break;
        }
        case CubeOp::Kind::Slice: expected = cube_slice(c, op.dimension, op.measures); break;
        case CubeOp::Kind::Dice: expected = cube_dice(c, op.condition); break;
        }
    } catch (const Error& e) {
        expected_error = e.code();
        expected_message = e.what();
    }

    std::optional<Cube> actual;
    std::optional<ErrorCode> actual_error;
    std::string actual_message;
    try {
        const Graphoid g = star(c);
        const auto ms = full_spec(c, op.measures);
        const auto targets = TargetSet::of({op.dimension});
        std::optional<Graphoid> out;
        const auto current = [&] { return c.dims[dim_index(c, op.dimension)].level; };
        switch (op.kind) {
        case CubeOp::Kind::RollUp:
            out = roll_up(g, targets, {op.dimension, current(), op.to_level}, kAnyEdgeType, ms, policy);
            break;
        case CubeOp::Kind::DrillDown: {
            auto mid = roll_up(g, targets, {op.dimension, current(), op.via_level}, kAnyEdgeType, ms, policy);
            out = drill_down(mid, targets, op.dimension, op.to_level, kAnyEdgeType, ms, policy);
            break;
        }
        case CubeOp::Kind::Slice: out = n_delete(slice(g, op.dimension, ms, policy), op.dimension); break;
        case CubeOp::Kind::Dice: out = s_dice(g, op.condition); break;
        }
        actual = unstar(*out);
    } catch (const Error& e) {
        actual_error = e.code();
        actual_message = e.what();
    }

    if (expected && actual) {
        report.mismatches = cube_difference(*expected, *actual);
    } else if (expected_error && actual_error) {
        if (*expected_error != *actual_error)
            report.mismatches.push_back("cube side failed with " + expected_message + ", graphoid side with " +
                                        actual_message);
    } else if (expected_error) {
        report.mismatches.push_back("only the cube side failed: " + expected_message);
    } else {
        report.mismatches.push_back("only the graphoid side failed: " + actual_message);
    }
    report.equivalent = report.mismatches.empty();
    return report;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

} // namespace

Dimension random_dimension(const std::string& name, std::mt19937_64& rng) {
    DimensionInstance inst;
    inst.schema.name = name;
    const bool diamond = coin(rng, 0.25);
    std::vector<std::string> levels = diamond ? std::vector<std::string>{"L0", "La", "Lb", "L2"}
                                              : std::vector<std::string>{"L0", "L1", "L2"};
    if (!diamond) levels.resize(1 + pick(rng, 3));
    for (const auto& l : levels) {
        LevelDecl decl{l, coin(rng) ? ValueType::Integer : ValueType::String, coin(rng, 0.7)};
        inst.schema.levels.push_back(decl);
    }
    inst.schema.levels.push_back(LevelDecl{std::string(kAllLevel)});

    auto make_members = [&](std::size_t level_idx, std::size_t count) {
        const auto& decl = inst.schema.levels[level_idx];
        std::vector<Value> out;
        std::set<std::int64_t> used;
        for (std::size_t k = 0; k < count; ++k) {
            if (decl.type == ValueType::Integer) {
                std::int64_t v;
                do v = std::uniform_int_distribution<std::int64_t>(-20, 60)(rng);
                while (!used.insert(v).second);
                out.emplace_back(v);
            } else {
                out.emplace_back(name + "_" + decl.name + "_" + std::to_string(k));
            }
        }
        inst.members[decl.name] = out;
        return out;
    };
    auto link = [&](const Value& child, const std::string& cl, const Value& parent, const std::string& pl) {
        inst.parents.push_back({child, cl, parent, pl});
    };

    if (!diamond) {
        for (std::size_t i = 0; i + 1 < levels.size(); ++i) inst.schema.edges.push_back({levels[i], levels[i + 1]});
        inst.schema.edges.push_back({levels.back(), std::string(kAllLevel)});
        std::vector<Value> upper;
        for (std::size_t i = levels.size(); i-- > 0;) {
            auto members = make_members(i, 1 + pick(rng, 5));
            if (!upper.empty())
                for (const auto& m : members) link(m, levels[i], upper[pick(rng, upper.size())], levels[i + 1]);
            upper = members;
        }
    } else {
        inst.schema.edges = {{"L0", "La"}, {"L0", "Lb"}, {"La", "L2"}, {"Lb", "L2"}, {"L2", std::string(kAllLevel)}};
        auto tops = make_members(3, 1 + pick(rng, 3));
        auto as = make_members(1, 1 + pick(rng, 5));
        auto bs = make_members(2, tops.size() + pick(rng, 6 - tops.size()));
        std::map<Value, Value> a_top, b_top;
        for (const auto& a : as) {
            a_top[a] = tops[pick(rng, tops.size())];
            link(a, "La", a_top[a], "L2");
        }
        for (std::size_t k = 0; k < bs.size(); ++k) {
            b_top[bs[k]] = k < tops.size() ? tops[k] : tops[pick(rng, tops.size())];
            link(bs[k], "Lb", b_top[bs[k]], "L2");
        }
        for (const auto& m : make_members(0, 1 + pick(rng, 5))) {
            const auto& a = as[pick(rng, as.size())];
            std::vector<Value> compatible;
            for (const auto& b : bs)
                if (b_top[b] == a_top[a]) compatible.push_back(b);
            link(m, "L0", a, "La");
            link(m, "L0", compatible[pick(rng, compatible.size())], "Lb");
        }
    }
    return Dimension::build(std::move(inst));
}

namespace {

std::vector<std::string> levels_above(const Dimension& dim, const std::string& from, bool with_all) {
    std::vector<std::string> out;
    for (const auto& l : dim.schema().levels)
        if (dim.reachable(from, l.name) && (with_all || l.name != kAllLevel)) out.push_back(l.name);
    return out;
}

Atom random_level_atom(const Cube& c, std::mt19937_64& rng) {
    const auto& d = c.dims[pick(rng, c.dims.size())];
    const auto& dim = c.catalog->at(d.name);
    auto levels = levels_above(dim, d.level, false);
    Atom atom;
    atom.dimension = d.name;
    atom.level = levels[pick(rng, levels.size())];
    const auto& decl = dim.level(*atom.level);
    const auto& members = dim.members(*atom.level);
    if (coin(rng, 0.8) || decl.type != ValueType::Integer)
        atom.constant = members[pick(rng, members.size())];
    else
        atom.constant = Value(std::uniform_int_distribution<std::int64_t>(-25, 65)(rng));
    atom.cmp = decl.ordered ? static_cast<Comparator>(pick(rng, 3)) : Comparator::Equal;
    return atom;
}

BoolExpr random_expr(const Cube& c, const std::string& measure, std::mt19937_64& rng, int depth) {
    if (depth == 0 || coin(rng, 0.35)) {
        if (coin(rng, 0.3)) {
            Atom atom;
            atom.dimension = measure;
            atom.cmp = static_cast<Comparator>(pick(rng, 3));
            atom.constant = Value(std::uniform_int_distribution<std::int64_t>(0, 100)(rng));
            return BoolExpr::make_atom(atom);
        }
        return BoolExpr::make_atom(random_level_atom(c, rng));
    }
    switch (pick(rng, 3)) {
    case 0: return BoolExpr::make_not(random_expr(c, measure, rng, depth - 1));
    case 1: return BoolExpr::make_and({random_expr(c, measure, rng, depth - 1), random_expr(c, measure, rng, depth - 1)});
    default: return BoolExpr::make_or({random_expr(c, measure, rng, depth - 1), random_expr(c, measure, rng, depth - 1)});
    }
}

} // namespace

Cube random_cube(std::mt19937_64& rng) {
    auto catalog = std::make_shared<Catalog>();
    Cube c;
    const std::size_t d = 1 + pick(rng, 4);
    for (std::size_t i = 0; i < d; ++i) {
        auto dim = random_dimension("D" + std::to_string(i), rng);
        c.dims.push_back({dim.name(), dim.bottom()});
        catalog->add(std::move(dim));
    }
    const std::size_t m = 1 + pick(rng, 2);
    for (std::size_t j = 0; j < m; ++j)
        c.measures.push_back({"M" + std::to_string(j), static_cast<AggregateFn>(pick(rng, 4))});
    c.catalog = catalog;

    // Random subset of the bottom-level coordinate space.
    const double density = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    std::vector<const std::vector<Value>*> axes;
    for (const auto& cd : c.dims) axes.push_back(&catalog->at(cd.name).members(cd.level));
    std::vector<std::size_t> odometer(d, 0);
    while (true) {
        if (coin(rng, density)) {
            Coordinates coords;
            for (std::size_t i = 0; i < d; ++i) coords.push_back((*axes[i])[odometer[i]]);
            std::vector<Value> values;
            for (std::size_t j = 0; j < m; ++j) values.emplace_back(std::uniform_int_distribution<std::int64_t>(0, 100)(rng));
            c.cells.emplace(std::move(coords), std::move(values));
        }
        std::size_t i = 0;
        while (i < d && ++odometer[i] == axes[i]->size()) odometer[i++] = 0;
        if (i == d) break;
    }
    // Some cubes start above their bottom levels.
    for (std::size_t i = 0; i < d; ++i)
        if (coin(rng, 0.3)) {
            auto levels = levels_above(catalog->at(c.dims[i].name), c.dims[i].level, false);
            c = cube_roll_up(c, c.dims[i].name, levels[pick(rng, levels.size())]);
        }
    return c;
}

CubeOp random_cube_op(const Cube& c, std::mt19937_64& rng) {
    CubeOp op;
    std::vector<CubeOp::Kind> kinds{CubeOp::Kind::RollUp, CubeOp::Kind::DrillDown, CubeOp::Kind::Dice};
    // Slicing the only dimension of a cube leaves nothing for n-delete to keep.
    if (c.dims.size() >= 2) kinds.push_back(CubeOp::Kind::Slice);
    op.kind = kinds[pick(rng, kinds.size())];
    const auto& d = c.dims[pick(rng, c.dims.size())];
    const auto& dim = c.catalog->at(d.name);
    op.dimension = d.name;
    for (const auto& m : c.measures) op.measures.push_back({m.name, static_cast<AggregateFn>(pick(rng, 4))});

    switch (op.kind) {
    case CubeOp::Kind::RollUp: {
        auto levels = levels_above(dim, d.level, true);
        op.to_level = levels[pick(rng, levels.size())];
        break;
    }
    case CubeOp::Kind::DrillDown: {
        auto vias = levels_above(dim, d.level, true);
        op.via_level = vias[pick(rng, vias.size())];
        std::vector<std::string> below;
        for (const auto& l : levels_above(dim, d.level, true))
            if (dim.reachable(l, op.via_level)) below.push_back(l);
        op.to_level = below[pick(rng, below.size())];
        break;
    }
    case CubeOp::Kind::Slice: break;
    case CubeOp::Kind::Dice: {
        const auto& measure = c.measures[pick(rng, c.measures.size())].name;
        op.condition = to_dnf(random_expr(c, measure, rng, 3));
        op.measures.clear();
        break;
    }
    }
    return op;
}

HarnessResult run_theorem1(std::size_t trials, std::uint64_t seed, ExecPolicy policy) {
    HarnessResult result;
    result.trials = trials;
    result.reports.resize(trials);
    parallel_for(trials, policy.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
            std::mt19937_64 rng(seq);
            try {
                Cube c = random_cube(rng);
                CubeOp op = random_cube_op(c, rng);
                result.reports[i] = check_equivalence(c, op);
            } catch (const Error& e) {
                result.reports[i].op = "setup";
                result.reports[i].mismatches.push_back(e.what());
            }
        }
    });
    for (const auto& r : result.reports) result.equivalent += r.equivalent ? 1 : 0;
    return result;
}

} // namespace graphoid
