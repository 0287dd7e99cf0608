#include "graphoid/dims.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace graphoid {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string join_report(const ValidationReport& report) {
    return join(report, "; ");
}

// Adjacency over level indices; silently skips edges naming unknown levels.
struct LevelGraph {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::vector<std::size_t>> in;

    explicit LevelGraph(const DimensionSchema& schema) {
        for (const auto& l : schema.levels) names.push_back(l.name);
        out.resize(names.size());
        in.resize(names.size());
        for (const auto& [from, to] : schema.edges) {
            auto f = index(from), t = index(to);
            if (f == npos || t == npos || f == t) continue;
            if (std::find(out[f].begin(), out[f].end(), t) != out[f].end()) continue;
            out[f].push_back(t);
            in[t].push_back(f);
        }
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t index(std::string_view name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return npos;
    }

    // Kahn's algorithm; returns an empty vector when the graph has a cycle.
    std::vector<std::size_t> topological_order() const {
        std::vector<std::size_t> indeg(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) indeg[i] = in[i].size();
        std::deque<std::size_t> ready;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (indeg[i] == 0) ready.push_back(i);
        std::vector<std::size_t> order;
        while (!ready.empty()) {
            auto v = ready.front();
            ready.pop_front();
            order.push_back(v);
            for (auto w : out[v])
                if (--indeg[w] == 0) ready.push_back(w);
        }
        if (order.size() != names.size()) return {};
        return order;
    }

    // closure[i][j]: j reachable from i (reflexive).
    std::vector<std::vector<bool>> closure() const {
        std::size_t n = names.size();
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (std::size_t s = 0; s < n; ++s) {
            std::deque<std::size_t> queue{s};
            reach[s][s] = true;
            while (!queue.empty()) {
                auto v = queue.front();
                queue.pop_front();
                for (auto w : out[v])
                    if (!reach[s][w]) {
                        reach[s][w] = true;
                        queue.push_back(w);
                    }
            }
        }
        return reach;
    }
};

} // namespace

const LevelDecl* DimensionSchema::find_level(std::string_view level) const {
    for (const auto& l : levels)
        if (l.name == level) return &l;
    return nullptr;
}

ValidationReport validate_schema(const DimensionSchema& schema) {
    ValidationReport report;
    std::set<std::string> seen;
    for (const auto& l : schema.levels)
        if (!seen.insert(l.name).second) report.push_back("duplicate level " + l.name);

    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& [from, to] : schema.edges) {
        if (!seen.count(from)) report.push_back("edge " + from + " -> " + to + " names unknown level " + from);
        if (!seen.count(to)) report.push_back("edge " + from + " -> " + to + " names unknown level " + to);
        if (from == to) report.push_back("self-edge on level " + from);
        if (!edges.insert({from, to}).second) report.push_back("duplicate edge " + from + " -> " + to);
    }
    if (schema.levels.size() < 2) report.push_back("schema needs a Bottom level below All");

    LevelGraph graph(schema);
    auto order = graph.topological_order();
    if (order.empty() && !schema.levels.empty()) {
        report.push_back("level graph has a cycle");
        return report;
    }

    std::vector<std::string> tops, bottoms;
    for (std::size_t i = 0; i < graph.names.size(); ++i) {
        if (graph.out[i].empty()) tops.push_back(graph.names[i]);
        if (graph.in[i].empty()) bottoms.push_back(graph.names[i]);
    }
    if (tops.size() > 1) report.push_back("non-unique top: " + join(tops));
    if (tops.size() == 1 && tops.front() != kAllLevel)
        report.push_back("top level must be named All, found " + tops.front());
    if (!schema.find_level(kAllLevel)) report.push_back("missing All level");
    if (bottoms.size() > 1) report.push_back("non-unique bottom: " + join(bottoms));
    if (const auto* all = schema.find_level(kAllLevel); all && all->type != ValueType::String)
        report.push_back("All level must have string type");

    if (!report.empty()) return report;

    // With a unique top and bottom in a finite poset, existence of all joins
    // makes it a lattice.
    auto reach = graph.closure();
    std::size_t n = graph.names.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::vector<std::size_t> upper;
            for (std::size_t c = 0; c < n; ++c)
                if (reach[a][c] && reach[b][c]) upper.push_back(c);
            bool has_least = std::any_of(upper.begin(), upper.end(), [&](std::size_t c) {
                return std::all_of(upper.begin(), upper.end(), [&](std::size_t u) { return reach[c][u]; });
            });
            if (!has_least)
                report.push_back("not a lattice: levels " + graph.names[a] + " and " + graph.names[b] +
                                 " have no least upper bound");
        }
    }
    return report;
}

ValidationReport validate_instance(const DimensionInstance& instance) {
    ValidationReport report;
    for (auto& line : validate_schema(instance.schema)) report.push_back("schema: " + line);
    if (!report.empty()) return report;

    const auto& schema = instance.schema;
    for (const auto& [level, values] : instance.members)
        if (!schema.find_level(level)) report.push_back("members given for unknown level " + level);

    // dom(level) for every level, with All fixed to {all}.
    std::map<std::string, std::set<Value>> dom;
    for (const auto& l : schema.levels) {
        auto& d = dom[l.name];
        auto it = instance.members.find(l.name);
        if (l.name == kAllLevel) {
            if (it != instance.members.end() && !(it->second.size() == 1 && it->second.front().is_all()))
                report.push_back("dom(All) must be exactly {all}");
            d.insert(Value::all());
            continue;
        }
        if (it == instance.members.end() || it->second.empty()) {
            report.push_back("empty level " + l.name);
            continue;
        }
        for (const auto& v : it->second) {
            if (v.type() != l.type)
                report.push_back("member " + v.to_string() + " at level " + l.name + " is not of type " +
                                 to_string(l.type));
            if (!d.insert(v).second) report.push_back("duplicate member " + v.to_string() + " at level " + l.name);
        }
    }

    std::set<std::pair<std::string, std::string>> schema_edges(schema.edges.begin(), schema.edges.end());
    // (child level, parent level) -> child -> parents
    std::map<std::pair<std::string, std::string>, std::map<Value, std::vector<Value>>> parents;
    for (const auto& p : instance.parents) {
        if (!schema_edges.count({p.child_level, p.parent_level})) {
            report.push_back("parent edge " + p.child.to_string() + "@" + p.child_level + " -> " +
                             p.parent.to_string() + "@" + p.parent_level + " has no schema edge " + p.child_level +
                             " -> " + p.parent_level);
            continue;
        }
        if (!dom[p.child_level].count(p.child))
            report.push_back("unknown member " + p.child.to_string() + " at level " + p.child_level);
        if (!dom[p.parent_level].count(p.parent))
            report.push_back("unknown member " + p.parent.to_string() + " at level " + p.parent_level);
        parents[{p.child_level, p.parent_level}][p.child].push_back(p.parent);
    }

    bool functional = true;
    for (const auto& [from, to] : schema.edges) {
        if (to == kAllLevel) continue;
        auto& by_child = parents[{from, to}];
        for (const auto& m : dom[from]) {
            auto it = by_child.find(m);
            std::size_t count = it == by_child.end() ? 0 : it->second.size();
            if (count == 0) {
                functional = false;
                report.push_back("missing parent for " + m.to_string() + " at level " + from + " toward " + to);
            } else if (count > 1) {
                functional = false;
                report.push_back("non-functional roll-up: " + m.to_string() + " at level " + from + " has " +
                                 std::to_string(count) + " parents at level " + to);
            }
        }
    }
    if (!functional || !report.empty()) return report;

    // Soundness: compose parent edges along every schema path from each Bottom member.
    LevelGraph graph(schema);
    std::string bottom;
    for (std::size_t i = 0; i < graph.names.size(); ++i)
        if (graph.in[i].empty()) bottom = graph.names[i];
    for (const auto& m : dom[bottom]) {
        std::map<std::string, Value> reached{{bottom, m}};
        std::deque<std::pair<std::string, Value>> stack{{bottom, m}};
        while (!stack.empty()) {
            auto [level, value] = stack.back();
            stack.pop_back();
            for (auto w : graph.out[graph.index(level)]) {
                const auto& next_level = graph.names[w];
                Value next = next_level == kAllLevel ? Value::all()
                                                     : parents[{level, next_level}].at(value).front();
                auto [it, inserted] = reached.emplace(next_level, next);
                if (!inserted && it->second != next) {
                    report.push_back("unsound: " + m.to_string() + " reaches both " + it->second.to_string() +
                                     " and " + next.to_string() + " at level " + next_level);
                    continue;
                }
                stack.emplace_back(next_level, next);
            }
        }
    }
    return report;
}

Dimension Dimension::build(DimensionInstance instance) {
    auto schema_report = validate_schema(instance.schema);
    if (!schema_report.empty())
        throw Error(ErrorCode::InvalidSchema,
                    "dimension " + instance.schema.name + ": " + join_report(schema_report));
    auto report = validate_instance(instance);
    if (!report.empty())
        throw Error(ErrorCode::InvalidInstance, "dimension " + instance.schema.name + ": " + join_report(report));

    Dimension dim;
    dim.instance_ = std::move(instance);
    const auto& schema = dim.instance_.schema;
    LevelGraph graph(schema);
    for (std::size_t i = 0; i < graph.names.size(); ++i)
        if (graph.in[i].empty()) dim.bottom_ = graph.names[i];

    dim.instance_.members[std::string(kAllLevel)] = {Value::all()};
    for (const auto& [level, values] : dim.instance_.members)
        dim.member_sets_[level] = std::unordered_set<Value>(values.begin(), values.end());

    auto reach = graph.closure();
    for (std::size_t a = 0; a < graph.names.size(); ++a)
        for (std::size_t b = 0; b < graph.names.size(); ++b)
            if (reach[a][b]) dim.reach_.emplace(graph.names[a], graph.names[b]);

    std::map<std::pair<std::string, std::string>, std::unordered_map<Value, Value>> parent_of;
    for (const auto& p : dim.instance_.parents) parent_of[{p.child_level, p.parent_level}][p.child] = p.parent;

    // Walk levels top-down so each level composes its parent's finished mappings.
    auto order = graph.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto& from = graph.names[*it];
        for (const auto& m : dim.instance_.members[from]) {
            dim.rho_[{from, from}][m] = m;
            for (auto w : graph.out[*it]) {
                const auto& parent_level = graph.names[w];
                Value parent = parent_level == kAllLevel ? Value::all() : parent_of[{from, parent_level}].at(m);
                for (std::size_t t = 0; t < graph.names.size(); ++t) {
                    if (!reach[w][t]) continue;
                    dim.rho_[{from, graph.names[t]}].emplace(m, dim.rho_[{parent_level, graph.names[t]}].at(parent));
                }
            }
        }
    }
    return dim;
}

Dimension Dimension::identifier() {
    Dimension dim;
    dim.instance_.schema = DimensionSchema{
        std::string(kIdDimension),
        {LevelDecl{std::string(kIdDimension), ValueType::Integer, true}, LevelDecl{std::string(kAllLevel)}},
        {{std::string(kIdDimension), std::string(kAllLevel)}}};
    dim.instance_.members[std::string(kAllLevel)] = {Value::all()};
    dim.member_sets_[std::string(kAllLevel)] = {Value::all()};
    dim.bottom_ = std::string(kIdDimension);
    dim.identifier_ = true;
    for (auto a : {kIdDimension, kAllLevel})
        for (auto b : {kIdDimension, kAllLevel})
            if (a == b || b == kAllLevel) dim.reach_.emplace(std::string(a), std::string(b));
    return dim;
}

bool Dimension::has_level(std::string_view level) const {
    return schema().find_level(level) != nullptr;
}

const LevelDecl& Dimension::level(std::string_view level) const {
    if (const auto* l = schema().find_level(level)) return *l;
    throw Error(ErrorCode::UnknownLevel, "dimension " + name() + " has no level " + std::string(level));
}

bool Dimension::reachable(std::string_view from, std::string_view to) const {
    return reach_.count(std::pair<std::string, std::string>(from, to)) > 0;
}

bool Dimension::contains(std::string_view level, const Value& member) const {
    if (identifier_ && level == kIdDimension) return member.is_integer();
    auto it = member_sets_.find(level);
    return it != member_sets_.end() && it->second.count(member) > 0;
}

const std::vector<Value>& Dimension::members(std::string_view level) const {
    static const std::vector<Value> none;
    auto it = instance_.members.find(std::string(level));
    return it == instance_.members.end() ? none : it->second;
}

Value Dimension::rollup(std::string_view from, std::string_view to, const Value& member) const {
    level(from);
    level(to);
    if (!reachable(from, to))
        throw Error(ErrorCode::UnreachableLevel, "dimension " + name() + ": level " + std::string(to) +
                                                     " is not reachable from " + std::string(from));
    if (!contains(from, member))
        throw Error(ErrorCode::UnknownMember, "dimension " + name() + ": " + member.to_string() +
                                                  " is not a member of level " + std::string(from));
    if (from == to) return member;
    if (to == kAllLevel) return Value::all();
    return rho_.at({std::string(from), std::string(to)}).at(member);
}

Value rollup(const Dimension& dimension, const RollupStep& step, const Value& member) {
    return dimension.rollup(step.from_level, step.to_level, member);
}

Catalog::Catalog() {
    dims_.emplace(std::string(kIdDimension), Dimension::identifier());
}

void Catalog::add(Dimension dimension) {
    auto name = dimension.name();
    if (!dims_.emplace(name, std::move(dimension)).second)
        throw Error(ErrorCode::DuplicateType, "dimension " + name + " is already in the catalog");
}

const Dimension* Catalog::find(std::string_view name) const {
    auto it = dims_.find(name);
    return it == dims_.end() ? nullptr : &it->second;
}

const Dimension& Catalog::at(std::string_view name) const {
    if (const auto* d = find(name)) return *d;
    throw Error(ErrorCode::UnknownDimension, "unknown dimension " + std::string(name));
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : dims_) out.push_back(name);
    return out;
}

} // namespace graphoid
