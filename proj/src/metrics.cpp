#include "graphoid/metrics.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace graphoid {

std::optional<std::size_t> Projection::index_of(NodeId id) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
}

std::vector<std::pair<NodeId, NodeId>> Projection::pairs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (std::size_t u = 0; u < adj.size(); ++u)
        for (auto v : adj[u])
            if (u < v) out.emplace_back(ids[u], ids[v]);
    return out;
}

Projection adjacency_projection(const Graphoid& g, const TargetSet& via) {
    for (const auto& t : via.types)
        if (!g.data().find_edge_type(t)) throw Error(ErrorCode::UnknownType, "unknown edge type " + format_type(t));

    Projection p;
    for (const auto& n : g.nodes()) p.ids.push_back(n.id());
    std::sort(p.ids.begin(), p.ids.end());
    p.adj.resize(p.ids.size());
    for (const auto& e : g.edges()) {
        if (!via.contains(e.type)) continue;
        auto members = adjacency(e);
        std::vector<std::size_t> idx;
        for (auto id : members) idx.push_back(*p.index_of(id));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                p.adj[idx[a]].push_back(idx[b]);
                p.adj[idx[b]].push_back(idx[a]);
            }
    }
    for (auto& list : p.adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return p;
}

std::vector<NodeId> filter_nodes(const Graphoid& g, const NodeFilter& filter) {
    const auto* type = g.data().find_node_type(filter.node_type);
    if (!type) throw Error(ErrorCode::UnknownType, "unknown node type " + format_type(filter.node_type));
    std::optional<Condition> cond;
    if (filter.condition) {
        cond = bind_condition(*filter.condition, g.catalog());
        for (const auto& atom : atoms_of(*cond)) {
            if (atom.is_measure())
                throw Error(ErrorCode::UnknownMeasure, "node filters cannot test measure " + atom.dimension);
            if (!slot_of(type->dims, atom.dimension))
                throw Error(ErrorCode::TargetLacksDimension,
                            format_type(type->name) + " has no attribute of dimension " + atom.dimension);
        }
    }
    std::vector<NodeId> out;
    for (const auto& n : g.nodes()) {
        if (n.type != filter.node_type) continue;
        if (cond) {
            ElementView view{n.type, type->dims, nullptr, n.label};
            bool ok = std::any_of(cond->disjuncts.begin(), cond->disjuncts.end(), [&](const Conjunct& c) {
                return std::all_of(c.begin(), c.end(), [&](const Literal& lit) {
                    return (evaluate_atom(lit.atom, view, g) == Truth::True) != lit.negated;
                });
            });
            if (!ok) continue;
        }
        out.push_back(n.id());
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Single-source BFS. Neighbours are visited in ascending order, so the first
// parent found yields the lexicographically smallest shortest path.
void bfs(const Projection& p, std::size_t source, std::vector<std::int64_t>& dist, std::vector<std::size_t>& parent) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[source] = 0;
    parent[source] = source;
    std::deque<std::size_t> queue{source};
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto v : p.adj[u]) {
            if (dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            parent[v] = u;
            queue.push_back(v);
        }
    }
}

} // namespace

std::vector<PathResult> shortest_paths(const Graphoid& g, const NodeFilter& from, const NodeFilter& to,
                                       const TargetSet& via, ExecPolicy policy) {
    const auto sources = filter_nodes(g, from);
    const auto targets = filter_nodes(g, to);
    const auto p = adjacency_projection(g, via);

    std::vector<std::vector<PathResult>> per_source(sources.size());
    parallel_for(sources.size(), policy.workers, [&](std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> dist(p.ids.size());
        std::vector<std::size_t> parent(p.ids.size());
        for (std::size_t s = begin; s < end; ++s) {
            const auto src = *p.index_of(sources[s]);
            bfs(p, src, dist, parent);
            for (auto target : targets) {
                if (target == sources[s]) continue;
                PathResult r{sources[s], target, -1, {}};
                const auto t = *p.index_of(target);
                if (dist[t] >= 0) {
                    r.hops = dist[t];
                    for (auto v = t;; v = parent[v]) {
                        r.path.push_back(p.ids[v]);
                        if (v == src) break;
                    }
                    std::reverse(r.path.begin(), r.path.end());
                }
                per_source[s].push_back(std::move(r));
            }
        }
    });
    std::vector<PathResult> out;
    for (auto& chunk : per_source) std::move(chunk.begin(), chunk.end(), std::back_inserter(out));
    return out;
}

std::string paths_to_csv(const std::vector<PathResult>& results) {
    std::ostringstream out;
    out << "source,target,hops,path\n";
    for (const auto& r : results) {
        out << r.source << ',' << r.target << ',' << r.hops << ',';
        for (std::size_t i = 0; i < r.path.size(); ++i) out << (i ? "/" : "") << r.path[i];
        out << '\n';
    }
    return out.str();
}

Graphoid expand_groups(const Graphoid& g, std::string_view edge_type, std::size_t n) {
    if (!g.data().find_edge_type(edge_type))
        throw Error(ErrorCode::UnknownType, "unknown edge type " + format_type(edge_type));
    if (n == 0) throw Error(ErrorCode::ArityMismatch, "group size must be positive");

    GraphoidData out = g.data();
    out.edges.clear();
    for (const auto& e : g.edges()) {
        if (e.type != edge_type) {
            out.edges.push_back(e);
            continue;
        }
        const auto adj = adjacency(e);
        if (adj.size() < n) continue;
        // Walk the n-subsets in lexicographic order via a selection mask.
        std::vector<bool> pick(adj.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
        do {
            NodeSet subset;
            for (std::size_t i = 0; i < adj.size(); ++i)
                if (pick[i]) subset.push_back(adj[i]);
            out.append_edge({}, std::move(subset), e.type, e.label);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return g.derive(std::move(out), OpKind::Expand);
}

std::vector<GroupAverage> group_averages(const Graphoid& g, std::string_view node_type, const RollupStep& step,
                                         std::string_view edge_type, const std::string& measure, std::size_t n,
                                         ExecPolicy policy) {
    const auto* edge = g.data().find_edge_type(edge_type);
    if (!edge) throw Error(ErrorCode::UnknownType, "unknown edge type " + format_type(edge_type));
    const auto* node = g.data().find_node_type(node_type);
    if (!node) throw Error(ErrorCode::UnknownType, "unknown node type " + format_type(node_type));
    auto member_slot = slot_of(node->dims, step.dimension);
    if (!member_slot) throw Error(ErrorCode::TargetLacksDimension, format_type(node_type) + " has no " + step.dimension);

    Graphoid current = g;
    const std::string edge_name(edge_type);
    for (std::size_t s = 0; s < edge->dims.size(); ++s) {
        if (edge->is_measure(s)) continue;
        const auto& level = current.level({edge_name, s});
        if (level != kAllLevel)
            current = climb(current, TargetSet::of({edge_name}), {edge->dims[s], level, std::string(kAllLevel)}, policy);
    }
    current = step.from_level == step.to_level ? minimize(current) : group(current, node_type, step, policy);
    current = expand_groups(current, edge_type, n);
    current = aggr(current, edge_type, {{measure, AggregateFn::Avg}});

    const auto measure_slot = *slot_of(edge->dims, measure);
    std::map<NodeId, Value> member_of;
    for (const auto& nd : current.nodes())
        if (nd.type == node_type) member_of.emplace(nd.id(), nd.label[*member_slot]);
    std::vector<GroupAverage> out;
    for (const auto& e : current.edges()) {
        if (e.type != edge_type) continue;
        GroupAverage row;
        for (auto id : adjacency(e)) row.members.push_back(member_of.at(id));
        std::sort(row.members.begin(), row.members.end());
        row.average = e.label[measure_slot].as_number();
        out.push_back(std::move(row));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.members < b.members; });
    return out;
}

} // namespace graphoid
