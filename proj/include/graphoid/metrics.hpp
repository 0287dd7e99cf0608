#pragma once
// Graph metrics over a graphoid: the undirected co-occurrence projection of
// its hyperedges and filtered all-pairs shortest paths on it.

#include "graphoid/olap.hpp"

#include <optional>
#include <string>
#include <vector>

namespace graphoid {

// Nodes of one type, optionally restricted by a condition over node-level atoms.
struct NodeFilter {
    std::string node_type;
    std::optional<Condition> condition;
};

// Simple undirected graph over node identifiers: u and v are adjacent iff
// both belong to Adj(e) for some edge e of a traversed type, u != v.
struct Projection {
    std::vector<NodeId> ids;                     // sorted
    std::vector<std::vector<std::size_t>> adj;   // neighbour indices, sorted

    std::optional<std::size_t> index_of(NodeId id) const;
    // Every adjacent pair (u, v) with u < v, sorted.
    std::vector<std::pair<NodeId, NodeId>> pairs() const;
};

Projection adjacency_projection(const Graphoid& g, const TargetSet& via = TargetSet::all());

struct PathResult {
    NodeId source = 0;
    NodeId target = 0;
    std::int64_t hops = -1;     // -1 when unreachable
    std::vector<NodeId> path;   // hops + 1 identifiers; empty when unreachable

    friend bool operator==(const PathResult&, const PathResult&) = default;
};

// Identifiers of the nodes matching the filter, sorted.
std::vector<NodeId> filter_nodes(const Graphoid& g, const NodeFilter& filter);

// One result per (u, v), u matching `from`, v matching `to`, u != v, ordered by
// (source, target). The witness is the lexicographically smallest shortest path.
std::vector<PathResult> shortest_paths(const Graphoid& g, const NodeFilter& from, const NodeFilter& to,
                                       const TargetSet& via = TargetSet::all(), ExecPolicy policy = {});

// CSV with header source,target,hops,path.
std::string paths_to_csv(const std::vector<PathResult>& results);

// Replaces every edge of `edge_type` by one edge per n-element subset of its
// adjacency set, with empty source and the subset as target, keeping the
// label. Edges adjacent to fewer than n nodes disappear. Other types are kept.
Graphoid expand_groups(const Graphoid& g, std::string_view edge_type, std::size_t n);

struct GroupAverage {
    std::vector<Value> members; // sorted
    double average = 0;
};

// Average of `measure` over the edges of `edge_type`, per n-element group of
// distinct adjacent members after nodes of `node_type` climb by `step`:
// the other edge attributes climb to All, nodes are grouped, edges expanded
// into their n-subsets and aggregated with AVG. Sorted by members.
std::vector<GroupAverage> group_averages(const Graphoid& g, std::string_view node_type, const RollupStep& step,
                                         std::string_view edge_type, const std::string& measure, std::size_t n,
                                         ExecPolicy policy = {});

} // namespace graphoid
