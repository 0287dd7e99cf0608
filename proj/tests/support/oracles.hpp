#pragma once
// Brute-force reference computations, written without the library's
// operation algebra.

#include "graphoid/store.hpp"

#include <map>
#include <vector>

namespace graphoid::testing {

// Average call duration per n-element set of distinct `level` members among
// each call's phones, by direct enumeration of the call records.
std::map<std::vector<Value>, double> flat_group_averages(const std::vector<CallRecord>& calls, const Catalog& catalog,
                                                         const std::string& level, std::size_t n);

struct AllPairs {
    std::vector<NodeId> ids; // sorted
    std::vector<std::vector<std::int64_t>> dist; // -1 when unreachable
    std::vector<std::vector<bool>> adjacent;

    std::size_t index(NodeId id) const;
    std::int64_t hops(NodeId u, NodeId v) const { return dist[index(u)][index(v)]; }
    // Lexicographically smallest shortest path, by greedy descent on dist.
    std::vector<NodeId> witness(NodeId u, NodeId v) const;
};

// Floyd-Warshall over the co-occurrence graph of every edge.
AllPairs floyd_warshall(const Graphoid& g);

} // namespace graphoid::testing
