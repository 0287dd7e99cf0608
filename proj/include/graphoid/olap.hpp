#pragma once
// The OLAP operation algebra over graphoids. Every operation is a pure
// function: the input is never modified and the result records the operation
// in its lineage.

#include "graphoid/condition.hpp"
#include "graphoid/hypergraph.hpp"
#include "graphoid/parallel.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace graphoid {

// Node and edge types an operation applies to, or every type ("*").
struct TargetSet {
    bool wildcard = false;
    std::vector<std::string> types;

    static TargetSet all() { return TargetSet{true, {}}; }
    static TargetSet of(std::vector<std::string> types) { return TargetSet{false, std::move(types)}; }
    bool contains(std::string_view type) const;

    friend bool operator==(const TargetSet&, const TargetSet&) = default;
};

struct MeasureAgg {
    std::string measure; // dimension name of a measure slot
    AggregateFn fn = AggregateFn::Sum;

    friend bool operator==(const MeasureAgg&, const MeasureAgg&) = default;
};

using MeasureSpec = std::vector<MeasureAgg>;

inline constexpr std::string_view kAnyEdgeType = "*";

// Replaces step.dimension values at step.from_level by their roll-up at
// step.to_level in every targeted node and edge. A wildcard skips types that
// do not carry the dimension.
Graphoid climb(const Graphoid& g, const TargetSet& targets, const RollupStep& step, ExecPolicy policy = {});

// Contracts nodes whose labels agree apart from the identifier onto the one
// with the smallest identifier and redirects edge endpoints. |E| is preserved.
Graphoid minimize(const Graphoid& g);

// Node targets: minimize(climb). Edge targets: climb.
Graphoid group(const Graphoid& g, std::string_view target, const RollupStep& step, ExecPolicy policy = {});

// Merges edges of `edge_type` ("*" for every type carrying one of the
// measures) that share source, target and label outside the aggregated
// measures and any Id slot. Non-minimal input is minimized first.
Graphoid aggr(const Graphoid& g, std::string_view edge_type, const MeasureSpec& measures);

// aggr(minimize(climb(g, targets, step)), edge_type, measures)
Graphoid roll_up(const Graphoid& g, const TargetSet& targets, const RollupStep& step, std::string_view edge_type,
                 const MeasureSpec& measures, ExecPolicy policy = {});

// Re-derives from the lineage base: targeted slots of `dimension` climb from
// the base level straight to `to_level`, every other slot back to its current
// level, then minimize and aggr. Rejects lineages containing dice, s-dice,
// slice, n-delete or edgify.
Graphoid drill_down(const Graphoid& g, const TargetSet& targets, std::string_view dimension,
                    std::string_view to_level, std::string_view edge_type, const MeasureSpec& measures,
                    ExecPolicy policy = {});

// Keeps the edges satisfying `cond` in the "not false" sense: every literal of
// some conjunct is not false in the edge and in each adjacent node.
Graphoid dice(const Graphoid& g, const Condition& cond);

// Like dice, but an edge also goes when any edge with the same adjacency set goes.
Graphoid s_dice(const Graphoid& g, const Condition& cond);

// Roll-up of `dimension` to All in every type, then aggregation over every edge type.
Graphoid slice(const Graphoid& g, std::string_view dimension, const MeasureSpec& measures, ExecPolicy policy = {});

// Removes nodes of `node_type` and strips them from every endpoint set; edges
// left with no adjacent node are dropped.
Graphoid n_delete(const Graphoid& g, std::string_view node_type);

// Per-edge keep flags of dice / s_dice, in edge order.
std::vector<bool> dice_mask(const Graphoid& g, const Condition& cond);
std::vector<bool> s_dice_mask(const Graphoid& g, const Condition& cond);

// Aggregates a class of measure values. Integer inputs stay exact.
Value aggregate_values(const std::vector<Value>& values, AggregateFn fn);

} // namespace graphoid
