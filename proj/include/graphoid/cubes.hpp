#pragma once
// Classical data cubes, their star-graphoid encoding and the cube-side OLAP
// operations used as an oracle for the graphoid algebra.

#include "graphoid/olap.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace graphoid {

struct CubeDim {
    std::string name;  // dimension in the catalog
    std::string level; // current level of the coordinates

    friend bool operator==(const CubeDim&, const CubeDim&) = default;
};

struct CubeMeasure {
    std::string name;
    AggregateFn fn = AggregateFn::Sum;

    friend bool operator==(const CubeMeasure&, const CubeMeasure&) = default;
};

using Coordinates = std::vector<Value>;

struct Cube {
    CatalogPtr catalog;
    std::vector<CubeDim> dims;
    std::vector<CubeMeasure> measures;
    std::map<Coordinates, std::vector<Value>> cells;

    // Compares everything except the catalog pointer.
    friend bool operator==(const Cube& a, const Cube& b) {
        return a.dims == b.dims && a.measures == b.measures && a.cells == b.cells;
    }
};

ValidationReport validate_cube(const Cube& c);

// One [#D, id, a] node per member of each dimension's current level, ids from
// 11 upward in dimension order then member order; per cell and measure one
// edge of type #mu with empty source, the coordinate nodes as target and the
// measure value as label.
Graphoid star(const Cube& c);

// Inverse of star. Dimensions are the node types that still have nodes, in
// declaration order. Throws Error(MalformedStar) when an edge does not hit
// exactly one node per dimension or two edges of a measure share coordinates.
Cube unstar(const Graphoid& g);

// Measures not listed keep their cube's default aggregate function.
Cube cube_roll_up(const Cube& c, const std::string& dimension, const std::string& to_level,
                  const MeasureSpec& measures = {});
// Re-derives from `base`: `dimension` rolled to `to_level`, every other
// dimension to its level in `current`.
Cube cube_drill_down(const Cube& base, const Cube& current, const std::string& dimension, const std::string& to_level,
                     const MeasureSpec& measures = {});
// Roll-up to All, then the dimension is dropped.
Cube cube_slice(const Cube& c, const std::string& dimension, const MeasureSpec& measures = {});
// Cells satisfying cond, two-valued, coordinates rolled up to atom levels.
Cube cube_dice(const Cube& c, const Condition& cond);

struct CubeOp {
    enum class Kind { RollUp, DrillDown, Slice, Dice };
    Kind kind = Kind::RollUp;
    std::string dimension;
    std::string to_level;
    std::string via_level; // drill-down: the level rolled up to first
    MeasureSpec measures;
    Condition condition;
};

std::string describe(const CubeOp& op);

struct EquivalenceReport {
    std::string op;
    bool equivalent = false;
    std::vector<std::string> mismatches; // also carries errors raised by either side

    std::string to_json_line(std::size_t trial) const;
};

// Runs `op` on the cube and the matching pipeline on star(c), then compares
// the classical result with unstar of the graphoid result.
EquivalenceReport check_equivalence(const Cube& c, const CubeOp& op, ExecPolicy policy = {});

// Random sound dimension: a chain of one to three levels below All, or a
// diamond L0 -> {La, Lb} -> L2 -> All; at most 5 members per level.
Dimension random_dimension(const std::string& name, std::mt19937_64& rng);

// Random cube over a fresh random catalog: up to 4 dimensions with chain or
// diamond level lattices, up to 5 members per level, 1 or 2 integer measures.
Cube random_cube(std::mt19937_64& rng);
// Random op for the cube. Dice conditions constrain at most one measure.
CubeOp random_cube_op(const Cube& c, std::mt19937_64& rng);

struct HarnessResult {
    std::size_t trials = 0;
    std::size_t equivalent = 0;
    std::vector<EquivalenceReport> reports;
};

// `trials` independent (cube, op) trials; trial i is seeded from (seed, i), so
// results do not depend on the worker count.
HarnessResult run_theorem1(std::size_t trials, std::uint64_t seed, ExecPolicy policy = {});

} // namespace graphoid
