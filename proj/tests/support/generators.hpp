#pragma once
// Hand-rolled random generators for the property tests.

#include "graphoid/gql.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace graphoid::testing {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n);
bool coin(Rng& rng, double p = 0.5);

// Fresh catalog with random dimensions A, B and C.
CatalogPtr random_catalog(Rng& rng);

struct RandomGraphOptions {
    std::size_t max_nodes = 24;
    std::size_t max_edges = 40;
};

// Node types N0[, N1] and edge types E0[, E1] over A, B, C with measures W
// (and sometimes V). Member domains are small, so many labels coincide up to
// the identifier; about a quarter of the edges duplicate an earlier one.
Graphoid random_graphoid(Rng& rng, const RandomGraphOptions& options = {});
Graphoid random_graphoid(Rng& rng, CatalogPtr catalog, const RandomGraphOptions& options = {});

// Same nodes and edge bag, listed in a random order.
Graphoid shuffled(const Graphoid& g, Rng& rng);

struct ClimbSpec {
    TargetSet targets;
    RollupStep step;
};

// A climb of one dimensional non-Id slot of one type to a level reachable
// from its current one (possibly the same level). None when no slot exists.
std::optional<ClimbSpec> random_climb(const Graphoid& g, Rng& rng);

// Formula over atoms drawn from `pool`, using at most max_atoms distinct ones.
BoolExpr random_bool_expr(Rng& rng, const std::vector<Atom>& pool, int max_depth);
// Atoms with identifiers that never collide with keywords.
std::vector<Atom> random_atom_pool(Rng& rng, std::size_t size);

// Program of binding and output statements; every condition is already in
// DNF. The formulas the conditions came from are appended to `formulas`.
Program random_program(Rng& rng, std::vector<BoolExpr>* formulas = nullptr);

} // namespace graphoid::testing
