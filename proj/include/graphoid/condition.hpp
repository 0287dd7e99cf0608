#pragma once
// Boolean conditions over dimension levels and measures, kept in disjunctive
// normal form. Atoms evaluate three-valued against a labelled element: an atom
// whose dimension the element does not carry is Unknown, which counts as "not
// false".

#include "graphoid/hypergraph.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace graphoid {

enum class Comparator { Less, Equal, Greater };

const char* to_string(Comparator cmp);

struct Atom {
    std::string dimension;
    // Level atoms name a level (Dim.Level cmp c); measure atoms leave it empty.
    std::optional<std::string> level;
    Comparator cmp = Comparator::Equal;
    Value constant;

    bool is_measure() const { return !level.has_value(); }
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
    Atom atom;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

using Conjunct = std::vector<Literal>;

struct Condition {
    std::vector<Conjunct> disjuncts;

    friend bool operator==(const Condition&, const Condition&) = default;
};

// Formula tree as written, before normalization.
struct BoolExpr {
    enum class Kind { Atom, Not, And, Or };
    Kind kind = Kind::Atom;
    Atom atom;
    std::vector<BoolExpr> children;

    static BoolExpr make_atom(Atom a) { return BoolExpr{Kind::Atom, std::move(a), {}}; }
    static BoolExpr make_not(BoolExpr x) { return BoolExpr{Kind::Not, {}, {std::move(x)}}; }
    static BoolExpr make_and(std::vector<BoolExpr> xs) { return BoolExpr{Kind::And, {}, std::move(xs)}; }
    static BoolExpr make_or(std::vector<BoolExpr> xs) { return BoolExpr{Kind::Or, {}, std::move(xs)}; }
};

inline constexpr std::size_t kMaxConjuncts = 4096;

// Pushes negation onto atoms and distributes AND over OR. Order-preserving;
// duplicate literals within a conjunct and duplicate conjuncts are dropped.
// Throws Error(Parse) past kMaxConjuncts.
Condition to_dnf(const BoolExpr& expr);

// Two-valued evaluation under an assignment of atom truth values.
bool evaluate(const BoolExpr& expr, const std::function<bool(const Atom&)>& truth);
bool evaluate(const Condition& cond, const std::function<bool(const Atom&)>& truth);

std::vector<Atom> atoms_of(const Condition& cond);

// Canonical text, as accepted by the query parser.
std::string to_string(const Atom& atom);
std::string to_string(const Condition& cond);
std::string quote_string(const std::string& s);

bool compare(const Value& lhs, Comparator cmp, const Value& rhs);

// Resolves dimensions and levels against the catalog, coerces level-atom
// constants to the level's value type and rejects < and > on unordered levels.
Condition bind_condition(const Condition& cond, const Catalog& catalog);

enum class Truth { False, True, Unknown };

// A node or edge seen through its type declaration.
struct ElementView {
    const std::string& type;
    const std::vector<std::string>& dims;
    const EdgeTypeDecl* edge; // nullptr for nodes
    const std::vector<Value>& label;
};

// Atom truth in one element. Level atoms above the stored level are evaluated
// on the rolled-up value; below it they throw Error(CannotRollDown).
Truth evaluate_atom(const Atom& atom, const ElementView& element, const Graphoid& g);

} // namespace graphoid
