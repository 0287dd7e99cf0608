#pragma once
// A small query language over graphoids.
//
//   program   := stmt*
//   stmt      := NAME "=" expr ";" | "OUTPUT" expr ["AS" ("JSON" | "CSV")] ";"
//   expr      := OP "(" args ")" | NAME | "LOAD" STRING
//   targets   := "*" | "{" TYPE ("," TYPE)* "}"
//   step      := DIM ":" LEVEL "->" LEVEL
//   measures  := MEASURE "," FN ("," MEASURE "," FN)*
//   cond      := disjunctions of conjunctions of [NOT] atoms, parentheses allowed
//   atom      := DIM "." LEVEL CMP literal | MEASURE CMP literal,  CMP in < = >
//
//   CLIMB(G, targets, step)              MINIMIZE(G)
//   GROUP(G, TYPE, step)                 AGGR(G, TYPE|*, measures)
//   ROLLUP(G, targets, step; TYPE|*, measures)
//   DRILLDOWN(G, targets, step; TYPE|*, measures)
//   SLICE(G, DIM; measures)              DICE(G, cond)    SDICE(G, cond)
//   NDELETE(G, TYPE)                     EDGIFY(G, TYPE, DIM | slot)
//   SHORTESTPATHS(G, TYPE [WHERE cond], TYPE [WHERE cond] [, targets])
//
// Keywords are case-insensitive, TYPE is written with its '#', strings are
// double-quoted and "--" starts a comment. Conditions are kept in DNF.

#include "graphoid/metrics.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace graphoid {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

enum class OpName { Climb, Minimize, Group, Aggr, RollUp, DrillDown, Slice, Dice, SDice, NDelete, Edgify, ShortestPaths };

const char* to_string(OpName op);

struct Expr {
    enum class Kind { Op, Name, Load };
    Kind kind = Kind::Name;
    SourcePos pos;
    std::string name; // binding name (Name) or path (Load)

    OpName op = OpName::Minimize;
    std::vector<Expr> input; // the graph argument of an Op, exactly one
    TargetSet targets;       // CLIMB, ROLLUP, DRILLDOWN; SHORTESTPATHS when has_via
    bool has_via = false;
    RollupStep step;         // CLIMB, GROUP, ROLLUP, DRILLDOWN
    std::string type;        // GROUP, AGGR/ROLLUP/DRILLDOWN edge type, NDELETE, EDGIFY, SHORTESTPATHS source
    std::string to_type;     // SHORTESTPATHS target
    MeasureSpec measures;    // AGGR, ROLLUP, DRILLDOWN, SLICE
    std::string dimension;   // SLICE, EDGIFY by dimension
    std::optional<std::size_t> slot; // EDGIFY by slot index
    std::optional<Condition> condition; // DICE, SDICE, SHORTESTPATHS source filter
    std::optional<Condition> to_condition; // SHORTESTPATHS target filter
};

// Structural equality, ignoring source positions.
bool same_expr(const Expr& a, const Expr& b);

enum class OutputFormat { Json, Csv };

struct Statement {
    enum class Kind { Bind, Output };
    Kind kind = Kind::Bind;
    SourcePos pos;
    std::string name;
    Expr expr;
    std::optional<OutputFormat> format;
};

struct Program {
    std::vector<Statement> statements;
};

bool same_program(const Program& a, const Program& b);

// Throws Error(Parse) naming line and column of the first problem.
Program parse_program(std::string_view text);
Condition parse_condition(std::string_view text);

// Canonical text: one statement per line, upper-case keywords.
std::string print(const Expr& e);
std::string print(const Statement& s);
std::string print(const Program& p);

using QueryValue = std::variant<Graphoid, std::vector<PathResult>>;

struct QueryOutput {
    SourcePos pos;
    std::optional<OutputFormat> format; // as written; JSON when absent
    QueryValue value;
};

std::string render(const QueryOutput& out);
// Edge table: type, source, target, then one column per label slot.
std::string graphoid_to_csv(const Graphoid& g);

class Session {
public:
    // Relative LOAD paths resolve against base_dir.
    Session(CatalogPtr catalog, std::string base_dir = ".", ExecPolicy policy = {});

    // Binds a value under a name, e.g. a graphoid given on the command line.
    void bind(const std::string& name, QueryValue value);
    const QueryValue* find(const std::string& name) const;

    // Runs statements in order; errors carry the statement location. On error,
    // bindings made by earlier statements stay.
    std::vector<QueryOutput> run(const Program& program);

    // Static check: names, types, dimensions, levels and measures, without
    // touching node or edge data. Each entry is "line L, column C: message".
    ValidationReport check(const Program& program) const;

    const CatalogPtr& catalog() const { return catalog_; }

private:
    QueryValue eval(const Expr& e, const std::map<std::string, QueryValue>& env, bool shape_only) const;

    CatalogPtr catalog_;
    std::string base_dir_;
    ExecPolicy policy_;
    std::map<std::string, QueryValue> bindings_;
};

// Line-oriented loop: one statement per line (a missing ';' is added).
// Returns the number of statements that failed.
std::size_t run_repl(Session& session, std::istream& in, std::ostream& out, std::ostream& err, bool prompt);

} // namespace graphoid
