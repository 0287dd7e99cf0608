// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include "graphoid/gql.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace graphoid;
using namespace graphoid::testing;

namespace {

constexpr double kAverageTolerance = 1e-9;
constexpr std::uint64_t kSeed = 20161010;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

bool run(int number, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (budget_seconds > 0 && seconds >= budget_seconds)
        out.fail("took " + std::to_string(seconds) + " s, budget " + std::to_string(budget_seconds) + " s");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (out.pass ? "PASS" : "FAIL") << " [" << number << "] " << title << " (" << seconds << " s)";
    if (!out.detail.empty()) line << ": " << out.detail;
    std::cout << line.str() << std::endl;
    return out.pass;
}

Outcome figure_goldens() {
    Outcome out;
    const auto g4 = climb(fig3(), TargetSet::of({"Phone"}), {"Phone", "Phone", "Operator"});
    if (!bag_equal(g4, fig4_golden())) out.fail("climb: " + bag_difference(g4, fig4_golden()));
    if (g4.nodes().size() != 5 || g4.edges().size() != 6) out.fail("climb changed |N| or |E|");
    const auto g5 = minimize(g4);
    if (!bag_equal(g5, fig5_golden())) out.fail("minimize: " + bag_difference(g5, fig5_golden()));
    std::vector<NodeId> ids;
    for (const auto& n : g5.nodes()) ids.push_back(n.id());
    if (ids != std::vector<NodeId>{11, 12, 13}) out.fail("minimize survivors are not 11, 12, 13");
    const MeasureSpec sum{{"Duration", AggregateFn::Sum}};
    const auto g7 = roll_up(g5, TargetSet::of({"Call"}), {"Time", "Day", "Year"}, "Call", sum);
    if (!bag_equal(g7, fig7_golden())) out.fail("roll-up: " + bag_difference(g7, fig7_golden()));
    const auto g9 = aggr(g5, "Call", sum);
    std::size_t pairs = 0;
    for (const auto& e : g9.edges())
        if (e.source == NodeSet{11} && e.target == NodeSet{12}) {
            ++pairs;
            if (e.label != std::vector<Value>{*parse_date("2016-10-10"), Value(8)})
                out.fail("aggregated pair label differs");
        }
    if (pairs != 1) out.fail("the duplicated pair did not merge into one edge");
    return out;
}

Outcome cube_equivalence() {
    Outcome out;
    const auto result = run_theorem1(200, kSeed, ExecPolicy{default_workers()});
    out.detail = std::to_string(result.equivalent) + "/" + std::to_string(result.trials) + " equivalent";
    if (result.trials != 200 || result.equivalent != result.trials) {
        out.pass = false;
        for (const auto& r : result.reports)
            if (!r.equivalent) {
                out.detail += "; first mismatch " + r.op + ": " +
                              (r.mismatches.empty() ? std::string("?") : r.mismatches.front());
                break;
            }
    }
    return out;
}

Outcome minimize_unique() {
    Outcome out;
    Rng rng(kSeed + 3);
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        const auto g = random_graphoid(rng);
        const auto m = minimize(g);
        if (!bag_equal(minimize(m), m)) out.fail("not idempotent at graphoid " + std::to_string(trial));
        for (int p = 0; p < 50; ++p) {
            const auto other = minimize(shuffled(g, rng));
            if (!bag_equal(other, m)) {
                out.fail("graphoid " + std::to_string(trial) + " permutation " + std::to_string(p) + ": " +
                         bag_difference(other, m));
                break;
            }
        }
    }
    return out;
}

Outcome edge_cardinality() {
    Outcome out;
    Rng rng(kSeed + 4);
    std::size_t climbs = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = random_graphoid(rng);
        if (minimize(g).edges().size() != g.edges().size()) out.fail("minimize at graphoid " + std::to_string(trial));
        if (auto spec = random_climb(g, rng)) {
            ++climbs;
            if (climb(g, spec->targets, spec->step).edges().size() != g.edges().size())
                out.fail("climb at graphoid " + std::to_string(trial));
        }
    }
    if (climbs < 50) out.fail("only " + std::to_string(climbs) + " graphoids had a climbable slot");
    return out;
}

Outcome case_study() {
    Outcome out;
    const auto data = generate(GeneratorConfig::desk());
    const auto& g = data.graph;
    const auto& phone = data.catalog->at("Phone");
    const ExecPolicy policy{default_workers()};
    if (data.calls.size() != 1000 || g.nodes().size() > 200) out.fail("unexpected desk data size");

    const std::vector<std::pair<std::string, std::string>> group_queries{
        {"Q1", phone.bottom()}, {"Q2", "Customer"}, {"Q3", "Operator"}};
    for (const auto& [name, level] : group_queries)
        for (std::size_t n : {2u, 3u}) {
            const auto got = group_averages(g, "Phone", {"Phone", phone.bottom(), level}, "Call", "Duration", n, policy);
            const auto expected = flat_group_averages(data.calls, *data.catalog, level, n);
            const std::string tag = name + " n=" + std::to_string(n);
            if (got.size() != expected.size()) {
                out.fail(tag + ": " + std::to_string(got.size()) + " groups, oracle " +
                         std::to_string(expected.size()));
                continue;
            }
            for (const auto& row : got) {
                auto it = expected.find(row.members);
                if (it == expected.end() || std::fabs(it->second - row.average) > kAverageTolerance) {
                    out.fail(tag + ": group average differs");
                    break;
                }
            }
        }

    const auto oracle = floyd_warshall(g);
    const auto stored = g.level({"Phone", 1});
    auto oracle_ids = [&](const std::optional<std::pair<std::string, Value>>& where) {
        std::vector<NodeId> ids;
        for (const auto& node : g.nodes())
            if (!where || phone.rollup(stored, where->first, node.label[1]) == where->second) ids.push_back(node.id());
        std::sort(ids.begin(), ids.end());
        return ids;
    };
    struct PathQuery {
        std::string name;
        std::optional<std::pair<std::string, Value>> from, to;
    };
    const std::vector<PathQuery> path_queries{
        {"Q4", std::nullopt, std::nullopt},
        {"Q5", std::pair<std::string, Value>{"Operator", "Claro"}, std::pair<std::string, Value>{"Operator", "Movistar"}},
        {"Q6", std::pair<std::string, Value>{"City", "Buenos Aires"}, std::pair<std::string, Value>{"City", "Salta"}},
        {"Q7", std::pair<std::string, Value>{"City", "Buenos Aires"}, std::nullopt},
    };
    auto filter = [](const std::optional<std::pair<std::string, Value>>& where) {
        NodeFilter f{"Phone", std::nullopt};
        if (where)
            f.condition = Condition{{{Literal{Atom{"Phone", where->first, Comparator::Equal, where->second}, false}}}};
        return f;
    };
    for (const auto& q : path_queries) {
        const auto got = shortest_paths(g, filter(q.from), filter(q.to), TargetSet::all(), policy);
        std::vector<PathResult> expected;
        for (auto u : oracle_ids(q.from))
            for (auto v : oracle_ids(q.to))
                if (u != v) expected.push_back({u, v, oracle.hops(u, v), oracle.witness(u, v)});
        if (expected.empty()) out.fail(q.name + ": oracle selects no pairs");
        if (got != expected) out.fail(q.name + ": shortest paths differ from the all-pairs oracle");
    }
    return out;
}

bool same_truth_table(const BoolExpr& formula, const Condition& dnf, std::size_t& atoms_seen) {
    std::vector<Atom> atoms;
    std::function<void(const BoolExpr&)> collect = [&](const BoolExpr& e) {
        if (e.kind == BoolExpr::Kind::Atom) {
            if (std::find(atoms.begin(), atoms.end(), e.atom) == atoms.end()) atoms.push_back(e.atom);
            return;
        }
        for (const auto& c : e.children) collect(c);
    };
    collect(formula);
    atoms_seen = atoms.size();
    if (atoms.size() > 10) return true;
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
        auto truth = [&](const Atom& a) {
            auto i = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), a) - atoms.begin());
            return ((mask >> i) & 1) != 0;
        };
        if (evaluate(formula, truth) != evaluate(dnf, truth)) return false;
    }
    return true;
}

Outcome query_round_trip() {
    Outcome out;
    Rng rng(kSeed + 6);
    std::size_t checked = 0;
    for (int trial = 0; trial < 500 && out.pass; ++trial) {
        std::vector<BoolExpr> formulas;
        const auto p = random_program(rng, &formulas);
        const auto text = print(p);
        const auto parsed = parse_program(text);
        if (!same_program(parsed, p)) out.fail("program " + std::to_string(trial) + " parses differently");
        if (print(parsed) != text) out.fail("program " + std::to_string(trial) + " prints differently");
        for (const auto& f : formulas) {
            std::size_t atoms = 0;
            if (!same_truth_table(f, to_dnf(f), atoms)) out.fail("DNF differs in program " + std::to_string(trial));
            if (atoms <= 10) ++checked;
        }
    }
    if (out.pass) out.detail = std::to_string(checked) + " conditions checked";
    return out;
}

Outcome persistence() {
    Outcome out;
    Rng rng(kSeed + 7);
    const auto dir = std::filesystem::temp_directory_path() / ("graphoid_acceptance_" + std::to_string(kSeed));
    std::filesystem::create_directories(dir);
    const auto path = [&](const char* name) { return (dir / name).string(); };
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        const std::string tag = " " + std::to_string(trial);
        const auto g = random_graphoid(rng);
        write_text(path("g.json"), graphoid_to_json(g).dump(2));
        if (!bag_equal(load_graphoid(path("g.json"), g.catalog_ptr()), g)) out.fail("graphoid" + tag);

        const auto& dim = g.catalog().at(std::vector<std::string>{"A", "B", "C"}[pick(rng, 3)]);
        write_text(path("s.json"), schema_to_json(dim.schema()).dump(2));
        if (schema_from_json(read_json(path("s.json"))) != dim.schema()) out.fail("schema" + tag);
        write_text(path("i.json"), instance_to_json(dim.instance()).dump(2));
        if (instance_from_json(read_json(path("i.json"))) != dim.instance()) out.fail("instance" + tag);

        const auto c = random_cube(rng);
        write_text(path("c.json"), cube_to_json(c).dump(2));
        if (cube_from_json(read_json(path("c.json")), c.catalog) != c) out.fail("cube" + tag);
    }
    std::filesystem::remove_all(dir);
    return out;
}

} // namespace

int main() {
    bool ok = true;
    ok &= run(1, "climb, minimize, aggr and roll-up goldens", 1.0, figure_goldens);
    ok &= run(2, "cube/star-graphoid equivalence, 200 trials", 60.0, cube_equivalence);
    ok &= run(3, "minimize is unique under 50 permutations and idempotent, 100 graphoids", 0, minimize_unique);
    ok &= run(4, "minimize and climb preserve |E|, 100 graphoids", 0, edge_cardinality);
    ok &= run(5, "case-study queries Q1-Q7 match brute-force oracles", 120.0, case_study);
    ok &= run(6, "query print/parse fixpoint and DNF truth tables, 500 programs", 0, query_round_trip);
    ok &= run(7, "save/load round trips, 100 of each kind", 0, persistence);
    std::cout << (ok ? "ALL PASS" : "SOME FAILED") << std::endl;
    return ok ? 0 : 1;
}
