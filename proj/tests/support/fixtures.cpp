#include "support/fixtures.hpp"

namespace graphoid::testing {

std::string data_path(const std::string& relative) { return std::string(GRAPHOID_DATA_DIR) + "/" + relative; }

CatalogPtr phone_catalog() {
    static CatalogPtr catalog = load_catalog(data_path("phone/catalog.json"));
    return catalog;
}

Graphoid fig3() { return load_graphoid(data_path("phone/fig3_base.json"), phone_catalog()); }

Graphoid fig7_golden() { return load_graphoid(data_path("phone/fig7_golden.json"), phone_catalog()); }

namespace {

struct Call {
    std::vector<NodeId> source;
    std::vector<NodeId> target;
    const char* day;
    int duration;
};

Graphoid operator_graph(const std::vector<std::pair<NodeId, const char*>>& phones, const std::vector<Call>& calls) {
    GraphoidDecls decls;
    decls.node_types = {{"Phone", {"Id", "Phone"}}};
    decls.edge_types = {{"Call", {"Time", "Duration"}, {{1, AggregateFn::Sum}}}};
    decls.levels = {{{"Phone", 1}, "Operator"}, {{"Call", 0}, "Day"}};
    std::vector<NodeInput> nodes;
    for (const auto& [id, op] : phones) nodes.push_back({"Phone", {Value(id), Value(op)}});
    std::vector<EdgeInput> edges;
    for (const auto& c : calls) edges.push_back({"Call", c.source, c.target, {Value(c.day), Value(c.duration)}});
    return build_graphoid(phone_catalog(), std::move(decls), std::move(nodes), std::move(edges));
}

} // namespace

Graphoid fig4_golden() {
    return operator_graph({{11, "ATT"}, {12, "Vodafone"}, {13, "Movistar"}, {14, "Vodafone"}, {15, "Movistar"}},
                          {{{11}, {12}, "2016-10-10", 4},
                           {{11}, {12}, "2016-10-10", 4},
                           {{14}, {13}, "2016-10-11", 3},
                           {{14}, {15}, "2016-10-12", 5},
                           {{13}, {12, 15}, "2016-10-13", 10},
                           {{15}, {12, 13}, "2016-10-14", 6}});
}

Graphoid fig5_golden() {
    return operator_graph({{11, "ATT"}, {12, "Vodafone"}, {13, "Movistar"}},
                          {{{11}, {12}, "2016-10-10", 4},
                           {{11}, {12}, "2016-10-10", 4},
                           {{12}, {13}, "2016-10-11", 3},
                           {{12}, {13}, "2016-10-12", 5},
                           {{13}, {12, 13}, "2016-10-13", 10},
                           {{13}, {12, 13}, "2016-10-14", 6}});
}

Graphoid fig3_built(CatalogPtr catalog) {
    GraphoidDecls decls;
    decls.node_types = {{"Phone", {"Id", "Phone"}}};
    decls.edge_types = {{"Call", {"Time", "Duration"}, {{1, AggregateFn::Sum}}}};
    std::vector<NodeInput> nodes;
    for (int i = 1; i <= 5; ++i) nodes.push_back({"Phone", {10 + i, "Ph" + std::to_string(i)}});
    auto call = [](std::vector<NodeId> s, std::vector<NodeId> t, const char* day, int d) {
        return EdgeInput{"Call", std::move(s), std::move(t), {Value(day), Value(d)}};
    };
    std::vector<EdgeInput> edges{
        call({11}, {12}, "2016-10-10", 4),     call({11}, {12}, "2016-10-10", 4),
        call({14}, {13}, "2016-10-11", 3),     call({14}, {15}, "2016-10-12", 5),
        call({13}, {12, 15}, "2016-10-13", 10), call({15}, {12, 13}, "2016-10-14", 6),
    };
    return build_graphoid(std::move(catalog), std::move(decls), std::move(nodes), std::move(edges));
}

CatalogPtr sales_catalog() {
    static CatalogPtr catalog = load_catalog(data_path("sales/catalog.json"));
    return catalog;
}

Cube sales_cube() { return cube_from_json(read_json(data_path("sales/cube.json")), sales_catalog()); }

Cube lego_antwerp_first_day(Cube c) {
    const Coordinates key{Value("Lego"), Value("Antwerp"), Value(*parse_date("2014-01-01"))};
    auto cell = c.cells.extract(key);
    c.cells.clear();
    c.cells.insert(std::move(cell));
    return c;
}

Dimension chain_dimension(const std::string& name, const std::vector<std::string>& levels,
                          const std::vector<std::vector<std::pair<std::string, std::string>>>& members) {
    DimensionInstance inst;
    inst.schema.name = name;
    for (const auto& l : levels) inst.schema.levels.push_back({l, ValueType::String, false});
    inst.schema.levels.push_back({"All", ValueType::String, false});
    for (std::size_t i = 0; i < levels.size(); ++i)
        inst.schema.edges.emplace_back(levels[i], i + 1 < levels.size() ? levels[i + 1] : "All");
    for (std::size_t i = 0; i < members.size(); ++i)
        for (const auto& [m, parent] : members[i]) {
            inst.members[levels[i]].push_back(Value(m));
            if (i + 1 < levels.size()) inst.parents.push_back({Value(m), levels[i], Value(parent), levels[i + 1]});
        }
    return Dimension::build(std::move(inst));
}

CatalogPtr billing_catalog() {
    auto catalog = std::make_shared<Catalog>(*phone_catalog());
    DimensionInstance bill;
    bill.schema = {"ExpectedBill", {{"Amount", ValueType::Integer, true}, {"All", ValueType::String, false}},
                   {{"Amount", "All"}}};
    for (int v : {880, 120, 450}) bill.members["Amount"].push_back(Value(v));
    catalog->add(Dimension::build(std::move(bill)));
    return catalog;
}

Graphoid billing_graph(CatalogPtr catalog) {
    GraphoidDecls decls;
    decls.node_types = {{"Phone", {"Id", "Phone", "ExpectedBill"}}};
    decls.edge_types = {{"Call", {"Time", "Duration"}, {{1, AggregateFn::Sum}}}};
    std::vector<NodeInput> nodes{{"Phone", {11, "Ph1", 880}}, {"Phone", {12, "Ph2", 120}}, {"Phone", {13, "Ph3", 450}}};
    std::vector<EdgeInput> edges{{"Call", {11}, {12}, {Value("2016-10-10"), Value(4)}},
                                 {"Call", {13}, {11, 12}, {Value("2016-10-13"), Value(7)}}};
    return build_graphoid(std::move(catalog), std::move(decls), std::move(nodes), std::move(edges));
}

} // namespace graphoid::testing
