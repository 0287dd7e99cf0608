#include "graphoid/store.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace graphoid {

std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MalformedInput, path + ": cannot open file");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::MalformedInput, path + ": cannot write file");
    out << text;
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::MalformedInput, path + ": " + e.what());
    }
}

namespace {

// Runs a reader, turning JSON access errors into MalformedInput.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::MalformedInput, std::string("malformed ") + what + ": " + e.what());
    }
}

std::string strip_sigil(const std::string& name) { return !name.empty() && name[0] == '#' ? name.substr(1) : name; }

} // namespace

Json value_to_json(const Value& v) {
    switch (v.type()) {
    case ValueType::Integer: return v.as_integer();
    case ValueType::Decimal: return v.as_decimal();
    case ValueType::Date: return format_date(v.as_date());
    case ValueType::String: return v.as_string();
    }
    return nullptr;
}

Value value_from_json(const Json& j) {
    if (j.is_number_integer()) return Value(j.get<std::int64_t>());
    if (j.is_number_float()) return Value(j.get<double>());
    if (j.is_string()) return Value(j.get<std::string>());
    throw Error(ErrorCode::MalformedInput, "expected a scalar value, got " + j.dump());
}

Json schema_to_json(const DimensionSchema& schema) {
    Json levels = Json::array();
    for (const auto& l : schema.levels) {
        if (l.type == ValueType::String && !l.ordered) levels.push_back(l.name);
        else levels.push_back({{"name", l.name}, {"type", to_string(l.type)}, {"ordered", l.ordered}});
    }
    Json edges = Json::array();
    for (const auto& [from, to] : schema.edges) edges.push_back({from, to});
    return {{"name", schema.name}, {"levels", levels}, {"edges", edges}};
}

DimensionSchema schema_from_json(const Json& j) {
    return guarded("schema", [&] {
        DimensionSchema s;
        s.name = j.at("name").get<std::string>();
        for (const auto& l : j.at("levels")) {
            if (l.is_string()) {
                s.levels.push_back({l.get<std::string>()});
                continue;
            }
            LevelDecl decl{l.at("name").get<std::string>()};
            if (l.contains("type")) {
                auto type = parse_value_type(l.at("type").get<std::string>());
                if (!type) throw Error(ErrorCode::MalformedInput, "unknown value type " + l.at("type").dump());
                decl.type = *type;
            }
            decl.ordered = l.value("ordered", false);
            s.levels.push_back(decl);
        }
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::MalformedInput, "schema edge must be [from, to]");
            s.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
        return s;
    });
}

Json instance_to_json(const DimensionInstance& instance) {
    Json members = Json::object();
    for (const auto& [level, values] : instance.members) {
        Json list = Json::array();
        for (const auto& v : values) list.push_back(value_to_json(v));
        members[level] = list;
    }
    Json parents = Json::array();
    for (const auto& p : instance.parents)
        parents.push_back({value_to_json(p.child), p.child_level, value_to_json(p.parent), p.parent_level});
    return {{"schema", schema_to_json(instance.schema)}, {"members", members}, {"parents", parents}};
}

DimensionInstance instance_from_json(const Json& j, const std::vector<DimensionSchema>& schemas) {
    return guarded("instance", [&] {
        DimensionInstance inst;
        const auto& s = j.at("schema");
        if (s.is_string()) {
            auto name = s.get<std::string>();
            auto it = std::find_if(schemas.begin(), schemas.end(), [&](const auto& x) { return x.name == name; });
            if (it == schemas.end()) throw Error(ErrorCode::UnknownDimension, "instance refers to unknown schema " + name);
            inst.schema = *it;
        } else {
            inst.schema = schema_from_json(s);
        }
        auto typed = [&](const Json& v, const std::string& level) {
            Value raw = value_from_json(v);
            if (const auto* decl = inst.schema.find_level(level)) {
                try {
                    return coerce(raw, decl->type);
                } catch (const Error&) {
                    return raw; // left for validation to report
                }
            }
            return raw;
        };
        for (const auto& [level, values] : j.at("members").items()) {
            auto& out = inst.members[level];
            for (const auto& v : values) out.push_back(typed(v, level));
        }
        for (const auto& p : j.at("parents")) {
            if (!p.is_array() || p.size() != 4)
                throw Error(ErrorCode::MalformedInput, "parent edge must be [child, childLevel, parent, parentLevel]");
            auto cl = p[1].get<std::string>(), pl = p[3].get<std::string>();
            inst.parents.push_back({typed(p[0], cl), cl, typed(p[2], pl), pl});
        }
        return inst;
    });
}

Json catalog_to_json(const Catalog& catalog) {
    Json schemas = Json::array(), instances = Json::array();
    for (const auto& name : catalog.names()) {
        const auto& dim = catalog.at(name);
        if (dim.is_identifier()) continue;
        schemas.push_back(schema_to_json(dim.schema()));
        Json inst = instance_to_json(dim.instance());
        inst["schema"] = name;
        instances.push_back(inst);
    }
    return {{"schemas", schemas}, {"instances", instances}};
}

CatalogPtr catalog_from_json(const Json& j) {
    return guarded("catalog", [&] {
        std::vector<DimensionSchema> schemas;
        if (j.contains("schemas"))
            for (const auto& s : j.at("schemas")) schemas.push_back(schema_from_json(s));
        auto catalog = std::make_shared<Catalog>();
        for (const auto& i : j.at("instances")) catalog->add(Dimension::build(instance_from_json(i, schemas)));
        return CatalogPtr(catalog);
    });
}

CatalogPtr load_catalog(const std::string& path) { return catalog_from_json(read_json(path)); }

Json graphoid_to_json(const Graphoid& g) {
    Json node_types = Json::array(), edge_types = Json::array(), level_map = Json::object();
    auto levels_of = [&](const std::string& type, const std::vector<std::string>& dims) {
        Json row = Json::array();
        for (std::size_t i = 0; i < dims.size(); ++i) {
            auto it = g.levels().find({type, i});
            row.push_back(it == g.levels().end() ? Json(nullptr) : Json(it->second));
        }
        level_map[format_type(type)] = row;
    };
    for (const auto& t : g.node_types()) {
        node_types.push_back({{"name", format_type(t.name)}, {"dims", t.dims}});
        levels_of(t.name, t.dims);
    }
    for (const auto& t : g.edge_types()) {
        Json measures = Json::object();
        for (const auto& [slot, fn] : t.measures) measures[t.dims[slot]] = to_string(fn);
        edge_types.push_back({{"name", format_type(t.name)}, {"dims", t.dims}, {"measures", measures}});
        levels_of(t.name, t.dims);
    }
    Json nodes = Json::array(), edges = Json::array();
    for (const auto& n : g.nodes()) {
        Json row = Json::array({format_type(n.type)});
        for (const auto& v : n.label) row.push_back(value_to_json(v));
        nodes.push_back(row);
    }
    for (const auto& e : g.edges()) {
        Json row = Json::array({format_type(e.type), e.source, e.target});
        for (const auto& v : e.label) row.push_back(value_to_json(v));
        edges.push_back(row);
    }
    return {{"nodeTypes", node_types}, {"edgeTypes", edge_types}, {"levelMap", level_map},
            {"nodes", nodes},          {"edges", edges}};
}

Graphoid graphoid_from_json(const Json& j, CatalogPtr catalog) {
    return guarded("graphoid", [&] {
        GraphoidDecls decls;
        for (const auto& t : j.at("nodeTypes"))
            decls.node_types.push_back({strip_sigil(t.at("name").get<std::string>()), t.at("dims").get<std::vector<std::string>>()});
        for (const auto& t : j.at("edgeTypes")) {
            EdgeTypeDecl decl{strip_sigil(t.at("name").get<std::string>()), t.at("dims").get<std::vector<std::string>>(), {}};
            if (t.contains("measures"))
                for (const auto& [dim, fn] : t.at("measures").items()) {
                    auto slot = slot_of(decl.dims, dim);
                    if (!slot) throw Error(ErrorCode::UnknownMeasure, "measure " + dim + " is not a slot of " + format_type(decl.name));
                    auto parsed = parse_aggregate(fn.get<std::string>());
                    if (!parsed) throw Error(ErrorCode::MalformedInput, "unknown aggregate function " + fn.dump());
                    decl.measures[*slot] = *parsed;
                }
            decls.edge_types.push_back(std::move(decl));
        }
        if (j.contains("levelMap"))
            for (const auto& [type, row] : j.at("levelMap").items())
                for (std::size_t i = 0; i < row.size(); ++i)
                    if (!row[i].is_null()) decls.levels[{strip_sigil(type), i}] = row[i].get<std::string>();

        std::vector<NodeInput> nodes;
        for (const auto& row : j.at("nodes")) {
            if (!row.is_array() || row.size() < 2) throw Error(ErrorCode::MalformedInput, "node must be [type, id, ...]");
            NodeInput n{strip_sigil(row[0].get<std::string>()), {}};
            for (std::size_t i = 1; i < row.size(); ++i) n.label.push_back(value_from_json(row[i]));
            nodes.push_back(std::move(n));
        }
        std::vector<EdgeInput> edges;
        for (const auto& row : j.at("edges")) {
            if (!row.is_array() || row.size() < 3)
                throw Error(ErrorCode::MalformedInput, "edge must be [type, [source], [target], ...]");
            EdgeInput e{strip_sigil(row[0].get<std::string>()), row[1].get<std::vector<NodeId>>(),
                        row[2].get<std::vector<NodeId>>(), {}};
            for (std::size_t i = 3; i < row.size(); ++i) e.label.push_back(value_from_json(row[i]));
            edges.push_back(std::move(e));
        }
        return build_graphoid(std::move(catalog), std::move(decls), std::move(nodes), std::move(edges));
    });
}

Graphoid load_graphoid(const std::string& path, CatalogPtr catalog) {
    return graphoid_from_json(read_json(path), std::move(catalog));
}

Json cube_to_json(const Cube& c) {
    Json dims = Json::array(), measures = Json::array(), cells = Json::array();
    for (const auto& d : c.dims) dims.push_back({{"name", d.name}, {"level", d.level}});
    for (const auto& m : c.measures) measures.push_back({{"name", m.name}, {"aggregate", to_string(m.fn)}});
    for (const auto& [coords, values] : c.cells) {
        Json a = Json::array(), v = Json::array();
        for (const auto& x : coords) a.push_back(value_to_json(x));
        for (const auto& x : values) v.push_back(value_to_json(x));
        cells.push_back({a, v});
    }
    return {{"dims", dims}, {"measures", measures}, {"cells", cells}};
}

Cube cube_from_json(const Json& j, CatalogPtr catalog) {
    return guarded("cube", [&] {
        Cube c;
        c.catalog = std::move(catalog);
        for (const auto& d : j.at("dims")) c.dims.push_back({d.at("name").get<std::string>(), d.at("level").get<std::string>()});
        for (const auto& m : j.at("measures")) {
            CubeMeasure cm{m.at("name").get<std::string>()};
            if (m.contains("aggregate")) {
                auto fn = parse_aggregate(m.at("aggregate").get<std::string>());
                if (!fn) throw Error(ErrorCode::MalformedInput, "unknown aggregate function " + m.at("aggregate").dump());
                cm.fn = *fn;
            }
            c.measures.push_back(cm);
        }
        for (const auto& cell : j.at("cells")) {
            if (!cell.is_array() || cell.size() != 2) throw Error(ErrorCode::MalformedInput, "cell must be [[coords], [measures]]");
            Coordinates coords;
            for (std::size_t i = 0; i < cell[0].size(); ++i) {
                Value raw = value_from_json(cell[0][i]);
                if (i < c.dims.size())
                    if (const auto* dim = c.catalog->find(c.dims[i].name); dim && dim->has_level(c.dims[i].level))
                        raw = coerce(raw, dim->level(c.dims[i].level).type);
                coords.push_back(raw);
            }
            std::vector<Value> values;
            for (const auto& v : cell[1]) values.push_back(value_from_json(v));
            if (!c.cells.emplace(coords, values).second)
                throw Error(ErrorCode::MalformedInput, "duplicate cell coordinates");
        }
        if (auto report = validate_cube(c); !report.empty()) throw Error(ErrorCode::InvalidInstance, report.front());
        return c;
    });
}

std::string detect_kind(const Json& j) {
    if (!j.is_object()) return "";
    if (j.contains("nodes") && j.contains("edges")) return "graphoid";
    if (j.contains("cells")) return "cube";
    if (j.contains("instances")) return "catalog";
    if (j.contains("members")) return "instance";
    if (j.contains("levels") && j.contains("edges")) return "schema";
    return "";
}

// ---- call records ----------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') field += line[++i];
            else if (ch == '"') quoted = false;
            else field += ch;
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::optional<std::int64_t> parse_int(const std::string& s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// YYYY-MM-DDTHH:MM:SS (a space may replace the T).
std::optional<std::chrono::sys_seconds> parse_timestamp(const std::string& s) {
    if (s.size() != 19 || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' || s[16] != ':') return std::nullopt;
    auto date = parse_date(std::string_view(s).substr(0, 10));
    auto h = parse_int(s.substr(11, 2)), m = parse_int(s.substr(14, 2)), sec = parse_int(s.substr(17, 2));
    if (!date || !h || !m || !sec || *h > 23 || *m > 59 || *sec > 59) return std::nullopt;
    std::chrono::sys_days day{std::chrono::year{date->year} / std::chrono::month{date->month} / std::chrono::day{date->day}};
    return day + std::chrono::hours{*h} + std::chrono::minutes{*m} + std::chrono::seconds{*sec};
}

std::string format_timestamp(std::chrono::sys_seconds t) {
    auto day = std::chrono::floor<std::chrono::days>(t);
    std::chrono::year_month_day ymd{day};
    std::chrono::hh_mm_ss hms{t - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

} // namespace

std::vector<CallRecord> parse_calls(std::istream& in) {
    std::vector<CallRecord> calls;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": " + msg);
    };
    bool header = false;
    std::set<std::int64_t> finished;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (line.empty()) continue;
        if (!header) {
            if (line != kCallsHeader) fail(std::string("expected header ") + kCallsHeader);
            header = true;
            continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 6) fail("expected 6 fields, found " + std::to_string(f.size()));
        auto call_id = parse_int(f[0]), caller = parse_int(f[1]), participant = parse_int(f[2]), duration = parse_int(f[5]);
        if (!call_id) fail("CallId is not an integer: " + f[0]);
        if (!caller) fail("CallerId is not an integer: " + f[1]);
        if (!participant) fail("Participant is not an integer: " + f[2]);
        if (!duration || *duration < 0) fail("Duration is not a non-negative integer: " + f[5]);
        auto start = parse_timestamp(f[3]), end = parse_timestamp(f[4]);
        if (!start) fail("StartTime is not an ISO-8601 timestamp: " + f[3]);
        if (!end) fail("EndTime is not an ISO-8601 timestamp: " + f[4]);
        if (*end < *start) fail("EndTime precedes StartTime");
        if (*participant == *caller) fail("caller " + f[1] + " listed as its own participant");

        if (!calls.empty() && calls.back().call_id == *call_id) {
            auto& c = calls.back();
            if (c.caller != *caller || c.start != f[3] || c.end != f[4] || c.duration != *duration)
                fail("rows of call " + f[0] + " disagree on caller, times or duration");
            if (std::find(c.participants.begin(), c.participants.end(), *participant) != c.participants.end())
                fail("participant " + f[2] + " repeated in call " + f[0]);
            c.participants.push_back(*participant);
            continue;
        }
        if (!calls.empty()) finished.insert(calls.back().call_id);
        if (finished.count(*call_id)) fail("duplicate CallId " + f[0]);
        calls.push_back({*call_id, *caller, {*participant}, f[3], f[4], *duration});
    }
    return calls;
}

std::string calls_to_csv(const std::vector<CallRecord>& calls) {
    std::ostringstream out;
    out << kCallsHeader << '\n';
    for (const auto& c : calls)
        for (auto p : c.participants)
            out << c.call_id << ',' << c.caller << ',' << p << ',' << c.start << ',' << c.end << ',' << c.duration << '\n';
    return out.str();
}

Graphoid calls_to_graphoid(const std::vector<CallRecord>& calls, CatalogPtr catalog) {
    const auto& phone = catalog->at("Phone");
    const auto& time = catalog->at("Time");
    time.level("Day");
    const auto& bottom = phone.bottom();
    const bool integer_ids = phone.level(bottom).type == ValueType::Integer;
    const auto& members = phone.members(bottom);

    // phone id -> (node id, bottom member)
    auto resolve = [&](std::int64_t phone_id) -> std::pair<NodeId, Value> {
        if (integer_ids) {
            if (!phone.contains(bottom, Value(phone_id)))
                throw Error(ErrorCode::UnknownMember, "unknown phone id " + std::to_string(phone_id));
            return {phone_id, Value(phone_id)};
        }
        if (phone_id < 1 || static_cast<std::size_t>(phone_id) > members.size())
            throw Error(ErrorCode::UnknownMember, "unknown phone id " + std::to_string(phone_id));
        return {10 + phone_id, members[static_cast<std::size_t>(phone_id - 1)]};
    };

    std::map<NodeId, Value> referenced;
    std::vector<EdgeInput> edges;
    for (const auto& c : calls) {
        auto [caller, caller_label] = resolve(c.caller);
        referenced.emplace(caller, caller_label);
        std::vector<NodeId> target;
        for (auto p : c.participants) {
            auto [id, label] = resolve(p);
            referenced.emplace(id, label);
            target.push_back(id);
        }
        edges.push_back({"Call", {caller}, std::move(target), {Value(c.start.substr(0, 10)), Value(c.duration)}});
    }
    std::vector<NodeInput> nodes;
    for (const auto& [id, label] : referenced) nodes.push_back({"Phone", {Value(id), label}});

    GraphoidDecls decls;
    decls.node_types.push_back({"Phone", {std::string(kIdDimension), "Phone"}});
    decls.edge_types.push_back({"Call", {"Time", "Duration"}, {{1, AggregateFn::Sum}}});
    decls.levels[{"Call", 0}] = "Day";
    return build_graphoid(std::move(catalog), std::move(decls), std::move(nodes), std::move(edges));
}

Graphoid ingest_calls(std::istream& in, CatalogPtr catalog) {
    return calls_to_graphoid(parse_calls(in), std::move(catalog));
}

// ---- generator -------------------------------------------------------------

GeneratorConfig GeneratorConfig::desk() { return GeneratorConfig{}; }

GeneratorConfig GeneratorConfig::d1() {
    GeneratorConfig c;
    c.phone_count = 793;
    c.user_count = 500;
    c.call_count = 126700;
    return c;
}

GeneratorConfig GeneratorConfig::d2() {
    GeneratorConfig c;
    c.phone_count = 4689;
    c.user_count = 3000;
    c.call_count = 227709;
    return c;
}

namespace {

std::string padded(const char* prefix, std::size_t n, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
    return buf;
}

} // namespace

Dataset generate(const GeneratorConfig& config) {
    if (config.phone_count < 2 || config.user_count < 1 || config.call_count < 1 || config.max_group_size < 2 ||
        config.day_count < 1 || config.min_duration < 0 || config.max_duration < config.min_duration ||
        config.operators.empty() || config.cities.empty())
        throw Error(ErrorCode::MalformedInput, "invalid generator configuration");

    std::mt19937_64 rng(config.seed);
    auto uniform = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    // Phone dimension.
    DimensionInstance phone;
    phone.schema = DimensionSchema{
        "Phone",
        {{"PhoneId", ValueType::Integer, true},
         {"Number"},
         {"Customer"},
         {"City"},
         {"Country"},
         {"Operator"},
         {std::string(kAllLevel)}},
        {{"PhoneId", "Number"}, {"Number", "Customer"}, {"Customer", "City"}, {"City", "Country"},
         {"Country", "All"}, {"Number", "Operator"}, {"Operator", "All"}}};
    std::set<std::string> countries;
    for (const auto& [city, country] : config.cities) {
        phone.members["City"].push_back(city);
        if (countries.insert(country).second) phone.members["Country"].push_back(country);
        phone.parents.push_back({city, "City", country, "Country"});
    }
    for (const auto& op : config.operators) phone.members["Operator"].push_back(op);
    std::vector<std::string> users;
    for (std::size_t u = 1; u <= config.user_count; ++u) {
        users.push_back(padded("U", u, 5));
        phone.members["Customer"].push_back(users.back());
        phone.parents.push_back({users.back(), "Customer", config.cities[uniform(config.cities.size())].first, "City"});
    }
    for (std::size_t p = 1; p <= config.phone_count; ++p) {
        auto number = padded("555-", p, 6);
        phone.members["PhoneId"].push_back(Value(static_cast<std::int64_t>(p)));
        phone.members["Number"].push_back(number);
        phone.parents.push_back({Value(static_cast<std::int64_t>(p)), "PhoneId", number, "Number"});
        // The first phones cover every user once; the rest pick owners at random.
        const auto& owner = p <= users.size() ? users[p - 1] : users[uniform(users.size())];
        phone.parents.push_back({number, "Number", owner, "Customer"});
        phone.parents.push_back({number, "Number", config.operators[uniform(config.operators.size())], "Operator"});
    }

    // Calls.
    using namespace std::chrono;
    const sys_days first{year{config.first_day.year} / month{config.first_day.month} / day{config.first_day.day}};
    std::vector<CallRecord> calls;
    calls.reserve(config.call_count);
    const std::size_t max_group = std::min(config.max_group_size, config.phone_count);
    for (std::size_t i = 1; i <= config.call_count; ++i) {
        CallRecord c;
        c.call_id = static_cast<std::int64_t>(i);
        c.caller = static_cast<std::int64_t>(1 + uniform(config.phone_count));
        const std::size_t group = 2 + uniform(max_group - 1);
        std::set<std::int64_t> taken{c.caller};
        while (taken.size() < group) {
            auto p = static_cast<std::int64_t>(1 + uniform(config.phone_count));
            if (taken.insert(p).second) c.participants.push_back(p);
        }
        auto start = sys_seconds{first + days{static_cast<int>(uniform(config.day_count))}} +
                     seconds{static_cast<std::int64_t>(uniform(86400))};
        c.duration = std::uniform_int_distribution<std::int64_t>(config.min_duration, config.max_duration)(rng);
        c.start = format_timestamp(start);
        c.end = format_timestamp(start + seconds{c.duration});
        calls.push_back(std::move(c));
    }

    // Time dimension: Timestamp -> Day -> Month -> Year -> All.
    DimensionInstance time;
    time.schema = DimensionSchema{"Time",
                                  {{"Timestamp", ValueType::String, true},
                                   {"Day", ValueType::Date, true},
                                   {"Month", ValueType::String, true},
                                   {"Year", ValueType::Integer, true},
                                   {std::string(kAllLevel)}},
                                  {{"Timestamp", "Day"}, {"Day", "Month"}, {"Month", "Year"}, {"Year", "All"}}};
    std::set<std::string> months;
    std::set<int> years;
    for (std::size_t d = 0; d < config.day_count; ++d) {
        year_month_day ymd{first + days{static_cast<int>(d)}};
        Date date{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day())};
        auto month_name = format_date(date).substr(0, 7);
        time.members["Day"].push_back(date);
        time.parents.push_back({date, "Day", month_name, "Month"});
        if (months.insert(month_name).second) {
            time.members["Month"].push_back(month_name);
            time.parents.push_back({month_name, "Month", Value(date.year), "Year"});
        }
        if (years.insert(date.year).second) time.members["Year"].push_back(Value(date.year));
    }
    std::set<std::string> stamps;
    for (const auto& c : calls)
        if (stamps.insert(c.start).second) {
            time.members["Timestamp"].push_back(c.start);
            time.parents.push_back({c.start, "Timestamp", *parse_date(c.start.substr(0, 10)), "Day"});
        }

    auto catalog = std::make_shared<Catalog>();
    catalog->add(Dimension::build(std::move(phone)));
    catalog->add(Dimension::build(std::move(time)));
    Graphoid graph = calls_to_graphoid(calls, catalog);
    return Dataset{catalog, std::move(calls), std::move(graph)};
}

} // namespace graphoid
