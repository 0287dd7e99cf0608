#include "graphoid/gql.hpp"
#include "graphoid/store.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace graphoid {

const char* to_string(OpName op) {
    switch (op) {
    case OpName::Climb: return "CLIMB";
    case OpName::Minimize: return "MINIMIZE";
    case OpName::Group: return "GROUP";
    case OpName::Aggr: return "AGGR";
    case OpName::RollUp: return "ROLLUP";
    case OpName::DrillDown: return "DRILLDOWN";
    case OpName::Slice: return "SLICE";
    case OpName::Dice: return "DICE";
    case OpName::SDice: return "SDICE";
    case OpName::NDelete: return "NDELETE";
    case OpName::Edgify: return "EDGIFY";
    case OpName::ShortestPaths: return "SHORTESTPATHS";
    }
    return "?";
}

namespace {

// ---- lexer -----------------------------------------------------------------

struct Token {
    enum class Kind { Ident, Type, String, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    SourcePos pos;
};

std::string where(const SourcePos& pos) {
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

[[noreturn]] void parse_error(const SourcePos& pos, const std::string& msg) {
    throw Error(ErrorCode::Parse, where(pos) + ": " + msg);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    SourcePos pos;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.pos = pos;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            t.kind = Token::Kind::Ident;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (c == '#') {
            std::size_t j = i + 1;
            while (j < text.size() && ident_char(text[j])) ++j;
            if (j == i + 1) parse_error(pos, "expected a type name after '#'");
            t.kind = Token::Kind::Type;
            t.text = std::string(text.substr(i + 1, j - i - 1));
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            std::string value;
            while (true) {
                if (j >= text.size() || text[j] == '\n') parse_error(pos, "unterminated string");
                if (text[j] == '"') break;
                if (text[j] == '\\' && j + 1 < text.size()) ++j;
                value += text[j++];
            }
            t.kind = Token::Kind::String;
            t.text = std::move(value);
            advance(j + 1 - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t j = i + 1;
            auto digits = [&] {
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            };
            digits();
            if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                digits();
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    j = k;
                    digits();
                }
            }
            t.kind = Token::Kind::Number;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = Token::Kind::Punct;
            t.text = "->";
            advance(2);
        } else if (std::string_view("(){},;:.=<>*").find(c) != std::string_view::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            parse_error(pos, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.pos = pos;
    out.push_back(end);
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
           });
}

std::optional<OpName> op_by_name(std::string_view name) {
    for (int k = 0; k <= static_cast<int>(OpName::ShortestPaths); ++k)
        if (iequals(name, to_string(static_cast<OpName>(k)))) return static_cast<OpName>(k);
    return std::nullopt;
}

// ---- parser ----------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(lex(text)) {}

    Program program() {
        Program p;
        while (peek().kind != Token::Kind::End) p.statements.push_back(statement());
        return p;
    }

    Condition condition_only() {
        auto c = condition();
        if (peek().kind != Token::Kind::End) fail("unexpected " + describe(peek()));
        return c;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(i_ + ahead, tokens_.size() - 1)]; }
    const Token& next() {
        const Token& t = peek();
        if (i_ < tokens_.size() - 1) ++i_;
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const { parse_error(peek().pos, msg); }

    static std::string describe(const Token& t) {
        switch (t.kind) {
        case Token::Kind::End: return "end of input";
        case Token::Kind::Type: return "'#" + t.text + "'";
        case Token::Kind::String: return "string " + quote_string(t.text);
        default: return "'" + t.text + "'";
        }
    }

    bool is_punct(std::string_view p, std::size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == p;
    }
    bool is_keyword(std::string_view k, std::size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::Ident && iequals(peek(ahead).text, k);
    }
    void expect(std::string_view p) {
        if (!is_punct(p)) fail("expected '" + std::string(p) + "', found " + describe(peek()));
        next();
    }
    std::string ident(const char* what) {
        if (peek().kind != Token::Kind::Ident) fail(std::string("expected ") + what + ", found " + describe(peek()));
        return next().text;
    }
    std::string type_name() {
        if (peek().kind != Token::Kind::Type) fail("expected a #type, found " + describe(peek()));
        return next().text;
    }
    std::string type_or_star() {
        if (is_punct("*")) {
            next();
            return std::string(kAnyEdgeType);
        }
        return type_name();
    }

    Statement statement() {
        Statement s;
        s.pos = peek().pos;
        if (is_keyword("OUTPUT")) {
            next();
            s.kind = Statement::Kind::Output;
            s.expr = expr();
            if (is_keyword("AS")) {
                next();
                if (is_keyword("JSON")) s.format = OutputFormat::Json;
                else if (is_keyword("CSV")) s.format = OutputFormat::Csv;
                else fail("expected JSON or CSV, found " + describe(peek()));
                next();
            }
        } else {
            s.kind = Statement::Kind::Bind;
            s.name = ident("a binding name or OUTPUT");
            expect("=");
            s.expr = expr();
        }
        expect(";");
        return s;
    }

    Expr expr() {
        Expr e;
        e.pos = peek().pos;
        if (is_keyword("LOAD")) {
            next();
            if (peek().kind != Token::Kind::String) fail("expected a quoted path after LOAD");
            e.kind = Expr::Kind::Load;
            e.name = next().text;
            return e;
        }
        std::string name = ident("an expression");
        if (!is_punct("(")) {
            e.kind = Expr::Kind::Name;
            e.name = name;
            return e;
        }
        auto op = op_by_name(name);
        if (!op) parse_error(e.pos, "unknown operation " + name);
        next();
        e.kind = Expr::Kind::Op;
        e.op = *op;
        e.input.push_back(expr());
        switch (*op) {
        case OpName::Climb:
            expect(",");
            e.targets = targets();
            expect(",");
            e.step = step();
            break;
        case OpName::Minimize: break;
        case OpName::Group:
            expect(",");
            e.type = type_name();
            expect(",");
            e.step = step();
            break;
        case OpName::Aggr:
            expect(",");
            e.type = type_or_star();
            expect(",");
            e.measures = measures();
            break;
        case OpName::RollUp:
        case OpName::DrillDown:
            expect(",");
            e.targets = targets();
            expect(",");
            e.step = step();
            expect(";");
            e.type = type_or_star();
            expect(",");
            e.measures = measures();
            break;
        case OpName::Slice:
            expect(",");
            e.dimension = ident("a dimension");
            expect(";");
            e.measures = measures();
            break;
        case OpName::Dice:
        case OpName::SDice:
            expect(",");
            e.condition = condition();
            break;
        case OpName::NDelete:
            expect(",");
            e.type = type_name();
            break;
        case OpName::Edgify:
            expect(",");
            e.type = type_name();
            expect(",");
            if (peek().kind == Token::Kind::Number) {
                std::size_t slot = 0;
                const auto& t = next();
                auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), slot);
                if (ec != std::errc{} || p != t.text.data() + t.text.size())
                    parse_error(t.pos, "expected a slot index, found " + t.text);
                e.slot = slot;
            } else {
                e.dimension = ident("a dimension or slot index");
            }
            break;
        case OpName::ShortestPaths:
            expect(",");
            e.type = type_name();
            if (is_keyword("WHERE")) {
                next();
                e.condition = condition();
            }
            expect(",");
            e.to_type = type_name();
            if (is_keyword("WHERE")) {
                next();
                e.to_condition = condition();
            }
            if (is_punct(",")) {
                next();
                e.has_via = true;
                e.targets = targets();
            }
            break;
        }
        expect(")");
        return e;
    }

    TargetSet targets() {
        if (is_punct("*")) {
            next();
            return TargetSet::all();
        }
        expect("{");
        TargetSet t;
        t.types.push_back(type_name());
        while (is_punct(",")) {
            next();
            t.types.push_back(type_name());
        }
        expect("}");
        return t;
    }

    RollupStep step() {
        RollupStep s;
        s.dimension = ident("a dimension");
        expect(":");
        s.from_level = ident("a level");
        expect("->");
        s.to_level = ident("a level");
        return s;
    }

    MeasureSpec measures() {
        MeasureSpec out;
        while (true) {
            MeasureAgg m;
            m.measure = ident("a measure");
            expect(",");
            auto pos = peek().pos;
            auto fn = parse_aggregate(ident("an aggregate function"));
            if (!fn) parse_error(pos, "unknown aggregate function");
            m.fn = *fn;
            out.push_back(m);
            if (!is_punct(",")) break;
            next();
        }
        return out;
    }

    Condition condition() { return to_dnf(disjunction()); }

    BoolExpr disjunction() {
        std::vector<BoolExpr> parts{conjunction()};
        while (is_keyword("OR")) {
            next();
            parts.push_back(conjunction());
        }
        return parts.size() == 1 ? std::move(parts.front()) : BoolExpr::make_or(std::move(parts));
    }

    BoolExpr conjunction() {
        std::vector<BoolExpr> parts{unary()};
        while (is_keyword("AND")) {
            next();
            parts.push_back(unary());
        }
        return parts.size() == 1 ? std::move(parts.front()) : BoolExpr::make_and(std::move(parts));
    }

    BoolExpr unary() {
        if (is_keyword("NOT")) {
            next();
            return BoolExpr::make_not(unary());
        }
        if (is_punct("(")) {
            next();
            auto inner = disjunction();
            expect(")");
            return inner;
        }
        return BoolExpr::make_atom(atom());
    }

    Atom atom() {
        Atom a;
        a.dimension = ident("a condition");
        if (is_punct(".")) {
            next();
            a.level = ident("a level");
        }
        if (is_punct("<")) a.cmp = Comparator::Less;
        else if (is_punct("=")) a.cmp = Comparator::Equal;
        else if (is_punct(">")) a.cmp = Comparator::Greater;
        else fail("expected <, = or >, found " + describe(peek()));
        next();
        const auto& t = peek();
        if (t.kind == Token::Kind::String) {
            a.constant = Value(t.text);
        } else if (t.kind == Token::Kind::Number) {
            if (t.text.find_first_of(".eE") == std::string::npos) {
                std::int64_t v = 0;
                auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
                if (ec != std::errc{} || p != t.text.data() + t.text.size()) fail("integer out of range: " + t.text);
                a.constant = Value(v);
            } else {
                double v = 0;
                auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
                if (ec != std::errc{} || p != t.text.data() + t.text.size()) fail("bad number: " + t.text);
                a.constant = Value(v);
            }
        } else {
            fail("expected a quoted string or a number, found " + describe(t));
        }
        next();
        return a;
    }

    std::vector<Token> tokens_;
    std::size_t i_ = 0;
};

// ---- printer ---------------------------------------------------------------

std::string print_targets(const TargetSet& t) {
    if (t.wildcard) return "*";
    std::string s = "{";
    for (std::size_t i = 0; i < t.types.size(); ++i) s += (i ? ", " : "") + format_type(t.types[i]);
    return s + "}";
}

std::string print_step(const RollupStep& s) { return s.dimension + ": " + s.from_level + " -> " + s.to_level; }

std::string print_measures(const MeasureSpec& ms) {
    std::string s;
    for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? ", " : "") + ms[i].measure + ", " + to_string(ms[i].fn);
    return s;
}

std::string print_type_or_star(const std::string& t) { return t == kAnyEdgeType ? "*" : format_type(t); }

} // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }
Condition parse_condition(std::string_view text) { return Parser(text).condition_only(); }

std::string print(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Name: return e.name;
    case Expr::Kind::Load: return "LOAD " + quote_string(e.name);
    case Expr::Kind::Op: break;
    }
    std::string s = std::string(to_string(e.op)) + "(" + print(e.input.front());
    switch (e.op) {
    case OpName::Climb: s += ", " + print_targets(e.targets) + ", " + print_step(e.step); break;
    case OpName::Minimize: break;
    case OpName::Group: s += ", " + format_type(e.type) + ", " + print_step(e.step); break;
    case OpName::Aggr: s += ", " + print_type_or_star(e.type) + ", " + print_measures(e.measures); break;
    case OpName::RollUp:
    case OpName::DrillDown:
        s += ", " + print_targets(e.targets) + ", " + print_step(e.step) + "; " + print_type_or_star(e.type) + ", " +
             print_measures(e.measures);
        break;
    case OpName::Slice: s += ", " + e.dimension + "; " + print_measures(e.measures); break;
    case OpName::Dice:
    case OpName::SDice: s += ", " + to_string(*e.condition); break;
    case OpName::NDelete: s += ", " + format_type(e.type); break;
    case OpName::Edgify: s += ", " + format_type(e.type) + ", " + (e.slot ? std::to_string(*e.slot) : e.dimension); break;
    case OpName::ShortestPaths:
        s += ", " + format_type(e.type);
        if (e.condition) s += " WHERE " + to_string(*e.condition);
        s += ", " + format_type(e.to_type);
        if (e.to_condition) s += " WHERE " + to_string(*e.to_condition);
        if (e.has_via) s += ", " + print_targets(e.targets);
        break;
    }
    return s + ")";
}

std::string print(const Statement& st) {
    if (st.kind == Statement::Kind::Bind) return st.name + " = " + print(st.expr) + ";";
    std::string s = "OUTPUT " + print(st.expr);
    if (st.format) s += *st.format == OutputFormat::Json ? " AS JSON" : " AS CSV";
    return s + ";";
}

std::string print(const Program& p) {
    std::string s;
    for (const auto& st : p.statements) s += print(st) + "\n";
    return s;
}

bool same_expr(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.name != b.name) return false;
    if (a.kind != Expr::Kind::Op) return true;
    if (a.op != b.op || a.input.size() != b.input.size()) return false;
    for (std::size_t i = 0; i < a.input.size(); ++i)
        if (!same_expr(a.input[i], b.input[i])) return false;
    return a.targets == b.targets && a.has_via == b.has_via && a.step == b.step && a.type == b.type &&
           a.to_type == b.to_type && a.measures == b.measures && a.dimension == b.dimension && a.slot == b.slot &&
           a.condition == b.condition && a.to_condition == b.to_condition;
}

bool same_program(const Program& a, const Program& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (std::size_t i = 0; i < a.statements.size(); ++i) {
        const auto& x = a.statements[i];
        const auto& y = b.statements[i];
        if (x.kind != y.kind || x.name != y.name || x.format != y.format || !same_expr(x.expr, y.expr)) return false;
    }
    return true;
}

// ---- output ----------------------------------------------------------------

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string graphoid_to_csv(const Graphoid& g) {
    std::map<NodeId, std::string> summary;
    for (const auto& n : g.nodes()) {
        std::string s;
        for (std::size_t i = 1; i < n.label.size(); ++i) s += (i > 1 ? ":" : "") + n.label[i].to_string();
        summary[n.id()] = s.empty() ? std::to_string(n.id()) : s;
    }
    auto endpoint = [&](const NodeSet& ids) {
        std::string s;
        for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "/" : "") + summary.at(ids[i]);
        return s;
    };
    std::size_t width = 0;
    for (const auto& t : g.edge_types()) width = std::max(width, t.dims.size());
    std::ostringstream out;
    out << "type,source,target";
    if (g.edge_types().size() == 1) {
        for (const auto& d : g.edge_types().front().dims) out << ',' << csv_field(d);
    } else {
        for (std::size_t i = 1; i <= width; ++i) out << ",slot" << i;
    }
    out << '\n';
    for (const auto& e : g.edges()) {
        out << csv_field(format_type(e.type)) << ',' << csv_field(endpoint(e.source)) << ','
            << csv_field(endpoint(e.target));
        for (const auto& v : e.label) out << ',' << csv_field(v.to_string());
        out << '\n';
    }
    return out.str();
}

std::string render(const QueryOutput& out) {
    if (const auto* g = std::get_if<Graphoid>(&out.value)) {
        if (out.format == OutputFormat::Csv) return graphoid_to_csv(*g);
        return graphoid_to_json(*g).dump(2) + "\n";
    }
    const auto& paths = std::get<std::vector<PathResult>>(out.value);
    if (out.format == OutputFormat::Csv) return paths_to_csv(paths);
    Json rows = Json::array();
    for (const auto& p : paths)
        rows.push_back({{"source", p.source}, {"target", p.target}, {"hops", p.hops}, {"path", p.path}});
    return rows.dump(2) + "\n";
}

// ---- evaluation ------------------------------------------------------------

namespace {

// An Error already carrying its statement location.
struct LocatedError : Error {
    using Error::Error;
};

Graphoid strip_data(const Graphoid& g) {
    GraphoidData d = g.data();
    d.nodes.clear();
    d.edges.clear();
    return Graphoid(std::make_shared<const GraphoidData>(std::move(d)));
}

QueryValue strip(const QueryValue& v) {
    if (const auto* g = std::get_if<Graphoid>(&v)) return strip_data(*g);
    return std::vector<PathResult>{};
}

// Checks that every targeted slot of step.dimension sits at step.from_level.
void require_level(const Graphoid& g, const TargetSet& targets, const RollupStep& step) {
    const auto& data = g.data();
    std::vector<std::string> types = targets.types;
    if (targets.wildcard) {
        for (const auto& t : data.node_types) types.push_back(t.name);
        for (const auto& t : data.edge_types) types.push_back(t.name);
    }
    for (const auto& type : types) {
        const auto* dims = data.dims_of(type);
        if (!dims) throw Error(ErrorCode::UnknownType, "unknown type " + format_type(type));
        auto slot = slot_of(*dims, step.dimension);
        if (!slot) continue;
        auto it = data.levels.find({type, *slot});
        if (it != data.levels.end() && it->second != step.from_level)
            throw Error(ErrorCode::LevelMismatch, format_type(type) + " holds " + step.dimension + " at level " +
                                                      it->second + ", not " + step.from_level);
    }
}

} // namespace

Session::Session(CatalogPtr catalog, std::string base_dir, ExecPolicy policy)
    : catalog_(std::move(catalog)), base_dir_(std::move(base_dir)), policy_(policy) {}

void Session::bind(const std::string& name, QueryValue value) {
    if (bindings_.count(name)) throw Error(ErrorCode::Rebinding, "name " + name + " is already bound");
    bindings_.insert_or_assign(name, std::move(value));
}

const QueryValue* Session::find(const std::string& name) const {
    auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
}

QueryValue Session::eval(const Expr& e, const std::map<std::string, QueryValue>& env, bool shape_only) const {
    try {
        switch (e.kind) {
        case Expr::Kind::Name: {
            auto it = env.find(e.name);
            if (it == env.end()) throw Error(ErrorCode::UnknownBinding, "unknown name " + e.name);
            return it->second;
        }
        case Expr::Kind::Load: {
            std::filesystem::path path(e.name);
            if (path.is_relative()) path = std::filesystem::path(base_dir_) / path;
            Graphoid g = load_graphoid(path.string(), catalog_);
            if (shape_only) return strip_data(g);
            return g;
        }
        case Expr::Kind::Op: break;
        }
        QueryValue in = eval(e.input.front(), env, shape_only);
        const auto* gp = std::get_if<Graphoid>(&in);
        if (!gp) throw Error(ErrorCode::TypeMismatch, std::string(to_string(e.op)) + " expects a graphoid, not a path table");
        const Graphoid& g = *gp;
        switch (e.op) {
        case OpName::Climb: return climb(g, e.targets, e.step, policy_);
        case OpName::Minimize: return minimize(g);
        case OpName::Group: return group(g, e.type, e.step, policy_);
        case OpName::Aggr: return aggr(g, e.type, e.measures);
        case OpName::RollUp: return roll_up(g, e.targets, e.step, e.type, e.measures, policy_);
        case OpName::DrillDown:
            require_level(g, e.targets, e.step);
            return drill_down(g, e.targets, e.step.dimension, e.step.to_level, e.type, e.measures, policy_);
        case OpName::Slice: return slice(g, e.dimension, e.measures, policy_);
        case OpName::Dice: return dice(g, *e.condition);
        case OpName::SDice: return s_dice(g, *e.condition);
        case OpName::NDelete: return n_delete(g, e.type);
        case OpName::Edgify: {
            std::size_t slot = 0;
            if (e.slot) {
                slot = *e.slot;
            } else {
                const auto* t = g.data().find_node_type(e.type);
                if (!t) throw Error(ErrorCode::UnknownType, "unknown node type " + format_type(e.type));
                auto s = slot_of(t->dims, e.dimension);
                if (!s) throw Error(ErrorCode::UnknownSlot, format_type(e.type) + " has no attribute " + e.dimension);
                slot = *s;
            }
            return edgify(g, e.type, slot);
        }
        case OpName::ShortestPaths:
            return shortest_paths(g, NodeFilter{e.type, e.condition}, NodeFilter{e.to_type, e.to_condition},
                                  e.has_via ? e.targets : TargetSet::all(), policy_);
        }
        return g;
    } catch (const LocatedError&) {
        throw;
    } catch (const Error& err) {
        throw LocatedError(err.code(), where(e.pos) + ": " + err.what());
    }
}

std::vector<QueryOutput> Session::run(const Program& program) {
    std::vector<QueryOutput> outputs;
    for (const auto& st : program.statements) {
        if (st.kind == Statement::Kind::Bind) {
            if (bindings_.count(st.name))
                throw Error(ErrorCode::Rebinding, where(st.pos) + ": name " + st.name + " is already bound");
            auto value = eval(st.expr, bindings_, false);
            bindings_.insert_or_assign(st.name, std::move(value));
        } else {
            outputs.push_back({st.pos, st.format, eval(st.expr, bindings_, false)});
        }
    }
    return outputs;
}

ValidationReport Session::check(const Program& program) const {
    ValidationReport report;
    std::map<std::string, QueryValue> env;
    for (const auto& [name, value] : bindings_) env.insert_or_assign(name, strip(value));
    std::set<std::string> failed;

    auto uses_failed = [&](const Expr& e, auto&& self) -> bool {
        if (e.kind == Expr::Kind::Name) return failed.count(e.name) > 0;
        return std::any_of(e.input.begin(), e.input.end(), [&](const Expr& x) { return self(x, self); });
    };
    for (const auto& st : program.statements) {
        if (st.kind == Statement::Kind::Bind && (env.count(st.name) || failed.count(st.name))) {
            report.push_back(where(st.pos) + ": name " + st.name + " is already bound");
            continue;
        }
        if (uses_failed(st.expr, uses_failed)) {
            if (st.kind == Statement::Kind::Bind) failed.insert(st.name);
            continue;
        }
        try {
            auto value = eval(st.expr, env, true);
            if (st.kind == Statement::Kind::Bind) env.insert_or_assign(st.name, std::move(value));
        } catch (const Error& err) {
            report.push_back(err.what());
            if (st.kind == Statement::Kind::Bind) failed.insert(st.name);
        }
    }
    return report;
}

std::size_t run_repl(Session& session, std::istream& in, std::ostream& out, std::ostream& err, bool prompt) {
    std::size_t failures = 0;
    std::string line;
    while (true) {
        if (prompt) out << "gql> " << std::flush;
        if (!std::getline(in, line)) break;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line.compare(first, 2, "--") == 0) continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string stmt = line.substr(first, last - first + 1);
        if (stmt.back() != ';') stmt += ';';
        try {
            for (const auto& o : session.run(parse_program(stmt))) out << render(o);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            ++failures;
        }
    }
    if (prompt) out << '\n';
    return failures;
}

} // namespace graphoid
