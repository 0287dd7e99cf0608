#include "graphoid/value.hpp"

#include "graphoid/error.hpp"

#include <charconv>
#include <chrono>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace graphoid {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownDimension: return "unknown-dimension";
    case ErrorCode::UnknownLevel: return "unknown-level";
    case ErrorCode::UnknownMember: return "unknown-member";
    case ErrorCode::UnreachableLevel: return "unreachable-level";
    case ErrorCode::UnknownType: return "unknown-type";
    case ErrorCode::UnknownSlot: return "unknown-slot";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::DuplicateNode: return "duplicate-node";
    case ErrorCode::DuplicateType: return "duplicate-type";
    case ErrorCode::ValueOutsideDomain: return "value-outside-domain";
    case ErrorCode::UnknownEndpoint: return "unknown-endpoint";
    case ErrorCode::EmptyNodeSet: return "empty-node-set";
    case ErrorCode::EmptyEdge: return "empty-edge";
    case ErrorCode::TargetLacksDimension: return "target-lacks-dimension";
    case ErrorCode::LevelMismatch: return "level-mismatch";
    case ErrorCode::UnknownMeasure: return "unknown-measure";
    case ErrorCode::TypeMismatch: return "type-mismatch";
    case ErrorCode::UnorderedComparison: return "unordered-comparison";
    case ErrorCode::CannotRollDown: return "cannot-roll-down";
    case ErrorCode::MissingLineage: return "missing-lineage";
    case ErrorCode::InvalidSchema: return "invalid-schema";
    case ErrorCode::InvalidInstance: return "invalid-instance";
    case ErrorCode::MalformedStar: return "malformed-star";
    case ErrorCode::MalformedInput: return "malformed-input";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::UnknownBinding: return "unknown-binding";
    case ErrorCode::Rebinding: return "rebinding";
    case ErrorCode::Overflow: return "overflow";
    }
    return "error";
}

const char* to_string(ValueType type) {
    switch (type) {
    case ValueType::Integer: return "integer";
    case ValueType::Decimal: return "decimal";
    case ValueType::Date: return "date";
    case ValueType::String: return "string";
    }
    return "string";
}

std::optional<ValueType> parse_value_type(std::string_view text) {
    if (text == "integer") return ValueType::Integer;
    if (text == "decimal") return ValueType::Decimal;
    if (text == "date") return ValueType::Date;
    if (text == "string") return ValueType::String;
    return std::nullopt;
}

std::string format_date(const Date& d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
    return buf;
}

std::optional<Date> parse_date(std::string_view text) {
    // YYYY-MM-DD, strictly.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int out = 0;
        auto [p, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
        if (ec != std::errc{} || p != text.data() + pos + len) return std::nullopt;
        return out;
    };
    auto y = field(0, 4), m = field(5, 2), d = field(8, 2);
    if (!y || !m || !d) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                    std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{*y, static_cast<std::uint32_t>(*m), static_cast<std::uint32_t>(*d)};
}

std::string Value::to_string() const {
    switch (type()) {
    case ValueType::Integer: return std::to_string(as_integer());
    case ValueType::Decimal: {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, as_decimal());
        std::string out(buf, res.ptr);
        if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
        return out;
    }
    case ValueType::Date: return format_date(as_date());
    case ValueType::String: return as_string();
    }
    return {};
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() <=> b.v_.index();
    switch (a.type()) {
    case ValueType::Integer: return a.as_integer() <=> b.as_integer();
    case ValueType::Decimal: {
        double x = a.as_decimal(), y = b.as_decimal();
        if (x < y) return std::strong_ordering::less;
        if (y < x) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    case ValueType::Date: return a.as_date() <=> b.as_date();
    case ValueType::String: return a.as_string().compare(b.as_string()) <=> 0;
    }
    return std::strong_ordering::equal;
}

std::size_t Value::hash() const {
    std::size_t h = std::hash<std::size_t>{}(v_.index()) * 0x9e3779b97f4a7c15ULL;
    switch (type()) {
    case ValueType::Integer: return h ^ std::hash<std::int64_t>{}(as_integer());
    case ValueType::Decimal: return h ^ std::hash<double>{}(as_decimal());
    case ValueType::Date: {
        const auto& d = as_date();
        return h ^ std::hash<std::int64_t>{}((static_cast<std::int64_t>(d.year) << 9) | (d.month << 5) | d.day);
    }
    case ValueType::String: return h ^ std::hash<std::string>{}(as_string());
    }
    return h;
}

Value parse_value(std::string_view text, ValueType type) {
    auto fail = [&]() -> Value {
        throw Error(ErrorCode::TypeMismatch,
                    "cannot read '" + std::string(text) + "' as " + graphoid::to_string(type));
    };
    switch (type) {
    case ValueType::Integer: {
        std::int64_t out = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        if (ec != std::errc{} || p != text.data() + text.size()) return fail();
        return Value(out);
    }
    case ValueType::Decimal: {
        double out = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(out)) return fail();
        return Value(out);
    }
    case ValueType::Date: {
        auto d = parse_date(text);
        if (!d) return fail();
        return Value(*d);
    }
    case ValueType::String: return Value(std::string(text));
    }
    return fail();
}

Value coerce(const Value& literal, ValueType type) {
    if (literal.type() == type) return literal;
    if (literal.is_all()) return literal;
    if (type == ValueType::Decimal && literal.is_integer()) return Value(static_cast<double>(literal.as_integer()));
    if (type == ValueType::Integer && literal.is_decimal()) {
        double d = literal.as_decimal();
        if (std::trunc(d) == d && std::abs(d) < 9.0e18) return Value(static_cast<std::int64_t>(d));
    }
    if (literal.is_string()) return parse_value(literal.as_string(), type);
    throw Error(ErrorCode::TypeMismatch,
                "value " + literal.to_string() + " is not of type " + graphoid::to_string(type));
}

std::partial_ordering compare_in_domain(const Value& a, const Value& b) {
    if (a.is_numeric() && b.is_numeric()) {
        if (a.is_integer() && b.is_integer()) return a.as_integer() <=> b.as_integer();
        return a.as_number() <=> b.as_number();
    }
    if (a.type() != b.type())
        throw Error(ErrorCode::TypeMismatch, "cannot compare " + a.to_string() + " (" +
                                                 graphoid::to_string(a.type()) + ") with " + b.to_string() +
                                                 " (" + graphoid::to_string(b.type()) + ")");
    return a <=> b;
}

const char* to_string(AggregateFn fn) {
    switch (fn) {
    case AggregateFn::Sum: return "SUM";
    case AggregateFn::Min: return "MIN";
    case AggregateFn::Max: return "MAX";
    case AggregateFn::Count: return "COUNT";
    case AggregateFn::Avg: return "AVG";
    }
    return "SUM";
}

std::optional<AggregateFn> parse_aggregate(std::string_view text) {
    std::string upper;
    for (char c : text) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper == "SUM") return AggregateFn::Sum;
    if (upper == "MIN") return AggregateFn::Min;
    if (upper == "MAX") return AggregateFn::Max;
    if (upper == "COUNT") return AggregateFn::Count;
    if (upper == "AVG") return AggregateFn::Avg;
    return std::nullopt;
}

} // namespace graphoid
