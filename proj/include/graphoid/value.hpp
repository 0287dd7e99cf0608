#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace graphoid {

enum class ValueType { Integer, Decimal, Date, String };

const char* to_string(ValueType type);
std::optional<ValueType> parse_value_type(std::string_view text);

struct Date {
    std::int32_t year = 1970;
    std::uint32_t month = 1;
    std::uint32_t day = 1;

    auto operator<=>(const Date&) const = default;
};

// Typed scalar attribute value. Level members, labels and measures are all Values.
// Equality and ordering are structural (type first); use compare_in_domain for
// the numeric cross-type comparisons a condition needs.
class Value {
public:
    Value() : v_(std::string{}) {}
    Value(std::int64_t i) : v_(i) {}
    Value(int i) : v_(static_cast<std::int64_t>(i)) {}
    Value(double d) : v_(d) {}
    Value(Date d) : v_(d) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}

    static Value all() { return Value("all"); }

    ValueType type() const { return static_cast<ValueType>(v_.index()); }
    bool is_integer() const { return v_.index() == 0; }
    bool is_decimal() const { return v_.index() == 1; }
    bool is_date() const { return v_.index() == 2; }
    bool is_string() const { return v_.index() == 3; }
    bool is_numeric() const { return is_integer() || is_decimal(); }
    bool is_all() const { return is_string() && std::get<std::string>(v_) == "all"; }

    std::int64_t as_integer() const { return std::get<std::int64_t>(v_); }
    double as_decimal() const { return std::get<double>(v_); }
    const Date& as_date() const { return std::get<Date>(v_); }
    const std::string& as_string() const { return std::get<std::string>(v_); }
    double as_number() const { return is_integer() ? static_cast<double>(as_integer()) : as_decimal(); }

    // Canonical text: integers as digits, decimals in shortest round-trip form
    // (always containing '.' or an exponent), dates as YYYY-MM-DD, strings verbatim.
    std::string to_string() const;

    friend bool operator==(const Value&, const Value&) = default;
    friend std::strong_ordering operator<=>(const Value& a, const Value& b);

    std::size_t hash() const;

private:
    std::variant<std::int64_t, double, Date, std::string> v_;
};

// Parses `text` as a value of the given type. Throws Error(TypeMismatch) on failure.
Value parse_value(std::string_view text, ValueType type);

std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& d);

// Coerces a literal (as produced by a parser or JSON reader) to the declared type:
// strings become dates for Date levels, integers widen to decimals.
Value coerce(const Value& literal, ValueType type);

// Ordering used by conditions: numeric across Integer/Decimal, otherwise both
// sides must share a type. Throws Error(TypeMismatch) when incomparable.
std::partial_ordering compare_in_domain(const Value& a, const Value& b);

enum class AggregateFn { Sum, Min, Max, Count, Avg };

const char* to_string(AggregateFn fn);
std::optional<AggregateFn> parse_aggregate(std::string_view text);

} // namespace graphoid

template <>
struct std::hash<graphoid::Value> {
    std::size_t operator()(const graphoid::Value& v) const noexcept { return v.hash(); }
};
