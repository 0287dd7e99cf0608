#include "graphoid/condition.hpp"

#include <algorithm>

namespace graphoid {

const char* to_string(Comparator cmp) {
    switch (cmp) {
    case Comparator::Less: return "<";
    case Comparator::Equal: return "=";
    case Comparator::Greater: return ">";
    }
    return "=";
}

namespace {

using Dnf = std::vector<Conjunct>;

Dnf cross(const Dnf& a, const Dnf& b) {
    if (a.size() * b.size() > kMaxConjuncts)
        throw Error(ErrorCode::Parse, "condition exceeds " + std::to_string(kMaxConjuncts) + " conjuncts in DNF");
    Dnf out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) {
            Conjunct c = x;
            c.insert(c.end(), y.begin(), y.end());
            out.push_back(std::move(c));
        }
    return out;
}

Dnf dnf(const BoolExpr& e, bool negated) {
    switch (e.kind) {
    case BoolExpr::Kind::Atom: return {{Literal{e.atom, negated}}};
    case BoolExpr::Kind::Not: return dnf(e.children.front(), !negated);
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
        // De Morgan: a negated AND behaves as an OR of negations and vice versa.
        bool conjunctive = (e.kind == BoolExpr::Kind::And) != negated;
        Dnf acc;
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            auto part = dnf(e.children[i], negated);
            if (i == 0) {
                acc = std::move(part);
            } else if (conjunctive) {
                acc = cross(acc, part);
            } else {
                acc.insert(acc.end(), part.begin(), part.end());
                if (acc.size() > kMaxConjuncts)
                    throw Error(ErrorCode::Parse, "condition exceeds " + std::to_string(kMaxConjuncts) +
                                                      " conjuncts in DNF");
            }
        }
        return acc;
    }
    }
    return {};
}

std::string format_constant(const Value& v) {
    switch (v.type()) {
    case ValueType::Integer:
    case ValueType::Decimal: return v.to_string();
    case ValueType::Date:
    case ValueType::String: return quote_string(v.to_string());
    }
    return v.to_string();
}

} // namespace

Condition to_dnf(const BoolExpr& expr) {
    Dnf raw = dnf(expr, false);
    Condition out;
    for (auto& c : raw) {
        Conjunct unique;
        for (auto& lit : c)
            if (std::find(unique.begin(), unique.end(), lit) == unique.end()) unique.push_back(std::move(lit));
        if (std::find(out.disjuncts.begin(), out.disjuncts.end(), unique) == out.disjuncts.end())
            out.disjuncts.push_back(std::move(unique));
    }
    return out;
}

bool evaluate(const BoolExpr& expr, const std::function<bool(const Atom&)>& truth) {
    switch (expr.kind) {
    case BoolExpr::Kind::Atom: return truth(expr.atom);
    case BoolExpr::Kind::Not: return !evaluate(expr.children.front(), truth);
    case BoolExpr::Kind::And:
        return std::all_of(expr.children.begin(), expr.children.end(),
                           [&](const BoolExpr& c) { return evaluate(c, truth); });
    case BoolExpr::Kind::Or:
        return std::any_of(expr.children.begin(), expr.children.end(),
                           [&](const BoolExpr& c) { return evaluate(c, truth); });
    }
    return false;
}

bool evaluate(const Condition& cond, const std::function<bool(const Atom&)>& truth) {
    return std::any_of(cond.disjuncts.begin(), cond.disjuncts.end(), [&](const Conjunct& c) {
        return std::all_of(c.begin(), c.end(), [&](const Literal& l) { return truth(l.atom) != l.negated; });
    });
}

std::vector<Atom> atoms_of(const Condition& cond) {
    std::vector<Atom> out;
    for (const auto& c : cond.disjuncts)
        for (const auto& l : c)
            if (std::find(out.begin(), out.end(), l.atom) == out.end()) out.push_back(l.atom);
    return out;
}

std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string to_string(const Atom& atom) {
    std::string out = atom.dimension;
    if (atom.level) out += "." + *atom.level;
    return out + " " + to_string(atom.cmp) + " " + format_constant(atom.constant);
}

std::string to_string(const Condition& cond) {
    std::string out;
    for (std::size_t i = 0; i < cond.disjuncts.size(); ++i) {
        if (i) out += " OR ";
        const auto& c = cond.disjuncts[i];
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j) out += " AND ";
            if (c[j].negated) out += "NOT ";
            out += to_string(c[j].atom);
        }
    }
    return out;
}

bool compare(const Value& lhs, Comparator cmp, const Value& rhs) {
    auto order = compare_in_domain(lhs, rhs);
    switch (cmp) {
    case Comparator::Less: return order == std::partial_ordering::less;
    case Comparator::Equal: return order == std::partial_ordering::equivalent;
    case Comparator::Greater: return order == std::partial_ordering::greater;
    }
    return false;
}

Condition bind_condition(const Condition& cond, const Catalog& catalog) {
    Condition out = cond;
    for (auto& c : out.disjuncts)
        for (auto& lit : c) {
            auto& atom = lit.atom;
            if (atom.is_measure()) {
                if (!atom.constant.is_numeric())
                    throw Error(ErrorCode::TypeMismatch,
                                "measure atom " + to_string(atom) + " needs a numeric constant");
                continue;
            }
            const auto& dim = catalog.at(atom.dimension);
            const auto& level = dim.level(*atom.level);
            atom.constant = coerce(atom.constant, level.type);
            if (atom.cmp != Comparator::Equal && !level.ordered)
                throw Error(ErrorCode::UnorderedComparison,
                            "level " + atom.dimension + "." + *atom.level + " is not ordered: " + to_string(atom));
        }
    return out;
}

Truth evaluate_atom(const Atom& atom, const ElementView& element, const Graphoid& g) {
    auto slot = slot_of(element.dims, atom.dimension);
    if (!slot) return Truth::Unknown;
    const bool measure_slot = element.edge && element.edge->is_measure(*slot);
    if (atom.is_measure() != measure_slot) return Truth::Unknown;
    const Value& stored = element.label[*slot];
    if (atom.is_measure()) return compare(stored, atom.cmp, atom.constant) ? Truth::True : Truth::False;

    const auto& stored_level = g.level({element.type, *slot});
    const auto& dim = g.catalog().at(atom.dimension);
    if (stored_level == *atom.level)
        return compare(stored, atom.cmp, atom.constant) ? Truth::True : Truth::False;
    if (!dim.reachable(stored_level, *atom.level))
        throw Error(ErrorCode::CannotRollDown, "condition " + to_string(atom) + " refers below stored level " +
                                                   atom.dimension + "." + stored_level + " of " +
                                                   format_type(element.type));
    Value rolled = dim.rollup(stored_level, *atom.level, stored);
    return compare(rolled, atom.cmp, atom.constant) ? Truth::True : Truth::False;
}

} // namespace graphoid
