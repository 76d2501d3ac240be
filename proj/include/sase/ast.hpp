/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#ifndef SASE_AST_HPP
#define SASE_AST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sase {

/// A predicate or argument operand: either variable.attribute or a literal.
struct Term {
    enum class Kind { Attribute, IntLiteral, StringLiteral };

    Kind kind = Kind::Attribute;
    std::string variable;
    std::string attribute;
    std::int64_t int_value = 0;
    std::string string_value;

    static Term attr(std::string variable, std::string attribute) {
        Term t;
        t.kind = Kind::Attribute;
        t.variable = std::move(variable);
        t.attribute = std::move(attribute);
        return t;
    }
    static Term literal(std::int64_t v) {
        Term t;
        t.kind = Kind::IntLiteral;
        t.int_value = v;
        return t;
    }
    static Term literal(std::string v) {
        Term t;
        t.kind = Kind::StringLiteral;
        t.string_value = std::move(v);
        return t;
    }

    bool is_attribute() const { return kind == Kind::Attribute; }
    bool is_literal() const { return kind != Kind::Attribute; }

    bool operator==(const Term&) const = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Predicate {
    Term lhs;
    CompareOp op = CompareOp::Eq;
    Term rhs;

    /// True when the two sides reference attributes of distinct variables.
    bool is_parameterized() const {
        return lhs.is_attribute() && rhs.is_attribute() && lhs.variable != rhs.variable;
    }

    bool operator==(const Predicate&) const = default;
};

enum class TimeUnit { Units, Seconds, Minutes, Hours };

struct Duration {
    std::int64_t amount = 0;
    TimeUnit unit = TimeUnit::Units;

    bool operator==(const Duration&) const = default;
};

/// A RETURN item: either a plain projection (variable.attribute) or a call
/// to a builtin function (names start with '_').
struct ReturnItem {
    enum class Kind { Projection, Call };

    Kind kind = Kind::Projection;
    Term projection;
    std::string function;
    std::vector<Term> args;

    static ReturnItem projection_of(Term t) {
        ReturnItem item;
        item.kind = Kind::Projection;
        item.projection = std::move(t);
        return item;
    }
    static ReturnItem call(std::string function, std::vector<Term> args) {
        ReturnItem item;
        item.kind = Kind::Call;
        item.function = std::move(function);
        item.args = std::move(args);
        return item;
    }

    bool operator==(const ReturnItem&) const = default;
};

struct SeqComponent {
    std::string event_type;
    std::string variable;
    bool negated = false;

    bool operator==(const SeqComponent&) const = default;
};

struct SeqPattern {
    std::vector<SeqComponent> components;

    bool operator==(const SeqPattern&) const = default;
};

/// Parsed query, one per .sase file. The parser enforces only grammar-level
/// constraints (non-empty SEQ, unique variables); everything that needs a
/// schema or builtin registry is checked by validate_query.
struct QueryAst {
    std::string query_id;
    std::optional<std::string> from_stream;
    SeqPattern pattern;
    std::vector<Predicate> qual;
    std::optional<Duration> window;
    std::vector<ReturnItem> return_items;

    bool operator==(const QueryAst&) const = default;
};

std::string to_string(CompareOp op);
std::string to_string(TimeUnit unit);
std::string to_string(const Term& term);
std::string to_string(const Predicate& pred);
std::string to_string(const ReturnItem& item);

/// Canonical text form; reparsing it yields an identical AST.
std::string pretty_print(const QueryAst& ast);

nlohmann::json ast_to_json(const QueryAst& ast);

}// namespace sase

#endif
