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

#include "sase/validate.hpp"

#include "sase/errors.hpp"

namespace sase {

namespace {

enum class TermType { Integer, Textual };

class Validator {
  public:
    Validator(const SchemaRegistry& schemas, const BuiltinRegistry& builtins,
              std::int64_t unit_duration_ms)
        : schemas_(schemas), builtins_(builtins), unit_duration_ms_(unit_duration_ms) {}

    ValidatedQuery run(QueryAst ast) {
        ValidatedQuery q;
        q.ast = std::move(ast);
        if (!q.ast.from_stream) q.ast.from_stream = "default";

        check_pattern(q);
        for (const auto& pred : q.ast.qual) check_predicate(q, pred);
        for (const auto& item : q.ast.return_items) check_return_item(q, item);
        if (q.ast.window) q.window_units = convert_window(*q.ast.window);
        return q;
    }

  private:
    const SchemaRegistry& schemas_;
    const BuiltinRegistry& builtins_;
    std::int64_t unit_duration_ms_;

    void check_pattern(ValidatedQuery& q) {
        const auto& comps = q.ast.pattern.components;
        bool any_positive = false;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const auto& comp = comps[i];
            if (schemas_.find(comp.event_type) == nullptr) {
                fail(ErrorCode::UnknownEventType,
                     "event type '" + comp.event_type + "' is not registered");
            }
            q.variable_index.emplace(comp.variable, i);
            if (!comp.negated) {
                any_positive = true;
                q.positive_components.push_back(i);
            }
        }
        if (!any_positive) {
            fail(ErrorCode::NegationPositionError, "pattern has no positive component");
        }
        if (comps.front().negated) {
            fail(ErrorCode::NegationPositionError, "pattern must not start with a negation");
        }
        if (comps.back().negated) {
            fail(ErrorCode::NegationPositionError, "pattern must not end with a negation");
        }
        for (std::size_t i = 1; i < comps.size(); ++i) {
            if (comps[i - 1].negated && comps[i].negated) {
                fail(ErrorCode::NegationPositionError,
                     "adjacent negated components '" + comps[i - 1].variable + "' and '" +
                         comps[i].variable + "'");
            }
        }
    }

    TermType term_type(const ValidatedQuery& q, const Term& term) {
        switch (term.kind) {
            case Term::Kind::IntLiteral: return TermType::Integer;
            case Term::Kind::StringLiteral: return TermType::Textual;
            case Term::Kind::Attribute: break;
        }
        auto it = q.variable_index.find(term.variable);
        if (it == q.variable_index.end()) {
            fail(ErrorCode::UnknownAttribute,
                 "variable '" + term.variable + "' is not declared in the pattern");
        }
        const auto& comp = q.ast.pattern.components[it->second];
        const EventSchema* schema = schemas_.find(comp.event_type);
        const AttrDecl* decl = schema->find(term.attribute);
        if (decl == nullptr) {
            fail(ErrorCode::UnknownAttribute, "event type " + comp.event_type +
                                                  " has no attribute '" + term.attribute + "'");
        }
        return decl->kind == AttrKind::Integer ? TermType::Integer : TermType::Textual;
    }

    bool references_negated(const ValidatedQuery& q, const Term& term) {
        return term.is_attribute() && q.is_negated(term.variable);
    }

    void check_predicate(const ValidatedQuery& q, const Predicate& pred) {
        TermType lhs = term_type(q, pred.lhs);
        TermType rhs = term_type(q, pred.rhs);
        if (lhs != rhs) {
            fail(ErrorCode::TypeMismatch, "operands of '" + to_string(pred) +
                                              "' have incompatible types");
        }
        // A negated variable may only be compared against a positive
        // variable's attribute or a literal.
        if (references_negated(q, pred.lhs) && references_negated(q, pred.rhs)) {
            fail(ErrorCode::NegationPositionError,
                 "predicate '" + to_string(pred) + "' references only negated variables");
        }
    }

    void check_return_term(const ValidatedQuery& q, const Term& term) {
        term_type(q, term);
        if (references_negated(q, term)) {
            fail(ErrorCode::NegationPositionError,
                 "RETURN references negated variable '" + term.variable +
                     "', which has no binding in the output");
        }
    }

    void check_return_item(const ValidatedQuery& q, const ReturnItem& item) {
        if (item.kind == ReturnItem::Kind::Projection) {
            check_return_term(q, item.projection);
            return;
        }
        const BuiltinFn* fn = builtins_.find(item.function);
        if (fn == nullptr) {
            fail(ErrorCode::UnresolvedBuiltin, "builtin '" + item.function + "' is not registered");
        }
        if (fn->arity != item.args.size()) {
            fail(ErrorCode::UnresolvedBuiltin,
                 "builtin '" + item.function + "' expects " + std::to_string(fn->arity) +
                     " arguments, got " + std::to_string(item.args.size()));
        }
        for (const auto& arg : item.args) check_return_term(q, arg);
    }

    std::int64_t convert_window(const Duration& d) {
        if (d.unit == TimeUnit::Units) return d.amount;
        std::int64_t ms = d.amount;
        switch (d.unit) {
            case TimeUnit::Seconds: ms *= 1000; break;
            case TimeUnit::Minutes: ms *= 60 * 1000; break;
            case TimeUnit::Hours: ms *= 60 * 60 * 1000; break;
            case TimeUnit::Units: break;
        }
        if (ms % unit_duration_ms_ != 0) {
            fail(ErrorCode::WindowNotConvertible,
                 "window of " + std::to_string(ms) + " ms is not a whole number of " +
                     std::to_string(unit_duration_ms_) + " ms logical units");
        }
        return ms / unit_duration_ms_;
    }
};

}// namespace

ValidatedQuery validate_query(QueryAst ast, const SchemaRegistry& schemas,
                              const BuiltinRegistry& builtins, std::int64_t unit_duration_ms) {
    if (unit_duration_ms <= 0) {
        fail(ErrorCode::ConfigError, "unit duration must be positive");
    }
    return Validator(schemas, builtins, unit_duration_ms).run(std::move(ast));
}

}// namespace sase
