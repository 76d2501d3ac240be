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

#ifndef SASE_VALIDATE_HPP
#define SASE_VALIDATE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sase/ast.hpp"
#include "sase/builtins.hpp"
#include "sase/event.hpp"

namespace sase {

/// A type-checked query, ready for planning. from_stream is resolved to
/// "default" when omitted and the window is converted to logical units.
struct ValidatedQuery {
    QueryAst ast;
    std::optional<std::int64_t> window_units;

    /// Pattern indices of the non-negated components, in SEQ order.
    std::vector<std::size_t> positive_components;
    /// variable -> index into ast.pattern.components
    std::map<std::string, std::size_t> variable_index;

    const SeqComponent& component_of(const std::string& variable) const {
        return ast.pattern.components[variable_index.at(variable)];
    }
    bool is_negated(const std::string& variable) const {
        return component_of(variable).negated;
    }
    std::size_t positive_count() const { return positive_components.size(); }
};

/// Type-checks an AST against the schema and builtin registries.
///
/// Enforced here (not in the parser): at least one positive component, no
/// leading/trailing/adjacent negation, every referenced type and attribute
/// registered, predicate operand types compatible, negated variables used
/// only against positive attributes or literals and never in RETURN, builtin
/// names and arities resolvable, and the window convertible to a positive
/// whole number of logical units given unit_duration_ms.
ValidatedQuery validate_query(QueryAst ast, const SchemaRegistry& schemas,
                              const BuiltinRegistry& builtins, std::int64_t unit_duration_ms);

}// namespace sase

#endif
