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

#ifndef SASE_PARSER_HPP
#define SASE_PARSER_HPP

#include <string>
#include <string_view>

#include "sase/ast.hpp"

namespace sase {

/// Parses one query:
///
///   query   := [FROM id] EVENT pattern [WHERE pred (AND pred)*]
///              [WITHIN int unit] RETURN item (',' item)*
///   pattern := SEQ '(' comp (',' comp)* ')'
///   comp    := TYPE id | '!' '(' TYPE id ')'
///
/// Grammar-level constraints only: SEQ must be non-empty and component
/// variables unique. Negation placement is left to validate_query so that
/// misplaced negation reports NegationPositionError, not a parse error.
/// Throws ParseError (or LexError) on malformed text.
QueryAst parse_query(std::string_view text, std::string query_id = "q");

}// namespace sase

#endif
