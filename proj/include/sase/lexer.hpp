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

#ifndef SASE_LEXER_HPP
#define SASE_LEXER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sase {

enum class TokenKind {
    KwFrom,
    KwEvent,
    KwSeq,
    KwWhere,
    KwWithin,
    KwReturn,
    KwAnd,// AND, '∧' or '^'
    Ident,
    Int,
    String,
    Eq,
    Ne,// '!=' or '≠'
    Lt,
    Le,
    Gt,
    Ge,
    Bang,
    LParen,
    RParen,
    Comma,
    Dot,
    End,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    std::int64_t int_value = 0;
    int line = 1;
    int column = 1;
};

/// Splits query text into tokens. Keywords are case-insensitive, identifiers
/// case-sensitive; '--' starts a line comment. The trailing End token is not
/// included. Throws LexError with line/column on unexpected input.
std::vector<Token> tokenize(std::string_view text);

}// namespace sase

#endif
