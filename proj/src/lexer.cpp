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

#include "sase/lexer.hpp"

#include <cctype>

#include "sase/errors.hpp"

namespace sase {

std::string_view token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::KwFrom: return "FROM";
        case TokenKind::KwEvent: return "EVENT";
        case TokenKind::KwSeq: return "SEQ";
        case TokenKind::KwWhere: return "WHERE";
        case TokenKind::KwWithin: return "WITHIN";
        case TokenKind::KwReturn: return "RETURN";
        case TokenKind::KwAnd: return "AND";
        case TokenKind::Ident: return "identifier";
        case TokenKind::Int: return "integer";
        case TokenKind::String: return "string";
        case TokenKind::Eq: return "'='";
        case TokenKind::Ne: return "'!='";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Le: return "'<='";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Ge: return "'>='";
        case TokenKind::Bang: return "'!'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Comma: return "','";
        case TokenKind::Dot: return "'.'";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

namespace {

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (true) {
            skip_space_and_comments();
            if (at_end()) break;
            tokens.push_back(next_token());
        }
        return tokens;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    [[noreturn]] void error(const std::string& message) const {
        fail(ErrorCode::LexError,
             message + " at line " + std::to_string(line_) + ", column " + std::to_string(column_));
    }

    void skip_space_and_comments() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '-' && peek(1) == '-') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    int start_line_ = 1;
    int start_column_ = 1;

    Token make(TokenKind kind, std::string text) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.line = start_line_;
        t.column = start_column_;
        return t;
    }

    /// Matches a UTF-8 encoded symbol at the current position.
    bool try_consume_utf8(std::string_view bytes) {
        if (text_.substr(pos_, bytes.size()) != bytes) return false;
        for (std::size_t i = 0; i < bytes.size(); ++i) advance();
        return true;
    }

    Token next_token() {
        start_line_ = line_;
        start_column_ = column_;
        Token token = make(TokenKind::End, "");
        char c = peek();

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                                 peek() == '_')) {
                word.push_back(advance());
            }
            token.kind = keyword_kind(word);
            token.text = std::move(word);
            return token;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            std::string digits;
            if (c == '-') digits.push_back(advance());
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                digits.push_back(advance());
            }
            token.kind = TokenKind::Int;
            token.text = digits;
            try {
                token.int_value = std::stoll(digits);
            } catch (const std::exception&) {
                error("integer literal '" + digits + "' out of range");
            }
            return token;
        }

        if (c == '"') {
            advance();
            std::string value;
            while (true) {
                if (at_end() || peek() == '\n') error("unterminated string literal");
                char ch = advance();
                if (ch == '"') break;
                if (ch == '\\') {
                    if (at_end()) error("unterminated string literal");
                    char esc = advance();
                    switch (esc) {
                        case '"': value.push_back('"'); break;
                        case '\\': value.push_back('\\'); break;
                        case 'n': value.push_back('\n'); break;
                        case 't': value.push_back('\t'); break;
                        default: error(std::string("unknown escape '\\") + esc + "'");
                    }
                } else {
                    value.push_back(ch);
                }
            }
            token.kind = TokenKind::String;
            token.text = std::move(value);
            return token;
        }

        // Unicode operator aliases.
        if (try_consume_utf8("∧")) return make(TokenKind::KwAnd, "∧");
        if (try_consume_utf8("≠")) return make(TokenKind::Ne, "≠");
        if (try_consume_utf8("≤")) return make(TokenKind::Le, "≤");
        if (try_consume_utf8("≥")) return make(TokenKind::Ge, "≥");

        advance();
        switch (c) {
            case '^': return make(TokenKind::KwAnd, "^");
            case '=': return make(TokenKind::Eq, "=");
            case '<':
                if (peek() == '=') {
                    advance();
                    return make(TokenKind::Le, "<=");
                }
                return make(TokenKind::Lt, "<");
            case '>':
                if (peek() == '=') {
                    advance();
                    return make(TokenKind::Ge, ">=");
                }
                return make(TokenKind::Gt, ">");
            case '!':
                if (peek() == '=') {
                    advance();
                    return make(TokenKind::Ne, "!=");
                }
                return make(TokenKind::Bang, "!");
            case '(': return make(TokenKind::LParen, "(");
            case ')': return make(TokenKind::RParen, ")");
            case ',': return make(TokenKind::Comma, ",");
            case '.': return make(TokenKind::Dot, ".");
            default: break;
        }
        fail(ErrorCode::LexError, std::string("unexpected character '") + c + "' at line " +
                                      std::to_string(start_line_) + ", column " +
                                      std::to_string(start_column_));
    }

    static TokenKind keyword_kind(const std::string& word) {
        std::string upper;
        upper.reserve(word.size());
        for (char c : word) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        if (upper == "FROM") return TokenKind::KwFrom;
        if (upper == "EVENT") return TokenKind::KwEvent;
        if (upper == "SEQ") return TokenKind::KwSeq;
        if (upper == "WHERE") return TokenKind::KwWhere;
        if (upper == "WITHIN") return TokenKind::KwWithin;
        if (upper == "RETURN") return TokenKind::KwReturn;
        if (upper == "AND") return TokenKind::KwAnd;
        return TokenKind::Ident;
    }
};

}// namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}// namespace sase
