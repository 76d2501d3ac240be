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

#include "sase/parser.hpp"

#include <cctype>
#include <set>

#include "sase/errors.hpp"
#include "sase/lexer.hpp"

namespace sase {

namespace {

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::string query_id)
        : tokens_(std::move(tokens)), query_id_(std::move(query_id)) {}

    QueryAst run() {
        QueryAst ast;
        ast.query_id = query_id_;
        if (accept(TokenKind::KwFrom)) ast.from_stream = expect_ident("stream name");
        expect(TokenKind::KwEvent);
        ast.pattern = parse_pattern();
        if (accept(TokenKind::KwWhere)) {
            ast.qual.push_back(parse_predicate());
            while (accept(TokenKind::KwAnd)) ast.qual.push_back(parse_predicate());
        }
        if (accept(TokenKind::KwWithin)) ast.window = parse_duration();
        expect(TokenKind::KwReturn);
        ast.return_items.push_back(parse_return_item());
        while (accept(TokenKind::Comma)) ast.return_items.push_back(parse_return_item());
        if (!at_end()) error("expected end of query, found " + describe(peek()));
        return ast;
    }

  private:
    std::vector<Token> tokens_;
    std::string query_id_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const {
        static const Token end_token{TokenKind::End, "", 0, 0, 0};
        return at_end() ? end_token : tokens_[pos_];
    }

    static std::string describe(const Token& t) {
        if (t.kind == TokenKind::Ident || t.kind == TokenKind::Int) return "'" + t.text + "'";
        return std::string(token_kind_name(t.kind));
    }

    [[noreturn]] void error(const std::string& message) const {
        const Token& t = peek();
        std::string loc = t.kind == TokenKind::End
                              ? std::string("at end of input")
                              : "at line " + std::to_string(t.line) + ", column " +
                                    std::to_string(t.column);
        fail(ErrorCode::ParseError, message + " " + loc);
    }

    bool accept(TokenKind kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    Token expect(TokenKind kind) {
        if (peek().kind != kind) {
            error("expected " + std::string(token_kind_name(kind)) + ", found " + describe(peek()));
        }
        return tokens_[pos_++];
    }

    std::string expect_ident(const std::string& what) {
        if (peek().kind != TokenKind::Ident) {
            error("expected " + what + ", found " + describe(peek()));
        }
        return tokens_[pos_++].text;
    }

    SeqPattern parse_pattern() {
        expect(TokenKind::KwSeq);
        expect(TokenKind::LParen);
        SeqPattern pattern;
        if (peek().kind == TokenKind::RParen) error("SEQ pattern must have at least one component");
        pattern.components.push_back(parse_component());
        while (accept(TokenKind::Comma)) pattern.components.push_back(parse_component());
        expect(TokenKind::RParen);

        std::set<std::string> seen;
        for (const auto& comp : pattern.components) {
            if (!seen.insert(comp.variable).second) {
                error("duplicate pattern variable '" + comp.variable + "'");
            }
        }
        return pattern;
    }

    SeqComponent parse_component() {
        SeqComponent comp;
        if (accept(TokenKind::Bang)) {
            comp.negated = true;
            expect(TokenKind::LParen);
            comp.event_type = expect_ident("event type");
            comp.variable = expect_ident("variable");
            expect(TokenKind::RParen);
            return comp;
        }
        comp.event_type = expect_ident("event type");
        comp.variable = expect_ident("variable");
        return comp;
    }

    Term parse_term() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::Int: {
                ++pos_;
                return Term::literal(t.int_value);
            }
            case TokenKind::String: {
                ++pos_;
                return Term::literal(t.text);
            }
            case TokenKind::Ident: {
                std::string variable = tokens_[pos_++].text;
                expect(TokenKind::Dot);
                std::string attribute = expect_ident("attribute name");
                return Term::attr(std::move(variable), std::move(attribute));
            }
            default: error("expected term (variable.attribute or literal), found " + describe(t));
        }
    }

    Predicate parse_predicate() {
        Predicate pred;
        pred.lhs = parse_term();
        switch (peek().kind) {
            case TokenKind::Eq: pred.op = CompareOp::Eq; break;
            case TokenKind::Ne: pred.op = CompareOp::Ne; break;
            case TokenKind::Lt: pred.op = CompareOp::Lt; break;
            case TokenKind::Le: pred.op = CompareOp::Le; break;
            case TokenKind::Gt: pred.op = CompareOp::Gt; break;
            case TokenKind::Ge: pred.op = CompareOp::Ge; break;
            default: error("expected comparison operator, found " + describe(peek()));
        }
        ++pos_;
        pred.rhs = parse_term();
        return pred;
    }

    Duration parse_duration() {
        Token amount = expect(TokenKind::Int);
        if (amount.int_value <= 0) error("window amount must be positive");
        std::string unit_word = expect_ident("time unit");
        std::string lower;
        for (char c : unit_word) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        Duration d;
        d.amount = amount.int_value;
        if (lower == "unit" || lower == "units") {
            d.unit = TimeUnit::Units;
        } else if (lower == "second" || lower == "seconds") {
            d.unit = TimeUnit::Seconds;
        } else if (lower == "minute" || lower == "minutes") {
            d.unit = TimeUnit::Minutes;
        } else if (lower == "hour" || lower == "hours") {
            d.unit = TimeUnit::Hours;
        } else {
            error("unknown time unit '" + unit_word + "'");
        }
        return d;
    }

    ReturnItem parse_return_item() {
        const Token& t = peek();
        if (t.kind == TokenKind::Ident && t.text.starts_with("_")) {
            std::string function = tokens_[pos_++].text;
            expect(TokenKind::LParen);
            std::vector<Term> args;
            if (peek().kind != TokenKind::RParen) {
                args.push_back(parse_term());
                while (accept(TokenKind::Comma)) args.push_back(parse_term());
            }
            expect(TokenKind::RParen);
            return ReturnItem::call(std::move(function), std::move(args));
        }
        Term term = parse_term();
        if (!term.is_attribute()) error("RETURN projection must be variable.attribute");
        return ReturnItem::projection_of(std::move(term));
    }
};

}// namespace

QueryAst parse_query(std::string_view text, std::string query_id) {
    return Parser(tokenize(text), std::move(query_id)).run();
}

}// namespace sase
