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

#include "sase/ast.hpp"

#include <sstream>

namespace sase {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}// namespace

std::string to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

std::string to_string(TimeUnit unit) {
    switch (unit) {
        case TimeUnit::Units: return "units";
        case TimeUnit::Seconds: return "seconds";
        case TimeUnit::Minutes: return "minutes";
        case TimeUnit::Hours: return "hours";
    }
    return "?";
}

std::string to_string(const Term& term) {
    switch (term.kind) {
        case Term::Kind::Attribute: return term.variable + "." + term.attribute;
        case Term::Kind::IntLiteral: return std::to_string(term.int_value);
        case Term::Kind::StringLiteral: return quote(term.string_value);
    }
    return "?";
}

std::string to_string(const Predicate& pred) {
    return to_string(pred.lhs) + " " + to_string(pred.op) + " " + to_string(pred.rhs);
}

std::string to_string(const ReturnItem& item) {
    if (item.kind == ReturnItem::Kind::Projection) return to_string(item.projection);
    std::string out = item.function + "(";
    for (std::size_t i = 0; i < item.args.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(item.args[i]);
    }
    out += ")";
    return out;
}

std::string pretty_print(const QueryAst& ast) {
    std::ostringstream out;
    if (ast.from_stream) out << "FROM " << *ast.from_stream << "\n";
    out << "EVENT SEQ(";
    for (std::size_t i = 0; i < ast.pattern.components.size(); ++i) {
        const auto& comp = ast.pattern.components[i];
        if (i > 0) out << ", ";
        if (comp.negated) {
            out << "!(" << comp.event_type << " " << comp.variable << ")";
        } else {
            out << comp.event_type << " " << comp.variable;
        }
    }
    out << ")";
    if (!ast.qual.empty()) {
        out << "\nWHERE ";
        for (std::size_t i = 0; i < ast.qual.size(); ++i) {
            if (i > 0) out << " AND ";
            out << to_string(ast.qual[i]);
        }
    }
    if (ast.window) out << "\nWITHIN " << ast.window->amount << " " << to_string(ast.window->unit);
    out << "\nRETURN ";
    for (std::size_t i = 0; i < ast.return_items.size(); ++i) {
        if (i > 0) out << ", ";
        out << to_string(ast.return_items[i]);
    }
    out << "\n";
    return out.str();
}

namespace {

nlohmann::json term_to_json(const Term& term) {
    switch (term.kind) {
        case Term::Kind::Attribute:
            return {{"kind", "attribute"}, {"variable", term.variable},
                    {"attribute", term.attribute}};
        case Term::Kind::IntLiteral: return {{"kind", "int"}, {"value", term.int_value}};
        case Term::Kind::StringLiteral: return {{"kind", "string"}, {"value", term.string_value}};
    }
    return nullptr;
}

}// namespace

nlohmann::json ast_to_json(const QueryAst& ast) {
    nlohmann::json j;
    j["query_id"] = ast.query_id;
    j["from"] = ast.from_stream ? nlohmann::json(*ast.from_stream) : nlohmann::json(nullptr);
    auto& pattern = j["pattern"] = nlohmann::json::array();
    for (const auto& comp : ast.pattern.components) {
        pattern.push_back({{"event_type", comp.event_type},
                           {"variable", comp.variable},
                           {"negated", comp.negated}});
    }
    auto& qual = j["where"] = nlohmann::json::array();
    for (const auto& pred : ast.qual) {
        qual.push_back({{"lhs", term_to_json(pred.lhs)},
                        {"op", to_string(pred.op)},
                        {"rhs", term_to_json(pred.rhs)}});
    }
    if (ast.window) {
        j["within"] = {{"amount", ast.window->amount}, {"unit", to_string(ast.window->unit)}};
    } else {
        j["within"] = nullptr;
    }
    auto& items = j["return"] = nlohmann::json::array();
    for (const auto& item : ast.return_items) {
        if (item.kind == ReturnItem::Kind::Projection) {
            items.push_back({{"kind", "projection"}, {"term", term_to_json(item.projection)}});
        } else {
            nlohmann::json args = nlohmann::json::array();
            for (const auto& arg : item.args) args.push_back(term_to_json(arg));
            items.push_back({{"kind", "call"}, {"function", item.function}, {"args", args}});
        }
    }
    return j;
}

}// namespace sase
