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

#include "sase/plan.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sase {

namespace {

bool mentions_negated(const ValidatedQuery& q, const Predicate& pred) {
    for (const Term* term : {&pred.lhs, &pred.rhs}) {
        if (term->is_attribute() && q.is_negated(term->variable)) return true;
    }
    return false;
}

/// u.A = v.A between two distinct positive variables; returns A.
std::optional<std::string> positive_pair_equality(const ValidatedQuery& q, const Predicate& pred) {
    if (pred.op != CompareOp::Eq) return std::nullopt;
    if (!pred.is_parameterized()) return std::nullopt;
    if (pred.lhs.attribute != pred.rhs.attribute) return std::nullopt;
    if (q.is_negated(pred.lhs.variable) || q.is_negated(pred.rhs.variable)) return std::nullopt;
    return pred.lhs.attribute;
}

/// v.A = literal (either side); returns the variable.
std::optional<std::string> literal_equality_variable(const ValidatedQuery& q,
                                                     const Predicate& pred) {
    if (pred.op != CompareOp::Eq) return std::nullopt;
    const Term* attr = nullptr;
    if (pred.lhs.is_attribute() && pred.rhs.is_literal()) {
        attr = &pred.lhs;
    } else if (pred.rhs.is_attribute() && pred.lhs.is_literal()) {
        attr = &pred.rhs;
    } else {
        return std::nullopt;
    }
    if (q.is_negated(attr->variable)) return std::nullopt;
    return attr->variable;
}

struct UnionFind {
    std::map<std::string, std::string> parent;

    std::string find(const std::string& x) {
        auto it = parent.emplace(x, x).first;
        while (it->second != it->first) it = parent.find(it->second);
        return it->first;
    }
    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a);
        std::string rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
};

}// namespace

PushDownResult push_down(const ValidatedQuery& q) {
    PushDownResult result;

    std::vector<std::string> positive_vars;
    for (std::size_t idx : q.positive_components) {
        positive_vars.push_back(q.ast.pattern.components[idx].variable);
    }

    // Union-find per attribute name over positive-pair equalities; an
    // attribute keying all positive variables into one group is a partition
    // key candidate.
    std::map<std::string, UnionFind> groups;
    for (const auto& pred : q.ast.qual) {
        if (auto attr = positive_pair_equality(q, pred)) {
            groups[*attr].unite(pred.lhs.variable, pred.rhs.variable);
        }
    }
    if (positive_vars.size() >= 2) {
        for (auto& [attr, uf] : groups) {
            const std::string root = uf.find(positive_vars.front());
            bool spans_all = std::all_of(positive_vars.begin(), positive_vars.end(),
                                         [&](const std::string& v) { return uf.find(v) == root; });
            if (spans_all) {
                result.partition_key = attr;// map order: smallest name wins
                break;
            }
        }
    }

    for (const auto& pred : q.ast.qual) {
        if (mentions_negated(q, pred)) continue;// owned by the negation specs
        if (result.partition_key && positive_pair_equality(q, pred) == *result.partition_key) {
            result.partition_predicates.push_back(pred);
            continue;
        }
        if (auto var = literal_equality_variable(q, pred)) {
            result.edge_predicates[*var].push_back(pred);
            continue;
        }
        result.residual.push_back(pred);
    }
    return result;
}

QueryPlan compile_plan(const ValidatedQuery& q, const PlanOptions& options) {
    QueryPlan plan;
    plan.query_id = q.ast.query_id;
    plan.pushdown = options.pushdown;
    plan.window_units = q.window_units;
    plan.return_items = q.ast.return_items;

    PushDownResult pd = push_down(q);
    if (options.pushdown) {
        plan.partition_key = pd.partition_key;
        plan.partition_predicates = pd.partition_predicates;
        plan.residual_predicates = pd.residual;
    } else {
        // Everything over positive variables runs in the Selection operator.
        for (const auto& pred : q.ast.qual) {
            if (!mentions_negated(q, pred)) plan.residual_predicates.push_back(pred);
        }
    }

    const auto& comps = q.ast.pattern.components;
    plan.nfa.num_states = static_cast<int>(q.positive_count()) + 1;
    int state = 0;
    for (std::size_t idx : q.positive_components) {
        const auto& comp = comps[idx];
        NfaTransition tr;
        tr.from_state = state;
        tr.to_state = state + 1;
        tr.event_type = comp.event_type;
        tr.variable = comp.variable;
        if (options.pushdown) {
            if (auto it = pd.edge_predicates.find(comp.variable); it != pd.edge_predicates.end()) {
                tr.edge_predicates = it->second;
            }
        }
        plan.nfa.transitions.push_back(std::move(tr));
        plan.positive_variables.push_back(comp.variable);
        ++state;
    }

    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (!comps[i].negated) continue;
        NegationSpec spec;
        spec.event_type = comps[i].event_type;
        spec.variable = comps[i].variable;
        // Validation guarantees interior placement between positive
        // neighbours.
        spec.anchor_before = comps[i - 1].variable;
        spec.anchor_after = comps[i + 1].variable;
        auto pos = std::find(plan.positive_variables.begin(), plan.positive_variables.end(),
                             spec.anchor_before);
        spec.anchor_before_pos =
            static_cast<std::size_t>(pos - plan.positive_variables.begin());

        std::set<std::string> logged;
        for (const auto& pred : q.ast.qual) {
            bool mentions_this = false;
            for (const Term* term : {&pred.lhs, &pred.rhs}) {
                if (term->is_attribute() && term->variable == spec.variable) mentions_this = true;
            }
            if (!mentions_this) continue;
            spec.predicates.push_back(pred);
            for (const Term* term : {&pred.lhs, &pred.rhs}) {
                if (term->is_attribute() && term->variable == spec.variable) {
                    logged.insert(term->attribute);
                }
            }
            if (options.pushdown && plan.partition_key && pred.op == CompareOp::Eq &&
                pred.lhs.is_attribute() && pred.rhs.is_attribute()) {
                const Term& neg_side =
                    pred.lhs.variable == spec.variable ? pred.lhs : pred.rhs;
                const Term& other_side =
                    pred.lhs.variable == spec.variable ? pred.rhs : pred.lhs;
                if (other_side.is_attribute() && other_side.variable != spec.variable &&
                    !q.is_negated(other_side.variable) &&
                    other_side.attribute == *plan.partition_key) {
                    spec.partition_routed = true;
                    spec.route_attribute = neg_side.attribute;
                }
            }
        }
        spec.logged_attributes.assign(logged.begin(), logged.end());
        plan.negation_specs.push_back(std::move(spec));
    }
    return plan;
}

namespace {

nlohmann::json predicates_to_json(const std::vector<Predicate>& preds) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& pred : preds) arr.push_back(to_string(pred));
    return arr;
}

}// namespace

nlohmann::json plan_to_json(const QueryPlan& plan) {
    nlohmann::json j;
    j["query_id"] = plan.query_id;
    j["pushdown"] = plan.pushdown;
    j["partition_key"] =
        plan.partition_key ? nlohmann::json(*plan.partition_key) : nlohmann::json(nullptr);
    j["window_units"] =
        plan.window_units ? nlohmann::json(*plan.window_units) : nlohmann::json(nullptr);

    nlohmann::json nfa;
    nfa["num_states"] = plan.nfa.num_states;
    nfa["accepting_state"] = plan.nfa.accepting_state();
    auto& transitions = nfa["transitions"] = nlohmann::json::array();
    for (const auto& tr : plan.nfa.transitions) {
        transitions.push_back({{"from", tr.from_state},
                               {"to", tr.to_state},
                               {"event_type", tr.event_type},
                               {"variable", tr.variable},
                               {"edge_predicates", predicates_to_json(tr.edge_predicates)}});
    }
    j["nfa"] = nfa;

    j["partition_predicates"] = predicates_to_json(plan.partition_predicates);
    j["residual_predicates"] = predicates_to_json(plan.residual_predicates);

    auto& specs = j["negation_specs"] = nlohmann::json::array();
    for (const auto& spec : plan.negation_specs) {
        specs.push_back({{"event_type", spec.event_type},
                         {"variable", spec.variable},
                         {"anchor_before", spec.anchor_before},
                         {"anchor_after", spec.anchor_after},
                         {"predicates", predicates_to_json(spec.predicates)},
                         {"partition_routed", spec.partition_routed}});
    }

    auto& items = j["return_items"] = nlohmann::json::array();
    for (const auto& item : plan.return_items) items.push_back(to_string(item));
    return j;
}

std::string plan_to_text(const QueryPlan& plan) {
    std::ostringstream out;
    out << "plan for " << plan.query_id << (plan.pushdown ? "" : " (pushdown disabled)") << "\n";
    out << "  sequence scan:";
    for (const auto& tr : plan.nfa.transitions) {
        out << " -> [" << tr.event_type << " " << tr.variable;
        for (const auto& pred : tr.edge_predicates) out << " | " << to_string(pred);
        out << "]";
    }
    out << "\n";
    if (plan.partition_key) {
        out << "  partitioned by: " << *plan.partition_key << "\n";
        for (const auto& pred : plan.partition_predicates) {
            out << "    enforces " << to_string(pred) << "\n";
        }
    }
    out << "  selection:";
    if (plan.residual_predicates.empty()) {
        out << " (none)\n";
    } else {
        out << "\n";
        for (const auto& pred : plan.residual_predicates) {
            out << "    " << to_string(pred) << "\n";
        }
    }
    if (plan.window_units) {
        out << "  window: " << *plan.window_units << " units\n";
    } else {
        out << "  window: unbounded\n";
    }
    for (const auto& spec : plan.negation_specs) {
        out << "  negation: no " << spec.event_type << " " << spec.variable << " between "
            << spec.anchor_before << " and " << spec.anchor_after;
        for (const auto& pred : spec.predicates) out << " | " << to_string(pred);
        out << (spec.partition_routed ? " (partition routed)" : "") << "\n";
    }
    out << "  transform:";
    for (std::size_t i = 0; i < plan.return_items.size(); ++i) {
        out << (i == 0 ? " " : ", ") << to_string(plan.return_items[i]);
    }
    out << "\n";
    return out.str();
}

}// namespace sase
