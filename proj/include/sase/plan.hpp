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

#ifndef SASE_PLAN_HPP
#define SASE_PLAN_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sase/validate.hpp"

namespace sase {

/// One transition of the linear sequence-scan NFA. State 0 is the start
/// state; state k (the last transition's target) accepts. Events of other
/// types self-loop implicitly.
struct NfaTransition {
    int from_state = 0;
    int to_state = 0;
    std::string event_type;
    std::string variable;
    /// Pushed-down variable-vs-literal equality predicates; the transition
    /// fires only when they hold on the incoming event.
    std::vector<Predicate> edge_predicates;
};

struct Nfa {
    /// start + one state per positive SEQ component
    int num_states = 1;
    std::vector<NfaTransition> transitions;

    int accepting_state() const { return num_states - 1; }
};

/// Non-occurrence constraint between two adjacent positive components:
/// no event of event_type satisfying the predicates may fall strictly
/// between the events bound to anchor_before and anchor_after.
struct NegationSpec {
    std::string event_type;
    std::string variable;
    std::string anchor_before;
    std::string anchor_after;
    /// Index of anchor_before within the positive component order; the
    /// anchor_after event is the next positive binding.
    std::size_t anchor_before_pos = 0;
    /// All WHERE predicates that mention the negated variable.
    std::vector<Predicate> predicates;
    /// Attributes of the negated event the predicates look at; the runtime
    /// logs only these.
    std::vector<std::string> logged_attributes;
    /// True when an equality predicate ties an attribute of the negated
    /// variable to a positive variable's partition key attribute, so
    /// candidate events can be routed into value partitions.
    bool partition_routed = false;
    /// Attribute of the negated event whose value selects the partition
    /// (only meaningful when partition_routed).
    std::string route_attribute;
};

/// Executable form of a query. Operator order is fixed:
/// SequenceScan+Construction -> Selection(residual) -> Window -> Negation
/// -> Transformation.
struct QueryPlan {
    std::string query_id;
    Nfa nfa;
    bool pushdown = true;
    /// Attribute equated across all positive variables, if any.
    std::optional<std::string> partition_key;
    /// Equality predicates enforced by value partitioning.
    std::vector<Predicate> partition_predicates;
    /// Predicates evaluated by the Selection operator after construction.
    std::vector<Predicate> residual_predicates;
    std::optional<std::int64_t> window_units;
    std::vector<NegationSpec> negation_specs;
    std::vector<ReturnItem> return_items;
    /// Positive variables in SEQ order; bindings are reported in this order.
    std::vector<std::string> positive_variables;
};

struct PlanOptions {
    /// When false, no partition key, no edge predicates and no eager window
    /// pruning: every positive-variable predicate runs in Selection. Output
    /// is identical either way.
    bool pushdown = true;
};

struct PushDownResult {
    std::optional<std::string> partition_key;
    std::vector<Predicate> partition_predicates;
    /// variable -> predicates attached to its transition
    std::map<std::string, std::vector<Predicate>> edge_predicates;
    std::vector<Predicate> residual;
};

/// Splits the qualification into pushable and residual parts. The partition
/// key is the attribute equated (transitively) across all positive
/// variables; ties between such attributes break by name order. Equalities
/// between a variable and a literal become edge predicates. Predicates
/// mentioning negated variables are not part of this split; they belong to
/// the negation specs.
PushDownResult push_down(const ValidatedQuery& q);

QueryPlan compile_plan(const ValidatedQuery& q, const PlanOptions& options = {});

nlohmann::json plan_to_json(const QueryPlan& plan);
std::string plan_to_text(const QueryPlan& plan);

}// namespace sase

#endif
