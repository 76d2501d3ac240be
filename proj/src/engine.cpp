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

#include "sase/engine.hpp"

#include <algorithm>
#include <iostream>

namespace sase {

namespace {

bool op_holds(CompareOp op, std::strong_ordering cmp) {
    switch (op) {
        case CompareOp::Eq: return cmp == std::strong_ordering::equal;
        case CompareOp::Ne: return cmp != std::strong_ordering::equal;
        case CompareOp::Lt: return cmp == std::strong_ordering::less;
        case CompareOp::Le: return cmp != std::strong_ordering::greater;
        case CompareOp::Gt: return cmp == std::strong_ordering::greater;
        case CompareOp::Ge: return cmp != std::strong_ordering::less;
    }
    return false;
}

struct NegEntry {
    LogicalTime ts = 0;
    SeqNo seq = 0;
    std::vector<std::pair<std::string, Value>> attrs;

    const Value* find_attr(std::string_view name) const {
        for (const auto& [attr_name, value] : attrs) {
            if (attr_name == name) return &value;
        }
        return nullptr;
    }
};

struct PartialMatch {
    std::vector<EventPtr> bound;// positive components in SEQ order
};

struct Partition {
    /// by_count[b] holds partials with b components bound, 1 <= b < k.
    std::vector<std::vector<PartialMatch>> by_count;
    /// Per negation spec; used only for partition-routed specs.
    std::vector<std::deque<NegEntry>> neg_logs;
};

/// Resolves terms during predicate evaluation: positive variables bind to
/// events, the (at most one) negated variable binds to a logged entry.
struct TermScope {
    const QueryPlan* plan = nullptr;
    const std::vector<EventPtr>* bound = nullptr;
    const std::string* negated_variable = nullptr;
    const NegEntry* negated_entry = nullptr;
    const EventPtr* single_event_variable_value = nullptr;// edge predicate case
    const std::string* single_variable = nullptr;

    Value term_value(const Term& term) const {
        switch (term.kind) {
            case Term::Kind::IntLiteral: return Value(term.int_value);
            case Term::Kind::StringLiteral: return Value(term.string_value);
            case Term::Kind::Attribute: break;
        }
        if (single_variable != nullptr && term.variable == *single_variable) {
            return (*single_event_variable_value)->attr(term.attribute);
        }
        if (negated_variable != nullptr && term.variable == *negated_variable) {
            const Value* v = negated_entry->find_attr(term.attribute);
            if (v == nullptr) {
                fail(ErrorCode::SchemaMismatch,
                     "negation log entry misses attribute " + term.attribute);
            }
            return *v;
        }
        for (std::size_t i = 0; i < plan->positive_variables.size(); ++i) {
            if (plan->positive_variables[i] == term.variable) {
                return (*bound)[i]->attr(term.attribute);
            }
        }
        fail(ErrorCode::UnknownAttribute, "unbound variable " + term.variable);
    }

    bool holds(const Predicate& pred) const {
        return op_holds(pred.op, compare_values(term_value(pred.lhs), term_value(pred.rhs)));
    }
};

bool entry_before(const NegEntry& entry, std::pair<LogicalTime, SeqNo> point) {
    return std::pair(entry.ts, entry.seq) < point;
}

}// namespace

struct Engine::QueryRuntime {
    ValidatedQuery query;
    QueryPlan plan;
    bool partitioned = false;
    std::map<Value, Partition> partitions;
    Partition global;
    /// Logs for negation specs that cannot be partition-routed.
    std::vector<std::deque<NegEntry>> global_neg_logs;

    Partition& partition_for(const Value& key) { return partitions[key]; }

    Partition* find_partition(const Value& key) {
        auto it = partitions.find(key);
        return it == partitions.end() ? nullptr : &it->second;
    }
};

Engine::Engine(const BuiltinRegistry& builtins, EngineOptions options)
    : builtins_(builtins), options_(options) {
    if (options_.sweep_interval == 0) options_.sweep_interval = 1;
    error_handler_ = [](const std::string& query_id, const SaseError& error) {
        std::cerr << "builtin failure in query " << query_id << ": " << error.what() << "\n";
    };
}

Engine::~Engine() = default;

std::string Engine::register_query(const ValidatedQuery& query) {
    const std::string& id = query.ast.query_id;
    for (const auto& rt : queries_) {
        if (rt->plan.query_id == id) {
            fail(ErrorCode::DuplicateQueryId, "query '" + id + "' is already registered");
        }
    }
    auto rt = std::make_unique<QueryRuntime>();
    rt->query = query;
    rt->plan = compile_plan(query, PlanOptions{options_.pushdown});
    rt->partitioned = rt->plan.partition_key.has_value();
    const std::size_t k = rt->plan.positive_variables.size();
    rt->global.by_count.resize(k);
    rt->global_neg_logs.resize(rt->plan.negation_specs.size());
    queries_.push_back(std::move(rt));
    return id;
}

void Engine::delete_query(const std::string& query_id) {
    auto it = std::find_if(queries_.begin(), queries_.end(),
                           [&](const auto& rt) { return rt->plan.query_id == query_id; });
    if (it == queries_.end()) {
        fail(ErrorCode::UnknownQueryId, "query '" + query_id + "' is not registered");
    }
    queries_.erase(it);
}

void Engine::set_error_handler(
    std::function<void(const std::string&, const SaseError&)> handler) {
    error_handler_ = std::move(handler);
}

const QueryPlan& Engine::plan_of(const std::string& query_id) const {
    for (const auto& rt : queries_) {
        if (rt->plan.query_id == query_id) return rt->plan;
    }
    fail(ErrorCode::UnknownQueryId, "query '" + query_id + "' is not registered");
}

std::vector<std::string> Engine::query_ids() const {
    std::vector<std::string> ids;
    ids.reserve(queries_.size());
    for (const auto& rt : queries_) ids.push_back(rt->plan.query_id);
    return ids;
}

std::size_t Engine::partial_match_count() const {
    std::size_t count = 0;
    for (const auto& rt : queries_) {
        for (const auto& partials : rt->global.by_count) count += partials.size();
        for (const auto& [key, partition] : rt->partitions) {
            for (const auto& partials : partition.by_count) count += partials.size();
        }
    }
    return count;
}

std::vector<CompositeEvent> Engine::process_event(const EventPtr& event) {
    if (last_processed_) {
        auto [last_ts, last_seq] = *last_processed_;
        if (event->ts < last_ts || event->seq <= last_seq) {
            fail(ErrorCode::OutOfOrderEvent,
                 "event (ts=" + std::to_string(event->ts) + ", seq=" +
                     std::to_string(event->seq) + ") arrived after (ts=" +
                     std::to_string(last_ts) + ", seq=" + std::to_string(last_seq) + ")");
        }
    }
    last_processed_ = {event->ts, event->seq};
    ++events_processed_;

    std::vector<CompositeEvent> out;
    for (auto& rt : queries_) process_for_query(*rt, event, out);

    if (options_.purge && events_processed_ % options_.sweep_interval == 0) {
        for (auto& rt : queries_) sweep(*rt, event->ts);
    }
    return out;
}

namespace {

void purge_partition(Partition& partition, LogicalTime horizon) {
    for (auto& partials : partition.by_count) {
        std::erase_if(partials, [&](const PartialMatch& pm) {
            return pm.bound.front()->ts < horizon;
        });
    }
    for (auto& log : partition.neg_logs) {
        while (!log.empty() && log.front().ts < horizon) log.pop_front();
    }
}

bool partition_empty(const Partition& partition) {
    for (const auto& partials : partition.by_count) {
        if (!partials.empty()) return false;
    }
    for (const auto& log : partition.neg_logs) {
        if (!log.empty()) return false;
    }
    return true;
}

}// namespace

void Engine::process_for_query(QueryRuntime& rt, const EventPtr& event,
                               std::vector<CompositeEvent>& out) {
    const QueryPlan& plan = rt.plan;
    const std::size_t k = plan.positive_variables.size();
    const LogicalTime now = event->ts;

    bool is_positive_type = false;
    for (const auto& tr : plan.nfa.transitions) {
        if (tr.event_type == event->type) is_positive_type = true;
    }
    bool is_neg_type = false;
    for (const auto& spec : plan.negation_specs) {
        if (spec.event_type == event->type) is_neg_type = true;
    }

    // (a) sequence scan: extend existing partial matches, then seed.
    // Positive events select their partition by the key attribute; routed
    // negation candidates are routed separately below, by route_attribute.
    Partition* partition = nullptr;
    if (rt.partitioned) {
        if (is_positive_type) {
            const Value& key = event->attr(*plan.partition_key);
            partition = &rt.partition_for(key);
            if (partition->by_count.empty()) partition->by_count.resize(k);
            if (partition->neg_logs.empty()) {
                partition->neg_logs.resize(plan.negation_specs.size());
            }
        }
    } else {
        partition = &rt.global;
    }

    std::vector<std::vector<EventPtr>> completions;

    if (partition != nullptr && (is_positive_type || is_neg_type)) {
        if (options_.purge && plan.window_units) {
            purge_partition(*partition, now - *plan.window_units);
        }

        if (is_positive_type) {
            // Highest bound-count first so nothing is extended twice by the
            // same event (the all-match NFA keeps the original partial).
            for (std::size_t b = k; b-- > 1;) {
                const NfaTransition& tr = plan.nfa.transitions[b];
                if (tr.event_type != event->type) continue;
                TermScope edge_scope;
                edge_scope.single_variable = &tr.variable;
                edge_scope.single_event_variable_value = &event;
                bool edge_ok = std::all_of(tr.edge_predicates.begin(), tr.edge_predicates.end(),
                                           [&](const Predicate& p) { return edge_scope.holds(p); });
                if (!edge_ok) continue;
                auto& waiting = partition->by_count[b];
                std::size_t n_existing = waiting.size();
                for (std::size_t i = 0; i < n_existing; ++i) {
                    const PartialMatch& pm = waiting[i];
                    if (plan.pushdown && plan.window_units &&
                        now - pm.bound.front()->ts > *plan.window_units) {
                        continue;
                    }
                    std::vector<EventPtr> extended = pm.bound;
                    extended.push_back(event);
                    if (b + 1 == k) {
                        completions.push_back(std::move(extended));
                    } else {
                        partition->by_count[b + 1].push_back({std::move(extended)});
                    }
                }
            }
            const NfaTransition& first = plan.nfa.transitions[0];
            if (first.event_type == event->type) {
                TermScope edge_scope;
                edge_scope.single_variable = &first.variable;
                edge_scope.single_event_variable_value = &event;
                bool edge_ok =
                    std::all_of(first.edge_predicates.begin(), first.edge_predicates.end(),
                                [&](const Predicate& p) { return edge_scope.holds(p); });
                if (edge_ok) {
                    std::vector<EventPtr> seeded{event};
                    if (k == 1) {
                        completions.push_back(std::move(seeded));
                    } else {
                        partition->by_count[1].push_back({std::move(seeded)});
                    }
                }
            }
        }
    }

    // (b) candidate negating events are appended to the relevant log.
    if (is_neg_type) {
        for (std::size_t spec_idx = 0; spec_idx < plan.negation_specs.size(); ++spec_idx) {
            const NegationSpec& spec = plan.negation_specs[spec_idx];
            if (spec.event_type != event->type) continue;

            // Literal-only predicates can be decided per event; failing them
            // means this event can never negate anything for this spec.
            TermScope literal_scope;
            literal_scope.single_variable = &spec.variable;
            literal_scope.single_event_variable_value = &event;
            bool viable = true;
            for (const Predicate& pred : spec.predicates) {
                bool literal_only = (pred.lhs.is_literal() ||
                                     (pred.lhs.is_attribute() && pred.lhs.variable == spec.variable)) &&
                                    (pred.rhs.is_literal() ||
                                     (pred.rhs.is_attribute() && pred.rhs.variable == spec.variable));
                if (literal_only && !literal_scope.holds(pred)) {
                    viable = false;
                    break;
                }
            }
            if (!viable) continue;

            NegEntry entry;
            entry.ts = event->ts;
            entry.seq = event->seq;
            for (const std::string& attr : spec.logged_attributes) {
                entry.attrs.emplace_back(attr, event->attr(attr));
            }
            if (spec.partition_routed) {
                const Value& route = event->attr(spec.route_attribute);
                Partition& target = rt.partition_for(route);
                if (target.neg_logs.empty()) target.neg_logs.resize(plan.negation_specs.size());
                if (target.by_count.empty()) target.by_count.resize(k);
                target.neg_logs[spec_idx].push_back(std::move(entry));
            } else {
                rt.global_neg_logs[spec_idx].push_back(std::move(entry));
            }
        }
    }

    // (c) pipeline the constructed sequences: Selection -> Window ->
    // Negation -> Transformation, in canonical binding order.
    if (!completions.empty()) {
        std::sort(completions.begin(), completions.end(),
                  [](const std::vector<EventPtr>& a, const std::vector<EventPtr>& b) {
                      for (std::size_t i = 0; i < a.size(); ++i) {
                          auto ka = std::pair(a[i]->ts, a[i]->seq);
                          auto kb = std::pair(b[i]->ts, b[i]->seq);
                          if (ka != kb) return ka < kb;
                      }
                      return false;
                  });
        for (const auto& bound : completions) finalize_match(rt, bound, out);
    }
}

void Engine::finalize_match(QueryRuntime& rt, const std::vector<EventPtr>& bound,
                            std::vector<CompositeEvent>& out) {
    const QueryPlan& plan = rt.plan;

    TermScope scope;
    scope.plan = &plan;
    scope.bound = &bound;

    // Selection
    for (const Predicate& pred : plan.residual_predicates) {
        if (!scope.holds(pred)) return;
    }
    // Window
    if (plan.window_units && bound.back()->ts - bound.front()->ts > *plan.window_units) return;
    // Negation
    for (std::size_t spec_idx = 0; spec_idx < plan.negation_specs.size(); ++spec_idx) {
        const NegationSpec& spec = plan.negation_specs[spec_idx];
        const EventPtr& before = bound[spec.anchor_before_pos];
        const EventPtr& after = bound[spec.anchor_before_pos + 1];

        const std::deque<NegEntry>* log = nullptr;
        if (spec.partition_routed) {
            const Value& key = bound.front()->attr(*plan.partition_key);
            Partition* partition = rt.find_partition(key);
            if (partition == nullptr || partition->neg_logs.empty()) continue;
            log = &partition->neg_logs[spec_idx];
        } else {
            log = &rt.global_neg_logs[spec_idx];
        }

        auto begin = std::lower_bound(log->begin(), log->end(),
                                      std::pair(before->ts, before->seq + 1), entry_before);
        auto end = std::lower_bound(log->begin(), log->end(),
                                    std::pair(after->ts, after->seq), entry_before);
        for (auto it = begin; it != end; ++it) {
            TermScope neg_scope = scope;
            neg_scope.negated_variable = &spec.variable;
            neg_scope.negated_entry = &*it;
            bool all_hold = std::all_of(spec.predicates.begin(), spec.predicates.end(),
                                        [&](const Predicate& p) { return neg_scope.holds(p); });
            if (all_hold) return;
        }
    }
    // Transformation
    CompositeEvent composite;
    composite.query_id = plan.query_id;
    for (std::size_t i = 0; i < plan.positive_variables.size(); ++i) {
        composite.bindings.emplace_back(plan.positive_variables[i], bound[i]);
    }
    for (const ReturnItem& item : plan.return_items) {
        if (item.kind == ReturnItem::Kind::Projection) {
            Value v = scope.term_value(item.projection);
            if (std::holds_alternative<std::int64_t>(v)) {
                composite.returned.emplace_back(to_string(item),
                                                ReturnedValue(std::get<std::int64_t>(v)));
            } else {
                composite.returned.emplace_back(to_string(item),
                                                ReturnedValue(std::get<std::string>(v)));
            }
            continue;
        }
        std::vector<Value> args;
        args.reserve(item.args.size());
        for (const Term& arg : item.args) args.push_back(scope.term_value(arg));
        try {
            composite.returned.emplace_back(to_string(item), builtins_.invoke(item.function, args));
        } catch (const SaseError& error) {
            if (error_handler_) {
                error_handler_(plan.query_id,
                               SaseError(ErrorCode::BuiltinFailure,
                                         to_string(item) + " failed: " + error.what()));
            }
            return;// this match only; the engine keeps running
        }
    }
    out.push_back(std::move(composite));
}

void Engine::sweep(QueryRuntime& rt, LogicalTime now) {
    if (!rt.plan.window_units) return;
    const LogicalTime horizon = now - *rt.plan.window_units;
    purge_partition(rt.global, horizon);
    for (auto& log : rt.global_neg_logs) {
        while (!log.empty() && log.front().ts < horizon) log.pop_front();
    }
    for (auto it = rt.partitions.begin(); it != rt.partitions.end();) {
        purge_partition(it->second, horizon);
        if (partition_empty(it->second)) {
            it = rt.partitions.erase(it);
        } else {
            ++it;
        }
    }
}

}// namespace sase
