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

#include "sase/oracle.hpp"

#include <algorithm>

namespace sase {

namespace {

/// Trivial interpreter for one predicate over explicit variable bindings.
class OracleEval {
  public:
    Value term_value(const Term& term,
                     const std::map<std::string, const Event*>& bound) const {
        switch (term.kind) {
            case Term::Kind::IntLiteral: return Value(term.int_value);
            case Term::Kind::StringLiteral: return Value(term.string_value);
            case Term::Kind::Attribute: break;
        }
        return bound.at(term.variable)->attr(term.attribute);
    }

    bool holds(const Predicate& pred, const std::map<std::string, const Event*>& bound) const {
        Value lhs = term_value(pred.lhs, bound);
        Value rhs = term_value(pred.rhs, bound);
        auto cmp = compare_values(lhs, rhs);
        switch (pred.op) {
            case CompareOp::Eq: return cmp == std::strong_ordering::equal;
            case CompareOp::Ne: return cmp != std::strong_ordering::equal;
            case CompareOp::Lt: return cmp == std::strong_ordering::less;
            case CompareOp::Le: return cmp != std::strong_ordering::greater;
            case CompareOp::Gt: return cmp == std::strong_ordering::greater;
            case CompareOp::Ge: return cmp != std::strong_ordering::less;
        }
        return false;
    }
};

class Enumerator {
  public:
    Enumerator(const ValidatedQuery& q, const std::vector<EventPtr>& stream)
        : query_(q), stream_(stream) {
        for (std::size_t idx : q.positive_components) {
            const auto& comp = q.ast.pattern.components[idx];
            positive_types_.push_back(comp.event_type);
            positive_vars_.push_back(comp.variable);
        }
        // Positive-variable predicates become checkable once the last
        // variable they mention is bound.
        for (const auto& pred : q.ast.qual) {
            bool negated = false;
            std::size_t last_pos = 0;
            for (const Term* term : {&pred.lhs, &pred.rhs}) {
                if (!term->is_attribute()) continue;
                if (q.is_negated(term->variable)) {
                    negated = true;
                    continue;
                }
                auto it = std::find(positive_vars_.begin(), positive_vars_.end(), term->variable);
                last_pos = std::max(last_pos,
                                    static_cast<std::size_t>(it - positive_vars_.begin()));
            }
            if (!negated) positive_preds_by_pos_[last_pos].push_back(&pred);
        }
        for (std::size_t i = 0; i < q.ast.pattern.components.size(); ++i) {
            if (q.ast.pattern.components[i].negated) negated_components_.push_back(i);
        }
    }

    OracleResult run() {
        chosen_.assign(positive_vars_.size(), nullptr);
        extend(0, 0);
        return std::move(result_);
    }

  private:
    const ValidatedQuery& query_;
    const std::vector<EventPtr>& stream_;
    OracleEval eval_;
    std::vector<std::string> positive_types_;
    std::vector<std::string> positive_vars_;
    std::map<std::size_t, std::vector<const Predicate*>> positive_preds_by_pos_;
    std::vector<std::size_t> negated_components_;
    std::vector<const Event*> chosen_;
    OracleResult result_;

    void extend(std::size_t pos, std::size_t start_index) {
        if (pos == positive_vars_.size()) {
            if (!excluded_by_negation()) record();
            return;
        }
        for (std::size_t i = start_index; i < stream_.size(); ++i) {
            const Event& candidate = *stream_[i];
            if (query_.window_units && pos > 0 &&
                candidate.ts - chosen_[0]->ts > *query_.window_units) {
                break;// stream is (ts, seq)-sorted; later events only get worse
            }
            if (candidate.type != positive_types_[pos]) continue;
            chosen_[pos] = &candidate;
            if (predicates_hold_at(pos)) extend(pos + 1, i + 1);
            chosen_[pos] = nullptr;
        }
    }

    bool predicates_hold_at(std::size_t pos) {
        auto it = positive_preds_by_pos_.find(pos);
        if (it == positive_preds_by_pos_.end()) return true;
        std::map<std::string, const Event*> bound = current_bindings(pos + 1);
        return std::all_of(it->second.begin(), it->second.end(),
                           [&](const Predicate* pred) { return eval_.holds(*pred, bound); });
    }

    std::map<std::string, const Event*> current_bindings(std::size_t count) const {
        std::map<std::string, const Event*> bound;
        for (std::size_t i = 0; i < count; ++i) bound.emplace(positive_vars_[i], chosen_[i]);
        return bound;
    }

    bool excluded_by_negation() const {
        for (std::size_t comp_idx : negated_components_) {
            const auto& comps = query_.ast.pattern.components;
            const auto& neg = comps[comp_idx];
            const std::string& before_var = comps[comp_idx - 1].variable;
            const std::string& after_var = comps[comp_idx + 1].variable;
            auto bound = current_bindings(positive_vars_.size());
            const Event* before = bound.at(before_var);
            const Event* after = bound.at(after_var);

            std::vector<const Predicate*> neg_preds;
            for (const auto& pred : query_.ast.qual) {
                for (const Term* term : {&pred.lhs, &pred.rhs}) {
                    if (term->is_attribute() && term->variable == neg.variable) {
                        neg_preds.push_back(&pred);
                        break;
                    }
                }
            }

            for (const auto& event_ptr : stream_) {
                const Event& candidate = *event_ptr;
                if (candidate.type != neg.event_type) continue;
                if (!(strictly_before(*before, candidate) && strictly_before(candidate, *after))) {
                    continue;
                }
                bound[neg.variable] = &candidate;
                bool all_hold = std::all_of(neg_preds.begin(), neg_preds.end(),
                                            [&](const Predicate* pred) {
                                                return eval_.holds(*pred, bound);
                                            });
                bound.erase(neg.variable);
                if (all_hold) return true;
            }
        }
        return false;
    }

    void record() {
        OracleBinding binding;
        binding.reserve(chosen_.size());
        for (const Event* event : chosen_) binding.emplace_back(event->ts, event->seq);
        result_.insert(std::move(binding));
    }
};

}// namespace

OracleResult brute_force_oracle(const ValidatedQuery& q, const std::vector<EventPtr>& stream) {
    return Enumerator(q, stream).run();
}

}// namespace sase
