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

#ifndef SASE_ORACLE_HPP
#define SASE_ORACLE_HPP

#include <set>
#include <vector>

#include "sase/validate.hpp"

namespace sase {

/// One match found by the oracle: the (ts, seq) identity of the event bound
/// to each positive component, in SEQ order.
using OracleBinding = std::vector<std::pair<LogicalTime, SeqNo>>;
using OracleResult = std::set<OracleBinding>;

/// Reference semantics by exhaustive enumeration, deliberately independent
/// of the NFA runtime: every strictly (ts, seq)-increasing assignment of
/// stream events to the positive components with matching types is tried;
/// assignments must satisfy all WHERE predicates over positive variables and
/// the window bound, and are discarded when any event of a negated
/// component's type lies strictly between its anchors and satisfies the
/// negation predicates. Window and predicate checks are applied as soon as
/// their operands are bound, which prunes the search without changing the
/// result set.
OracleResult brute_force_oracle(const ValidatedQuery& q, const std::vector<EventPtr>& stream);

}// namespace sase

#endif
