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

#ifndef SASE_ENGINE_HPP
#define SASE_ENGINE_HPP

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sase/builtins.hpp"
#include "sase/event.hpp"
#include "sase/plan.hpp"
#include "sase/validate.hpp"

namespace sase {

struct EngineOptions {
    bool pushdown = true;
    /// Disabling purge keeps all partial state forever; only useful to test
    /// that purging never changes output.
    bool purge = true;
    /// Events between full sweeps of untouched partitions. The touched
    /// partition is always purged eagerly.
    std::uint64_t sweep_interval = 1024;
};

/// Executes registered query plans over a single ordered event stream.
///
/// Processes one event at a time (single-writer state machine). Matching is
/// all-match: every qualifying combination of events is reported, which is
/// exactly the set the brute-force oracle enumerates. Composite events are
/// emitted in (ts, seq) order of their final event, ties broken by query
/// registration order, then by binding order.
///
/// The builtin registry must outlive the engine.
class Engine {
  public:
    explicit Engine(const BuiltinRegistry& builtins, EngineOptions options = {});
    ~Engine();

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /// Compiles and activates a query. Matching begins with the next
    /// processed event; there is no retroactive matching.
    std::string register_query(const ValidatedQuery& query);

    /// Drops the query and all its partial state.
    void delete_query(const std::string& query_id);

    /// Feeds the next event; returns the composite events it completed.
    /// The stream contract — ts non-decreasing, seq strictly increasing —
    /// is enforced and violations throw OutOfOrderEvent.
    std::vector<CompositeEvent> process_event(const EventPtr& event);

    /// Builtin failures are reported here (with the owning query) and the
    /// engine moves on; other queries and later matches are unaffected.
    void set_error_handler(std::function<void(const std::string&, const SaseError&)> handler);

    const QueryPlan& plan_of(const std::string& query_id) const;
    std::vector<std::string> query_ids() const;

    /// Live partial matches across all queries (for tests and metrics).
    std::size_t partial_match_count() const;

  private:
    struct QueryRuntime;

    const BuiltinRegistry& builtins_;
    EngineOptions options_;
    std::vector<std::unique_ptr<QueryRuntime>> queries_;// registration order
    std::function<void(const std::string&, const SaseError&)> error_handler_;
    std::optional<std::pair<LogicalTime, SeqNo>> last_processed_;
    std::uint64_t events_processed_ = 0;

    void process_for_query(QueryRuntime& rt, const EventPtr& event,
                           std::vector<CompositeEvent>& out);
    void finalize_match(QueryRuntime& rt, const std::vector<EventPtr>& bound,
                        std::vector<CompositeEvent>& out);
    void sweep(QueryRuntime& rt, LogicalTime now);
};

}// namespace sase

#endif
