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

#ifndef SASE_EVENT_HPP
#define SASE_EVENT_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sase/errors.hpp"

namespace sase {

/// Discrete timestamp in logical time units. Wall-clock instants exist only
/// on raw readings; everything downstream of the time conversion layer runs
/// on this integer clock.
using LogicalTime = std::int64_t;

/// Stream-arrival ordinal. Strictly increasing per stream; breaks ties
/// between events carrying the same logical timestamp.
using SeqNo = std::uint64_t;

/// One raw observation from a reader: which tag, which reader, when.
struct RawReading {
    std::string tag;
    std::string reader;
    std::int64_t wall_ts_ms = 0;
};

/// Attribute values are either 64-bit integers or text. Identifier-kind
/// attributes (tag ids, area ids) are stored as text; the schema kind only
/// matters for type checking.
using Value = std::variant<std::int64_t, std::string>;

enum class AttrKind { Integer, String, Identifier };

inline bool is_textual(AttrKind k) { return k != AttrKind::Integer; }

std::string_view attr_kind_name(AttrKind k);
std::optional<AttrKind> attr_kind_from_name(std::string_view name);

/// Three-way compare of two values holding the same alternative: numeric for
/// integers, lexicographic for text. Callers must not mix alternatives; the
/// validator guarantees that for query predicates.
std::strong_ordering compare_values(const Value& a, const Value& b);

std::string value_to_string(const Value& v);

struct AttrDecl {
    std::string name;
    AttrKind kind = AttrKind::String;
};

/// Declared shape of one event type. Every schema implicitly carries TagId,
/// AreaId (identifiers) and Timestamp (integer) ahead of its own attributes.
class EventSchema {
  public:
    EventSchema(std::string type_name, std::vector<AttrDecl> extra_attributes);

    const std::string& type_name() const { return type_name_; }
    const std::vector<AttrDecl>& attributes() const { return attributes_; }
    const AttrDecl* find(std::string_view name) const;

  private:
    std::string type_name_;
    std::vector<AttrDecl> attributes_;
};

class SchemaRegistry {
  public:
    /// Registers a schema; the type name must be new.
    void register_schema(EventSchema schema);

    const EventSchema* find(std::string_view type_name) const;
    std::vector<std::string> type_names() const;

    /// The retail deployment's default schemas: SHELF_READING,
    /// COUNTER_READING, EXIT_READING, LOAD_READING and UNLOAD_READING, each
    /// with a ProductName attribute on top of the implicit three.
    static SchemaRegistry default_retail();

  private:
    std::map<std::string, EventSchema, std::less<>> schemas_;
};

/// A typed, timestamped record flowing through queries. Attributes are kept
/// in schema order; (ts, seq) is unique per stream.
struct Event {
    std::string type;
    std::vector<std::pair<std::string, Value>> attrs;
    LogicalTime ts = 0;
    SeqNo seq = 0;

    const Value* find_attr(std::string_view name) const;
    /// Attribute access for names the schema guarantees to exist.
    const Value& attr(std::string_view name) const;
};

using EventPtr = std::shared_ptr<const Event>;

/// Builds a schema-validated event. The implicit Timestamp attribute
/// defaults to ts when the caller does not supply it; every other declared
/// attribute is required, and undeclared attributes are rejected.
Event make_event(const SchemaRegistry& registry, const std::string& type_name,
                 const std::vector<std::pair<std::string, Value>>& attrs, LogicalTime ts,
                 SeqNo seq);

inline EventPtr make_event_ptr(const SchemaRegistry& registry, const std::string& type_name,
                               const std::vector<std::pair<std::string, Value>>& attrs,
                               LogicalTime ts, SeqNo seq) {
    return std::make_shared<const Event>(make_event(registry, type_name, attrs, ts, seq));
}

/// Total order on events: lexicographic on (ts, seq). This is the meaning of
/// "before" and "after" everywhere in the engine.
inline std::strong_ordering stream_order(const Event& a, const Event& b) {
    if (auto c = a.ts <=> b.ts; c != 0) return c;
    return a.seq <=> b.seq;
}

inline bool strictly_before(const Event& a, const Event& b) {
    return stream_order(a, b) == std::strong_ordering::less;
}

/// Result of evaluating one RETURN item. Builtin calls that only cause side
/// effects yield the unit value (monostate).
using ReturnedValue = std::variant<std::monostate, std::int64_t, std::string>;

/// One successful pattern match: the positive SEQ variables bound to
/// concrete events (in SEQ position order) plus the evaluated RETURN items.
struct CompositeEvent {
    std::string query_id;
    std::vector<std::pair<std::string, EventPtr>> bindings;
    std::vector<std::pair<std::string, ReturnedValue>> returned;
};

}// namespace sase

#endif
