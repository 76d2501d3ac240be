#ifndef SASE_TESTS_HELPERS_HPP
#define SASE_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "sase/builtins.hpp"
#include "sase/event.hpp"
#include "sase/parser.hpp"
#include "sase/validate.hpp"

namespace sase::testing {

/// Four generic event types A..D, each with an integer Val attribute on top
/// of the implicit TagId/AreaId/Timestamp.
inline SchemaRegistry abcd_schemas() {
    SchemaRegistry registry;
    for (const char* type : {"A", "B", "C", "D"}) {
        registry.register_schema(EventSchema(type, {{"Val", AttrKind::Integer}}));
    }
    return registry;
}

/// Builtins with inert handlers; enough for validation and pure queries.
inline BuiltinRegistry stub_builtins() {
    BuiltinRegistry registry;
    registry.register_fn({"_updateLocation", 3,
                          [](std::span<const Value>) -> ReturnedValue { return std::monostate{}; }});
    registry.register_fn({"_retrieveLocation", 1, [](std::span<const Value> args) -> ReturnedValue {
                              return "desc:" + value_to_string(args[0]);
                          }});
    registry.register_fn({"_retrieveHistory", 1,
                          [](std::span<const Value>) -> ReturnedValue { return std::string{}; }});
    return registry;
}

inline EventPtr abcd_event(const SchemaRegistry& schemas, const std::string& type,
                           const std::string& tag, const std::string& area, std::int64_t val,
                           LogicalTime ts, SeqNo seq) {
    return make_event_ptr(schemas, type,
                          {{"TagId", tag}, {"AreaId", area}, {"Val", val}}, ts, seq);
}

inline ValidatedQuery parse_and_validate(const std::string& text, const SchemaRegistry& schemas,
                                         const BuiltinRegistry& builtins,
                                         std::int64_t unit_ms = 1000,
                                         const std::string& id = "q") {
    return validate_query(parse_query(text, id), schemas, builtins, unit_ms);
}

inline const std::string kQ1Text =
    "EVENT SEQ(SHELF_READING x, !(COUNTER_READING y), EXIT_READING z)\n"
    "WHERE x.TagId = y.TagId AND x.TagId = z.TagId\n"
    "WITHIN 12 hours\n"
    "RETURN x.TagId, x.ProductName, z.AreaId, _retrieveLocation(z.AreaId)\n";

inline const std::string kQ2Text =
    "EVENT SEQ(SHELF_READING x, SHELF_READING y)\n"
    "WHERE x.TagId = y.TagId AND x.AreaId != y.AreaId\n"
    "WITHIN 1 hour\n"
    "RETURN _updateLocation(y.TagId, y.AreaId, y.Timestamp)\n";

}// namespace sase::testing

#endif
