#include <doctest.h>

#include "helpers.hpp"
#include "sase/validate.hpp"

using namespace sase;
using namespace sase::testing;

namespace {

ErrorCode validation_code(const std::string& text, const SchemaRegistry& schemas,
                          const BuiltinRegistry& builtins, std::int64_t unit_ms = 1000) {
    try {
        validate_query(parse_query(text), schemas, builtins, unit_ms);
        return ErrorCode::ConfigError;// placeholder: validation unexpectedly passed
    } catch (const SaseError& e) {
        return e.code();
    }
}

}// namespace

TEST_CASE("the shoplifting query validates against the retail schemas") {
    auto schemas = SchemaRegistry::default_retail();
    auto builtins = stub_builtins();
    ValidatedQuery q = parse_and_validate(kQ1Text, schemas, builtins, 1000, "q1");
    CHECK(q.ast.from_stream == "default");
    // 12 hours at 1 s per unit
    CHECK(q.window_units == 12 * 3600);
    CHECK(q.positive_components == std::vector<std::size_t>{0, 2});
    CHECK(q.is_negated("y"));
    CHECK_FALSE(q.is_negated("x"));

    // 2 s logical units divide 12 h evenly as well
    ValidatedQuery coarse = parse_and_validate(kQ1Text, schemas, builtins, 2000, "q1");
    CHECK(coarse.window_units == 6 * 3600);
}

TEST_CASE("unregistered event types are rejected") {
    SchemaRegistry partial;
    partial.register_schema(EventSchema("SHELF_READING", {{"ProductName", AttrKind::String}}));
    partial.register_schema(EventSchema("EXIT_READING", {{"ProductName", AttrKind::String}}));
    auto builtins = stub_builtins();
    CHECK(validation_code(kQ1Text, partial, builtins) == ErrorCode::UnknownEventType);
}

TEST_CASE("negation placement rules") {
    auto schemas = abcd_schemas();
    auto builtins = stub_builtins();
    CHECK(validation_code("EVENT SEQ(!(A a), B b) RETURN b.TagId", schemas, builtins) ==
          ErrorCode::NegationPositionError);
    CHECK(validation_code("EVENT SEQ(A a, !(B b)) RETURN a.TagId", schemas, builtins) ==
          ErrorCode::NegationPositionError);
    CHECK(validation_code("EVENT SEQ(A a, !(B b), !(C c), D d) RETURN a.TagId", schemas,
                          builtins) == ErrorCode::NegationPositionError);
    CHECK(validation_code("EVENT SEQ(!(A a)) RETURN a.TagId", schemas, builtins) ==
          ErrorCode::NegationPositionError);
    // interior negation is fine
    CHECK_NOTHROW(parse_and_validate("EVENT SEQ(A a, !(B b), C c) RETURN a.TagId", schemas,
                                     builtins));
}

TEST_CASE("attribute and type checks") {
    auto schemas = abcd_schemas();
    auto builtins = stub_builtins();
    CHECK(validation_code("EVENT SEQ(A a) WHERE a.Missing = 1 RETURN a.TagId", schemas,
                          builtins) == ErrorCode::UnknownAttribute);
    CHECK(validation_code("EVENT SEQ(A a) WHERE q.Val = 1 RETURN a.TagId", schemas, builtins) ==
          ErrorCode::UnknownAttribute);
    CHECK(validation_code("EVENT SEQ(A a) WHERE a.Val = \"x\" RETURN a.TagId", schemas,
                          builtins) == ErrorCode::TypeMismatch);
    CHECK(validation_code("EVENT SEQ(A a) WHERE a.TagId = 5 RETURN a.TagId", schemas, builtins) ==
          ErrorCode::TypeMismatch);
    CHECK(validation_code("EVENT SEQ(A a, B b) WHERE a.Val = b.TagId RETURN a.TagId", schemas,
                          builtins) == ErrorCode::TypeMismatch);
    // textual identifier vs string literal is fine
    CHECK_NOTHROW(parse_and_validate("EVENT SEQ(A a) WHERE a.AreaId = \"S1\" RETURN a.TagId",
                                     schemas, builtins));
    // integer comparisons of any flavour are fine
    CHECK_NOTHROW(parse_and_validate(
        "EVENT SEQ(A a, B b) WHERE a.Val <= b.Val AND a.Val >= 0 RETURN a.TagId", schemas,
        builtins));
}

TEST_CASE("negated variables only compare against positive attributes or literals") {
    auto schemas = abcd_schemas();
    auto builtins = stub_builtins();
    CHECK_NOTHROW(parse_and_validate(
        "EVENT SEQ(A a, !(B b), C c) WHERE b.TagId = a.TagId AND b.Val = 3 RETURN a.TagId",
        schemas, builtins));
    CHECK(validation_code("EVENT SEQ(A a, !(B b), C c) WHERE b.Val = b.Val RETURN a.TagId",
                          schemas, builtins) == ErrorCode::NegationPositionError);
    CHECK(validation_code("EVENT SEQ(A a, !(B b), C c) RETURN b.TagId", schemas, builtins) ==
          ErrorCode::NegationPositionError);
    CHECK(validation_code("EVENT SEQ(A a, !(B b), C c) RETURN _retrieveLocation(b.AreaId)",
                          schemas, builtins) == ErrorCode::NegationPositionError);
}

TEST_CASE("builtin resolution") {
    auto schemas = abcd_schemas();
    auto builtins = stub_builtins();
    CHECK(validation_code("EVENT SEQ(A a) RETURN _noSuchFn(a.TagId)", schemas, builtins) ==
          ErrorCode::UnresolvedBuiltin);
    CHECK(validation_code("EVENT SEQ(A a) RETURN _retrieveLocation(a.AreaId, a.TagId)", schemas,
                          builtins) == ErrorCode::UnresolvedBuiltin);
}

TEST_CASE("window conversion must be exact") {
    auto schemas = abcd_schemas();
    auto builtins = stub_builtins();
    // 1 second with 2 s units does not divide evenly
    CHECK(validation_code("EVENT SEQ(A a) WITHIN 1 seconds RETURN a.TagId", schemas, builtins,
                          2000) == ErrorCode::WindowNotConvertible);
    ValidatedQuery q =
        parse_and_validate("EVENT SEQ(A a) WITHIN 90 minutes RETURN a.TagId", schemas, builtins,
                           60 * 1000);
    CHECK(q.window_units == 90);
    ValidatedQuery units =
        parse_and_validate("EVENT SEQ(A a) WITHIN 7 units RETURN a.TagId", schemas, builtins, 123);
    CHECK(units.window_units == 7);
    ValidatedQuery unwindowed =
        parse_and_validate("EVENT SEQ(A a) RETURN a.TagId", schemas, builtins);
    CHECK_FALSE(unwindowed.window_units.has_value());
}
