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

#include "sase/event.hpp"

#include <algorithm>

namespace sase {

std::string_view attr_kind_name(AttrKind k) {
    switch (k) {
        case AttrKind::Integer: return "integer";
        case AttrKind::String: return "string";
        case AttrKind::Identifier: return "identifier";
    }
    return "?";
}

std::optional<AttrKind> attr_kind_from_name(std::string_view name) {
    if (name == "integer") return AttrKind::Integer;
    if (name == "string") return AttrKind::String;
    if (name == "identifier") return AttrKind::Identifier;
    return std::nullopt;
}

std::strong_ordering compare_values(const Value& a, const Value& b) {
    if (std::holds_alternative<std::int64_t>(a)) {
        return std::get<std::int64_t>(a) <=> std::get<std::int64_t>(b);
    }
    int c = std::get<std::string>(a).compare(std::get<std::string>(b));
    return c <=> 0;
}

std::string value_to_string(const Value& v) {
    if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
    return std::get<std::string>(v);
}

EventSchema::EventSchema(std::string type_name, std::vector<AttrDecl> extra_attributes)
    : type_name_(std::move(type_name)) {
    attributes_.push_back({"TagId", AttrKind::Identifier});
    attributes_.push_back({"AreaId", AttrKind::Identifier});
    attributes_.push_back({"Timestamp", AttrKind::Integer});
    for (auto& attr : extra_attributes) {
        if (find(attr.name) != nullptr) {
            fail(ErrorCode::ConfigError,
                 "duplicate attribute '" + attr.name + "' in schema " + type_name_);
        }
        attributes_.push_back(std::move(attr));
    }
}

const AttrDecl* EventSchema::find(std::string_view name) const {
    for (const auto& attr : attributes_) {
        if (attr.name == name) return &attr;
    }
    return nullptr;
}

void SchemaRegistry::register_schema(EventSchema schema) {
    auto name = schema.type_name();
    if (!schemas_.emplace(name, std::move(schema)).second) {
        fail(ErrorCode::ConfigError, "schema '" + name + "' registered twice");
    }
}

const EventSchema* SchemaRegistry::find(std::string_view type_name) const {
    auto it = schemas_.find(type_name);
    return it == schemas_.end() ? nullptr : &it->second;
}

std::vector<std::string> SchemaRegistry::type_names() const {
    std::vector<std::string> names;
    names.reserve(schemas_.size());
    for (const auto& [name, schema] : schemas_) names.push_back(name);
    return names;
}

SchemaRegistry SchemaRegistry::default_retail() {
    SchemaRegistry registry;
    for (const char* type : {"SHELF_READING", "COUNTER_READING", "EXIT_READING", "LOAD_READING",
                             "UNLOAD_READING"}) {
        registry.register_schema(EventSchema(type, {{"ProductName", AttrKind::String}}));
    }
    return registry;
}

const Value* Event::find_attr(std::string_view name) const {
    for (const auto& [attr_name, value] : attrs) {
        if (attr_name == name) return &value;
    }
    return nullptr;
}

const Value& Event::attr(std::string_view name) const {
    const Value* v = find_attr(name);
    if (v == nullptr) {
        fail(ErrorCode::SchemaMismatch, "event " + type + " has no attribute " + std::string(name));
    }
    return *v;
}

Event make_event(const SchemaRegistry& registry, const std::string& type_name,
                 const std::vector<std::pair<std::string, Value>>& attrs, LogicalTime ts,
                 SeqNo seq) {
    const EventSchema* schema = registry.find(type_name);
    if (schema == nullptr) {
        fail(ErrorCode::UnknownType, "event type '" + type_name + "' is not registered");
    }
    for (const auto& [name, value] : attrs) {
        (void)value;
        if (schema->find(name) == nullptr) {
            fail(ErrorCode::SchemaMismatch,
                 "attribute '" + name + "' is not declared for " + type_name);
        }
    }

    Event event;
    event.type = type_name;
    event.ts = ts;
    event.seq = seq;
    event.attrs.reserve(schema->attributes().size());
    for (const auto& decl : schema->attributes()) {
        auto it = std::find_if(attrs.begin(), attrs.end(),
                               [&](const auto& kv) { return kv.first == decl.name; });
        if (it == attrs.end()) {
            if (decl.name == "Timestamp") {
                event.attrs.emplace_back(decl.name, Value(ts));
                continue;
            }
            fail(ErrorCode::SchemaMismatch,
                 "attribute '" + decl.name + "' missing for " + type_name);
        }
        bool want_int = decl.kind == AttrKind::Integer;
        bool have_int = std::holds_alternative<std::int64_t>(it->second);
        if (want_int != have_int) {
            fail(ErrorCode::SchemaMismatch, "attribute '" + decl.name + "' of " + type_name +
                                                " must be " +
                                                std::string(attr_kind_name(decl.kind)));
        }
        event.attrs.emplace_back(decl.name, it->second);
    }
    return event;
}

}// namespace sase
