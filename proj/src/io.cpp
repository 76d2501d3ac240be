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

#include "sase/io.hpp"

#include <fstream>
#include <sstream>

#include "sase/errors.hpp"

namespace sase {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

}// namespace

std::vector<RawReading> load_readings_csv(std::istream& in) {
    std::vector<RawReading> readings;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (line_no == 1 && line.starts_with("tag_id")) continue;// header
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            fail(ErrorCode::IoError,
                 "reading CSV line " + std::to_string(line_no) + ": expected 3 fields");
        }
        RawReading reading;
        reading.tag = fields[0];
        reading.reader = fields[1];
        try {
            reading.wall_ts_ms = std::stoll(fields[2]);
        } catch (const std::exception&) {
            fail(ErrorCode::IoError,
                 "reading CSV line " + std::to_string(line_no) + ": bad wall_ts_ms");
        }
        if (reading.wall_ts_ms < 0) {
            fail(ErrorCode::IoError,
                 "reading CSV line " + std::to_string(line_no) + ": negative wall_ts_ms");
        }
        readings.push_back(std::move(reading));
    }
    return readings;
}

void write_readings_csv(std::ostream& out, std::span<const RawReading> readings) {
    out << "tag_id,reader_id,wall_ts_ms\n";
    for (const auto& reading : readings) {
        out << reading.tag << "," << reading.reader << "," << reading.wall_ts_ms << "\n";
    }
}

std::vector<EventPtr> load_events_jsonl(std::istream& in, const SchemaRegistry& schemas) {
    std::vector<EventPtr> events;
    std::string line;
    SeqNo seq = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            fail(ErrorCode::IoError, "event line " + std::to_string(line_no) + ": invalid JSON");
        }
        if (!j.contains("type") || !j.contains("ts")) {
            fail(ErrorCode::IoError,
                 "event line " + std::to_string(line_no) + ": 'type' and 'ts' are required");
        }
        std::vector<std::pair<std::string, Value>> attrs;
        const nlohmann::json attrs_json = j.value("attrs", nlohmann::json::object());
        for (const auto& [name, value] : attrs_json.items()) {
            if (value.is_string()) {
                attrs.emplace_back(name, value.get<std::string>());
            } else if (value.is_number_integer()) {
                attrs.emplace_back(name, value.get<std::int64_t>());
            } else {
                fail(ErrorCode::IoError, "event line " + std::to_string(line_no) +
                                             ": attribute '" + name +
                                             "' must be a string or integer (nulls forbidden)");
            }
        }
        LogicalTime ts = j.at("ts").get<LogicalTime>();
        if (ts < 0) {
            fail(ErrorCode::IoError,
                 "event line " + std::to_string(line_no) + ": negative timestamp");
        }
        events.push_back(
            make_event_ptr(schemas, j.at("type").get<std::string>(), attrs, ts, seq));
        ++seq;
    }
    return events;
}

nlohmann::json event_to_json(const Event& event) {
    nlohmann::json attrs = nlohmann::json::object();
    for (const auto& [name, value] : event.attrs) {
        if (std::holds_alternative<std::int64_t>(value)) {
            attrs[name] = std::get<std::int64_t>(value);
        } else {
            attrs[name] = std::get<std::string>(value);
        }
    }
    return {{"type", event.type}, {"ts", event.ts}, {"attrs", attrs}};
}

void write_events_jsonl(std::ostream& out, std::span<const EventPtr> events) {
    for (const auto& event : events) out << event_to_json(*event).dump() << "\n";
}

namespace {

nlohmann::json returned_value_to_json(const ReturnedValue& value) {
    if (std::holds_alternative<std::monostate>(value)) return nullptr;
    if (std::holds_alternative<std::int64_t>(value)) return std::get<std::int64_t>(value);
    return std::get<std::string>(value);
}

}// namespace

nlohmann::json composite_to_json(const CompositeEvent& composite) {
    nlohmann::json bindings = nlohmann::json::object();
    for (const auto& [variable, event] : composite.bindings) {
        nlohmann::json bound = event_to_json(*event);
        bound["seq"] = event->seq;
        bindings[variable] = bound;
    }
    nlohmann::json returned = nlohmann::json::array();
    for (const auto& [label, value] : composite.returned) {
        returned.push_back({{"label", label}, {"value", returned_value_to_json(value)}});
    }
    return {{"query", composite.query_id}, {"bindings", bindings}, {"return", returned}};
}

std::string composite_to_pretty(const CompositeEvent& composite) {
    std::ostringstream out;
    out << composite.query_id << ":";
    for (const auto& [variable, event] : composite.bindings) {
        out << " " << variable << "=" << event->type << "@" << event->ts;
    }
    for (const auto& [label, value] : composite.returned) {
        out << "\n    " << label << " -> ";
        if (std::holds_alternative<std::monostate>(value)) {
            out << "(done)";
        } else if (std::holds_alternative<std::int64_t>(value)) {
            out << std::get<std::int64_t>(value);
        } else {
            out << std::get<std::string>(value);
        }
    }
    return out.str();
}

PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
    PipelineConfig config;
    if (j.contains("id_length")) config.id_format.length = j.at("id_length").get<std::size_t>();
    if (j.contains("smoothing_window")) {
        config.smoothing_window = j.at("smoothing_window").get<std::int64_t>();
    }
    if (j.contains("unit_duration_ms")) {
        config.unit_duration_ms = j.at("unit_duration_ms").get<std::int64_t>();
    }
    if (j.contains("epoch_origin_ms") && !j.at("epoch_origin_ms").is_null()) {
        config.epoch_origin_ms = j.at("epoch_origin_ms").get<std::int64_t>();
    }
    const nlohmann::json readers = j.value("readers", nlohmann::json::object());
    for (const auto& [reader, area] : readers.items()) {
        config.reader_to_area[reader] = area.get<std::string>();
    }
    const nlohmann::json area_types = j.value("area_types", nlohmann::json::object());
    for (const auto& [area, type] : area_types.items()) {
        config.area_to_event_type[area] = type.get<std::string>();
    }
    const nlohmann::json catalog = j.value("catalog", nlohmann::json::object());
    for (const auto& [tag, entry] : catalog.items()) {
        CatalogEntry catalog_entry;
        catalog_entry.product_name = entry.at("product").get<std::string>();
        catalog_entry.expiration_date = entry.value("expiration", "");
        catalog_entry.saleable_state = entry.value("saleable", "yes");
        config.catalog[tag] = std::move(catalog_entry);
    }
    for (const auto& area : j.value("loading_zones", nlohmann::json::array())) {
        config.loading_zones.push_back(area.get<std::string>());
    }
    for (const auto& area : j.value("unloading_zones", nlohmann::json::array())) {
        config.unloading_zones.push_back(area.get<std::string>());
    }
    if (j.contains("container_tag_prefix")) {
        config.container_tag_prefix = j.at("container_tag_prefix").get<std::string>();
    }
    return config;
}

nlohmann::json pipeline_config_to_json(const PipelineConfig& config) {
    nlohmann::json j;
    j["id_length"] = config.id_format.length;
    j["smoothing_window"] = config.smoothing_window;
    j["unit_duration_ms"] = config.unit_duration_ms;
    j["epoch_origin_ms"] = config.epoch_origin_ms ? nlohmann::json(*config.epoch_origin_ms)
                                                  : nlohmann::json(nullptr);
    j["readers"] = config.reader_to_area;
    j["area_types"] = config.area_to_event_type;
    nlohmann::json catalog = nlohmann::json::object();
    for (const auto& [tag, entry] : config.catalog) {
        catalog[tag] = {{"product", entry.product_name},
                        {"expiration", entry.expiration_date},
                        {"saleable", entry.saleable_state}};
    }
    j["catalog"] = catalog;
    j["loading_zones"] = config.loading_zones;
    j["unloading_zones"] = config.unloading_zones;
    j["container_tag_prefix"] = config.container_tag_prefix;
    return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario scenario;
    scenario.seed = j.value("seed", 0ULL);
    if (j.contains("noise")) {
        const auto& noise = j.at("noise");
        scenario.noise.drop_probability = noise.value("drop", 0.0);
        scenario.noise.duplicate_probability = noise.value("duplicate", 0.0);
        scenario.noise.truncate_probability = noise.value("truncate", 0.0);
    }
    if (!j.contains("pipeline")) {
        fail(ErrorCode::InvalidScenario, "scenario needs an embedded 'pipeline' config");
    }
    scenario.pipeline = pipeline_config_from_json(j.at("pipeline"));
    const nlohmann::json expected_shelves =
        j.value("expected_shelves", nlohmann::json::object());
    for (const auto& [product, area] : expected_shelves.items()) {
        scenario.expected_shelf_by_product[product] = area.get<std::string>();
    }
    if (j.contains("shoplift_window_ms")) {
        scenario.shoplift_window_ms = j.at("shoplift_window_ms").get<std::int64_t>();
    }
    for (const auto& entry : j.value("script", nlohmann::json::array())) {
        ScenarioAction action;
        const std::string kind = entry.at("action").get<std::string>();
        if (kind == "place") {
            action.kind = ScenarioAction::Kind::Place;
        } else if (kind == "move") {
            action.kind = ScenarioAction::Kind::Move;
        } else if (kind == "checkout") {
            action.kind = ScenarioAction::Kind::Checkout;
        } else if (kind == "exit") {
            action.kind = ScenarioAction::Kind::Exit;
        } else if (kind == "load") {
            action.kind = ScenarioAction::Kind::Load;
        } else if (kind == "unload") {
            action.kind = ScenarioAction::Kind::Unload;
        } else {
            fail(ErrorCode::InvalidScenario, "unknown action kind '" + kind + "'");
        }
        action.at_ms = entry.at("at_ms").get<std::int64_t>();
        action.tag = entry.at("tag").get<std::string>();
        action.reader = entry.at("reader").get<std::string>();
        action.container = entry.value("container", "");
        scenario.script.push_back(std::move(action));
    }
    return scenario;
}

nlohmann::json truth_to_json(const TruthEvent& truth) {
    return {{"kind", truth.kind},
            {"tag", truth.tag},
            {"area", truth.area},
            {"first_ts", truth.first_ts},
            {"last_ts", truth.last_ts}};
}

std::vector<TruthEvent> load_truth_jsonl(std::istream& in) {
    std::vector<TruthEvent> truths;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        TruthEvent truth;
        truth.kind = j.at("kind").get<std::string>();
        truth.tag = j.at("tag").get<std::string>();
        truth.area = j.at("area").get<std::string>();
        truth.first_ts = j.at("first_ts").get<LogicalTime>();
        truth.last_ts = j.at("last_ts").get<LogicalTime>();
        truths.push_back(std::move(truth));
    }
    return truths;
}

SchemaRegistry schemas_from_json(const nlohmann::json& j) {
    SchemaRegistry registry;
    for (const auto& schema : j.at("schemas")) {
        std::vector<AttrDecl> attrs;
        for (const auto& attr : schema.value("attributes", nlohmann::json::array())) {
            auto kind = attr_kind_from_name(attr.at("kind").get<std::string>());
            if (!kind) {
                fail(ErrorCode::ConfigError,
                     "unknown attribute kind '" + attr.at("kind").get<std::string>() + "'");
            }
            attrs.push_back({attr.at("name").get<std::string>(), *kind});
        }
        registry.register_schema(EventSchema(schema.at("type").get<std::string>(), attrs));
    }
    return registry;
}

nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::IoError, path + " is not valid JSON");
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}// namespace sase
