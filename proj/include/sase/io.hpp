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

#ifndef SASE_IO_HPP
#define SASE_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sase/cleaning.hpp"
#include "sase/event.hpp"
#include "sase/simulator.hpp"

namespace sase {

/// Raw readings travel as CSV: tag_id,reader_id,wall_ts_ms (header line
/// optional on input, written on output).
std::vector<RawReading> load_readings_csv(std::istream& in);
void write_readings_csv(std::ostream& out, std::span<const RawReading> readings);

/// Events travel as JSONL: {"type": ..., "ts": ..., "attrs": {...}} per
/// line; seq is the 0-based line number. Null attribute values are rejected.
std::vector<EventPtr> load_events_jsonl(std::istream& in, const SchemaRegistry& schemas);
void write_events_jsonl(std::ostream& out, std::span<const EventPtr> events);
nlohmann::json event_to_json(const Event& event);

nlohmann::json composite_to_json(const CompositeEvent& composite);
std::string composite_to_pretty(const CompositeEvent& composite);

PipelineConfig pipeline_config_from_json(const nlohmann::json& j);
nlohmann::json pipeline_config_to_json(const PipelineConfig& config);

Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::json truth_to_json(const TruthEvent& truth);
std::vector<TruthEvent> load_truth_jsonl(std::istream& in);

/// Schema files: {"schemas": [{"type": ..., "attributes": [{"name": ...,
/// "kind": "string"|"integer"|"identifier"}]}]}. The implicit TagId, AreaId
/// and Timestamp attributes are added automatically.
SchemaRegistry schemas_from_json(const nlohmann::json& j);

nlohmann::json parse_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

}// namespace sase

#endif
