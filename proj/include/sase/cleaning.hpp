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

#ifndef SASE_CLEANING_HPP
#define SASE_CLEANING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sase/event.hpp"

namespace sase {

/// Expected tag id shape: fixed-length hex, 24 characters by default
/// (EPC-style). Shorter ids are truncated reads.
struct IdFormat {
    std::size_t length = 24;

    bool matches(std::string_view id) const;
};

struct CatalogEntry {
    std::string product_name;
    std::string expiration_date;
    std::string saleable_state;
};

/// Configuration of the cleaning and association layers.
struct PipelineConfig {
    IdFormat id_format;
    /// Smoothing window w in logical units; gaps of up to w units between
    /// consecutive reads of the same (tag, reader) are filled in. 0 disables
    /// smoothing.
    std::int64_t smoothing_window = 0;
    /// Duration of one logical time unit.
    std::int64_t unit_duration_ms = 1000;
    /// Wall-clock origin of logical time; defaults to the first reading.
    std::optional<std::int64_t> epoch_origin_ms;
    std::map<std::string, std::string> reader_to_area;
    /// Simulated ONS: per-tag product metadata.
    std::map<std::string, CatalogEntry> catalog;
    std::map<std::string, std::string> area_to_event_type;
    /// Areas acting as loading / unloading zones for containment updates.
    std::vector<std::string> loading_zones;
    std::vector<std::string> unloading_zones;
    /// Tags with this prefix are containers (boxes, pallets).
    std::string container_tag_prefix = "C0";

    const std::string& area_of(const std::string& reader) const;
    bool is_container(std::string_view tag) const;
};

/// Per-layer counters reported by `clean --metrics`.
struct CleaningMetrics {
    std::uint64_t dropped_truncated = 0;
    std::uint64_t dropped_unknown_reader = 0;
    std::uint64_t dropped_before_origin = 0;
    std::uint64_t synthesized = 0;
    std::uint64_t duplicates_removed = 0;
    std::uint64_t catalog_misses = 0;
    std::uint64_t events_emitted = 0;
};

struct TimestampedReading {
    std::string tag;
    std::string reader;
    LogicalTime ts = 0;
    bool synthetic = false;
};

/// Layer 1: drops readings with malformed tag ids or unmapped readers.
/// Order preserved; drops are counted, never errors.
std::vector<RawReading> filter_anomalies(const std::vector<RawReading>& readings,
                                         const PipelineConfig& config, CleaningMetrics& metrics);

/// Time conversion: logical_ts = floor((wall - origin) / unit). Readings
/// before the configured origin are dropped as anomalies.
std::vector<TimestampedReading> convert_time(const std::vector<RawReading>& readings,
                                             const PipelineConfig& config,
                                             CleaningMetrics& metrics);

/// Temporal smoothing: per (tag, reader), gaps 1 < t1 - t0 <= w between
/// consecutive reads are filled with synthetic readings at every unit in
/// between; larger gaps are left as absences. Never removes a reading.
std::vector<TimestampedReading> smooth(const std::vector<TimestampedReading>& readings,
                                       const PipelineConfig& config, CleaningMetrics& metrics);

/// Deduplication: at most one reading per (tag, area, ts); readers covering
/// the same area collapse. First occurrence kept.
std::vector<TimestampedReading> deduplicate(const std::vector<TimestampedReading>& readings,
                                            const PipelineConfig& config,
                                            CleaningMetrics& metrics);

/// Event generation: each reading becomes an event of the area's type with
/// TagId, AreaId, ProductName (from the catalog) and Timestamp. Catalog
/// misses drop the reading.
std::vector<EventPtr> generate_events(const std::vector<TimestampedReading>& readings,
                                      const PipelineConfig& config, const SchemaRegistry& schemas,
                                      CleaningMetrics& metrics);

/// filter -> convert -> smooth -> dedup -> generate.
std::vector<EventPtr> run_pipeline(const std::vector<RawReading>& readings,
                                   const PipelineConfig& config, const SchemaRegistry& schemas,
                                   CleaningMetrics& metrics);

/// Rejects configs violating the reader/area/event-type mapping invariants.
void validate_pipeline_config(const PipelineConfig& config, const SchemaRegistry& schemas);

}// namespace sase

#endif
