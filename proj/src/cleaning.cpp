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

#include "sase/cleaning.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include "sase/errors.hpp"

namespace sase {

bool IdFormat::matches(std::string_view id) const {
    if (id.size() != length) return false;
    return std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isxdigit(c); });
}

const std::string& PipelineConfig::area_of(const std::string& reader) const {
    auto it = reader_to_area.find(reader);
    if (it == reader_to_area.end()) {
        fail(ErrorCode::ConfigError, "reader '" + reader + "' has no area mapping");
    }
    return it->second;
}

bool PipelineConfig::is_container(std::string_view tag) const {
    return !container_tag_prefix.empty() && tag.starts_with(container_tag_prefix);
}

void validate_pipeline_config(const PipelineConfig& config, const SchemaRegistry& schemas) {
    if (config.unit_duration_ms <= 0) {
        fail(ErrorCode::ConfigError, "unit_duration_ms must be positive");
    }
    if (config.smoothing_window < 0) {
        fail(ErrorCode::ConfigError, "smoothing_window must be non-negative");
    }
    for (const auto& [reader, area] : config.reader_to_area) {
        auto it = config.area_to_event_type.find(area);
        if (it == config.area_to_event_type.end()) {
            fail(ErrorCode::ConfigError,
                 "area '" + area + "' (reader '" + reader + "') has no event type mapping");
        }
        if (schemas.find(it->second) == nullptr) {
            fail(ErrorCode::ConfigError,
                 "area '" + area + "' maps to unregistered event type '" + it->second + "'");
        }
    }
}

std::vector<RawReading> filter_anomalies(const std::vector<RawReading>& readings,
                                         const PipelineConfig& config, CleaningMetrics& metrics) {
    std::vector<RawReading> kept;
    kept.reserve(readings.size());
    for (const auto& reading : readings) {
        if (!config.id_format.matches(reading.tag)) {
            ++metrics.dropped_truncated;
            continue;
        }
        if (!config.reader_to_area.contains(reading.reader)) {
            ++metrics.dropped_unknown_reader;
            continue;
        }
        kept.push_back(reading);
    }
    return kept;
}

std::vector<TimestampedReading> convert_time(const std::vector<RawReading>& readings,
                                             const PipelineConfig& config,
                                             CleaningMetrics& metrics) {
    std::vector<TimestampedReading> out;
    out.reserve(readings.size());
    if (readings.empty()) return out;
    const std::int64_t origin =
        config.epoch_origin_ms ? *config.epoch_origin_ms : readings.front().wall_ts_ms;
    for (const auto& reading : readings) {
        if (reading.wall_ts_ms < origin) {
            ++metrics.dropped_before_origin;
            continue;
        }
        TimestampedReading tr;
        tr.tag = reading.tag;
        tr.reader = reading.reader;
        tr.ts = (reading.wall_ts_ms - origin) / config.unit_duration_ms;
        out.push_back(std::move(tr));
    }
    return out;
}

std::vector<TimestampedReading> smooth(const std::vector<TimestampedReading>& readings,
                                       const PipelineConfig& config, CleaningMetrics& metrics) {
    if (config.smoothing_window == 0) return readings;

    std::vector<TimestampedReading> synthetic;
    std::map<std::pair<std::string, std::string>, LogicalTime> last_seen;
    for (const auto& reading : readings) {
        auto key = std::pair(reading.tag, reading.reader);
        auto it = last_seen.find(key);
        if (it != last_seen.end()) {
            LogicalTime gap = reading.ts - it->second;
            if (gap > 1 && gap <= config.smoothing_window) {
                for (LogicalTime t = it->second + 1; t < reading.ts; ++t) {
                    synthetic.push_back({reading.tag, reading.reader, t, true});
                    ++metrics.synthesized;
                }
            }
        }
        last_seen[key] = reading.ts;
    }
    if (synthetic.empty()) return readings;

    // Merge keeping ts order; originals sort before synthetics of the same
    // tick, both in their existing order.
    std::vector<TimestampedReading> merged;
    merged.reserve(readings.size() + synthetic.size());
    merged.insert(merged.end(), readings.begin(), readings.end());
    merged.insert(merged.end(), synthetic.begin(), synthetic.end());
    std::stable_sort(merged.begin(), merged.end(),
                     [](const TimestampedReading& a, const TimestampedReading& b) {
                         return std::tuple(a.ts, a.synthetic) < std::tuple(b.ts, b.synthetic);
                     });
    return merged;
}

std::vector<TimestampedReading> deduplicate(const std::vector<TimestampedReading>& readings,
                                            const PipelineConfig& config,
                                            CleaningMetrics& metrics) {
    std::vector<TimestampedReading> out;
    out.reserve(readings.size());
    std::set<std::tuple<std::string, std::string, LogicalTime>> seen;
    for (const auto& reading : readings) {
        const std::string& area = config.area_of(reading.reader);
        if (!seen.emplace(reading.tag, area, reading.ts).second) {
            ++metrics.duplicates_removed;
            continue;
        }
        out.push_back(reading);
    }
    return out;
}

std::vector<EventPtr> generate_events(const std::vector<TimestampedReading>& readings,
                                      const PipelineConfig& config, const SchemaRegistry& schemas,
                                      CleaningMetrics& metrics) {
    std::vector<EventPtr> events;
    events.reserve(readings.size());
    SeqNo seq = 0;
    for (const auto& reading : readings) {
        auto catalog_it = config.catalog.find(reading.tag);
        if (catalog_it == config.catalog.end()) {
            ++metrics.catalog_misses;// simulated ONS lookup failed
            continue;
        }
        const std::string& area = config.area_of(reading.reader);
        const std::string& type = config.area_to_event_type.at(area);
        events.push_back(make_event_ptr(schemas, type,
                                        {{"TagId", reading.tag},
                                         {"AreaId", area},
                                         {"ProductName", catalog_it->second.product_name},
                                         {"Timestamp", reading.ts}},
                                        reading.ts, seq));
        ++seq;
        ++metrics.events_emitted;
    }
    return events;
}

std::vector<EventPtr> run_pipeline(const std::vector<RawReading>& readings,
                                   const PipelineConfig& config, const SchemaRegistry& schemas,
                                   CleaningMetrics& metrics) {
    auto filtered = filter_anomalies(readings, config, metrics);
    auto timestamped = convert_time(filtered, config, metrics);
    auto smoothed = smooth(timestamped, config, metrics);
    auto unique = deduplicate(smoothed, config, metrics);
    return generate_events(unique, config, schemas, metrics);
}

}// namespace sase
