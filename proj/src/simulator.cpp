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

#include "sase/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

#include "sase/errors.hpp"
#include "sase/rng.hpp"

namespace sase {

std::string_view action_kind_name(ScenarioAction::Kind kind) {
    switch (kind) {
        case ScenarioAction::Kind::Place: return "place";
        case ScenarioAction::Kind::Move: return "move";
        case ScenarioAction::Kind::Checkout: return "checkout";
        case ScenarioAction::Kind::Exit: return "exit";
        case ScenarioAction::Kind::Load: return "load";
        case ScenarioAction::Kind::Unload: return "unload";
    }
    return "?";
}

void validate_scenario(const Scenario& scenario) {
    for (double p : {scenario.noise.drop_probability, scenario.noise.duplicate_probability,
                     scenario.noise.truncate_probability}) {
        if (p < 0.0 || p > 1.0) {
            fail(ErrorCode::InvalidScenario, "noise probabilities must be within [0, 1]");
        }
    }
    std::int64_t previous_ms = 0;
    bool first = true;
    for (const auto& action : scenario.script) {
        if (!first && action.at_ms < previous_ms) {
            fail(ErrorCode::InvalidScenario, "action offsets must be non-decreasing");
        }
        previous_ms = action.at_ms;
        first = false;
        if (!scenario.pipeline.reader_to_area.contains(action.reader)) {
            fail(ErrorCode::InvalidScenario,
                 "action references unknown reader '" + action.reader + "'");
        }
        if (!scenario.pipeline.catalog.contains(action.tag)) {
            fail(ErrorCode::InvalidScenario,
                 "tag '" + action.tag + "' is missing from the catalog");
        }
        if (action.kind == ScenarioAction::Kind::Load) {
            if (action.container.empty()) {
                fail(ErrorCode::InvalidScenario, "load action needs a container tag");
            }
            if (!scenario.pipeline.catalog.contains(action.container)) {
                fail(ErrorCode::InvalidScenario,
                     "container '" + action.container + "' is missing from the catalog");
            }
            if (!scenario.pipeline.is_container(action.container)) {
                fail(ErrorCode::InvalidScenario,
                     "container '" + action.container + "' lacks the container tag prefix");
            }
        }
    }
    if (scenario.shoplift_window_ms % scenario.pipeline.unit_duration_ms != 0) {
        fail(ErrorCode::InvalidScenario,
             "shoplift window must be a whole number of logical units");
    }
}

namespace {

struct Emission {
    std::string tag;
    std::string reader;
    std::int64_t at_ms = 0;
};

std::string truncate_id(const std::string& tag) {
    return tag.substr(0, std::max<std::size_t>(1, tag.size() / 2));
}

}// namespace

SimulationResult simulate(const Scenario& scenario) {
    validate_scenario(scenario);
    SimulationResult result;
    SplitMix64 rng(scenario.seed);

    // Scripted emissions, in order. Load reads the container first, then the
    // item, in the same instant; the pairing rule downstream needs both in
    // one logical unit.
    std::vector<Emission> emissions;
    for (const auto& action : scenario.script) {
        if (action.kind == ScenarioAction::Kind::Load) {
            emissions.push_back({action.container, action.reader, action.at_ms});
        }
        emissions.push_back({action.tag, action.reader, action.at_ms});
    }

    // Noise: per emission, decide drop, truncation, duplication. Valid
    // emissions (kept and untampered) drive the ground truth.
    std::vector<Emission> valid;
    for (const auto& emission : emissions) {
        if (rng.next_unit() < scenario.noise.drop_probability) {
            ++result.metrics.injected_dropped;
            continue;
        }
        bool truncated = rng.next_unit() < scenario.noise.truncate_probability;
        bool duplicated = rng.next_unit() < scenario.noise.duplicate_probability;
        std::string tag = truncated ? truncate_id(emission.tag) : emission.tag;
        result.readings.push_back({tag, emission.reader, emission.at_ms});
        ++result.metrics.readings_emitted;
        if (truncated) ++result.metrics.injected_truncated;
        if (duplicated) {
            result.readings.push_back({tag, emission.reader, emission.at_ms});
            ++result.metrics.readings_emitted;
            // A duplicated truncated read is removed by the anomaly filter,
            // not deduplication; count it where it gets dropped.
            if (truncated) {
                ++result.metrics.injected_truncated;
            } else {
                ++result.metrics.injected_duplicates;
            }
        }
        if (!truncated) valid.push_back(emission);
    }

    // Ground truth mirrors the cleaned stream: logical ticks anchored to the
    // first valid reading, deduplicated per (tag, area, tick). Scenarios
    // meant for exact-detection checks keep smoothing at 0, so no synthetic
    // readings arise.
    if (valid.empty()) return result;
    const std::int64_t origin = scenario.pipeline.epoch_origin_ms
                                    ? *scenario.pipeline.epoch_origin_ms
                                    : valid.front().at_ms;
    const std::int64_t unit = scenario.pipeline.unit_duration_ms;

    struct CleanReading {
        std::string tag;
        std::string area;
        std::string event_type;
        LogicalTime ts = 0;
    };
    std::vector<CleanReading> cleaned;
    std::set<std::tuple<std::string, std::string, LogicalTime>> seen;
    for (const auto& emission : valid) {
        if (emission.at_ms < origin) continue;
        const std::string& area = scenario.pipeline.area_of(emission.reader);
        LogicalTime ts = (emission.at_ms - origin) / unit;
        if (!seen.emplace(emission.tag, area, ts).second) continue;
        auto type_it = scenario.pipeline.area_to_event_type.find(area);
        if (type_it == scenario.pipeline.area_to_event_type.end()) continue;
        cleaned.push_back({emission.tag, area, type_it->second, ts});
    }

    const LogicalTime window_ticks = scenario.shoplift_window_ms / unit;
    for (std::size_t si = 0; si < cleaned.size(); ++si) {
        const auto& shelf = cleaned[si];
        if (shelf.event_type != "SHELF_READING") continue;

        // Misplaced inventory: the product sits on a shelf it does not
        // belong on.
        auto catalog_it = scenario.pipeline.catalog.find(shelf.tag);
        if (catalog_it != scenario.pipeline.catalog.end()) {
            auto expected = scenario.expected_shelf_by_product.find(
                catalog_it->second.product_name);
            if (expected != scenario.expected_shelf_by_product.end() &&
                expected->second != shelf.area) {
                result.truth.push_back({"misplaced", shelf.tag, shelf.area, shelf.ts, shelf.ts});
            }
        }

        // Shoplifting: a later exit of the same tag within the window, with
        // no checkout strictly in between.
        for (std::size_t xi = si + 1; xi < cleaned.size(); ++xi) {
            const auto& exit = cleaned[xi];
            if (exit.tag != shelf.tag || exit.event_type != "EXIT_READING") continue;
            if (exit.ts - shelf.ts > window_ticks) continue;
            bool checked_out = false;
            for (std::size_t ci = si + 1; ci < xi; ++ci) {
                if (cleaned[ci].tag == shelf.tag &&
                    cleaned[ci].event_type == "COUNTER_READING") {
                    checked_out = true;
                    break;
                }
            }
            if (!checked_out) {
                result.truth.push_back({"shoplift", shelf.tag, exit.area, shelf.ts, exit.ts});
            }
        }
    }
    return result;
}

std::vector<std::pair<std::string, std::string>> misplaced_inventory_queries(
    const Scenario& scenario) {
    std::vector<std::pair<std::string, std::string>> queries;
    for (const auto& [product, shelf_area] : scenario.expected_shelf_by_product) {
        std::string slug;
        for (char c : product) {
            slug.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
        }
        std::ostringstream text;
        text << "-- " << product << " belongs on " << shelf_area << "\n"
             << "EVENT SEQ(SHELF_READING x)\n"
             << "WHERE x.ProductName = \"" << product << "\" AND x.AreaId != \"" << shelf_area
             << "\"\n"
             << "RETURN x.TagId, x.AreaId, x.Timestamp, _retrieveHistory(x.TagId)\n";
        queries.emplace_back("misplaced_" + slug, text.str());
    }
    return queries;
}

}// namespace sase
