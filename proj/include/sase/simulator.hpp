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

#ifndef SASE_SIMULATOR_HPP
#define SASE_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sase/cleaning.hpp"
#include "sase/event.hpp"

namespace sase {

struct NoiseModel {
    double drop_probability = 0.0;
    double duplicate_probability = 0.0;
    double truncate_probability = 0.0;
};

/// One scripted behaviour in the store or warehouse. Each action emits one
/// reading at the mapped reader (Load emits two: container then item).
struct ScenarioAction {
    enum class Kind { Place, Move, Checkout, Exit, Load, Unload };

    Kind kind = Kind::Place;
    std::int64_t at_ms = 0;
    std::string tag;
    /// Reader the action happens at (shelf/counter/exit/zone reader).
    std::string reader;
    /// Container tag, Load only.
    std::string container;
};

std::string_view action_kind_name(ScenarioAction::Kind kind);

/// A deterministic workload: the four-reader retail layout (plus optional
/// warehouse zones), a script of actions and a noise model. The embedded
/// pipeline config supplies the reader layout, catalog and unit duration;
/// expected shelf areas per product drive misplaced-inventory ground truth
/// and query synthesis.
struct Scenario {
    std::uint64_t seed = 0;
    std::vector<ScenarioAction> script;
    NoiseModel noise;
    PipelineConfig pipeline;
    /// product name -> the shelf area it belongs on
    std::map<std::string, std::string> expected_shelf_by_product;
    /// Window used by the shoplifting ground truth; must match the
    /// registered shoplifting query.
    std::int64_t shoplift_window_ms = 12 * 60 * 60 * 1000;
};

/// What the registered monitoring queries should detect on the cleaned
/// stream (at zero noise, exactly this).
struct TruthEvent {
    std::string kind;// "shoplift" | "misplaced"
    std::string tag;
    std::string area;
    LogicalTime first_ts = 0;
    LogicalTime last_ts = 0;

    bool operator==(const TruthEvent&) const = default;
    auto operator<=>(const TruthEvent&) const = default;
};

struct SimulationMetrics {
    std::uint64_t readings_emitted = 0;
    std::uint64_t injected_dropped = 0;
    std::uint64_t injected_truncated = 0;
    std::uint64_t injected_duplicates = 0;
};

struct SimulationResult {
    std::vector<RawReading> readings;
    std::vector<TruthEvent> truth;
    SimulationMetrics metrics;
};

/// Runs the script into a raw reading stream plus ground truth. Determinism:
/// the same scenario (seed included) yields byte-identical output. Noise
/// draws come from SplitMix64 seeded with scenario.seed.
SimulationResult simulate(const Scenario& scenario);

/// One misplaced-inventory query per product with a configured expected
/// shelf: shelf readings of that product on any other shelf are reported.
/// Returns (query_id, query text) pairs.
std::vector<std::pair<std::string, std::string>> misplaced_inventory_queries(
    const Scenario& scenario);

void validate_scenario(const Scenario& scenario);

}// namespace sase

#endif
