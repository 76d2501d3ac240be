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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sase/builtins.hpp"
#include "sase/cleaning.hpp"
#include "sase/containment.hpp"
#include "sase/engine.hpp"
#include "sase/errors.hpp"
#include "sase/io.hpp"
#include "sase/parser.hpp"
#include "sase/plan.hpp"
#include "sase/simulator.hpp"
#include "sase/store.hpp"
#include "sase/validate.hpp"

namespace {

using namespace sase;

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitInternalError = 2;

std::int64_t resolve_unit_ms(std::optional<std::int64_t> flag,
                             std::optional<std::int64_t> from_config) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SASE_UNIT_MS"); env != nullptr && *env != '\0') {
        return std::stoll(env);
    }
    if (from_config) return *from_config;
    return 1000;
}

SchemaRegistry load_schemas_or_default(const std::string& path) {
    if (path.empty()) return SchemaRegistry::default_retail();
    return schemas_from_json(parse_json_file(path));
}

std::string query_id_from_path(const std::filesystem::path& path) {
    return path.stem().string();
}

std::vector<std::filesystem::path> query_files(const std::string& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir)) {
        fail(ErrorCode::IoError, "query directory '" + dir + "' does not exist");
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".sase") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) fail(ErrorCode::IoError, "no .sase files in '" + dir + "'");
    return files;
}

std::unique_ptr<std::ofstream> open_output(const std::string& path, std::ostream*& out) {
    if (path.empty() || path == "-") {
        out = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path);
    if (!*file) fail(ErrorCode::IoError, "cannot write " + path);
    out = file.get();
    return file;
}

void import_areas_csv(EventStore& store, const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (line_no == 1 && line.starts_with("area_id")) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            fail(ErrorCode::IoError, "area CSV line " + std::to_string(line_no) +
                                         ": expected area_id,description");
        }
        std::string description = line.substr(comma + 1);
        if (!description.empty() && description.back() == '\r') description.pop_back();
        store.put_area(line.substr(0, comma), description);
    }
}

struct ParseArgs {
    std::string query_file;
    bool pretty = false;
};

int cmd_parse(const ParseArgs& args) {
    QueryAst ast = parse_query(read_text_file(args.query_file),
                               query_id_from_path(args.query_file));
    if (args.pretty) {
        std::cout << pretty_print(ast);
    } else {
        std::cout << ast_to_json(ast).dump(2) << "\n";
    }
    return kExitOk;
}

struct PlanArgs {
    std::string query_file;
    std::string schemas_file;
    std::optional<std::int64_t> unit_ms;
    bool no_pushdown = false;
    bool pretty = false;
};

int cmd_plan(const PlanArgs& args) {
    SchemaRegistry schemas = load_schemas_or_default(args.schemas_file);
    EventStore scratch;
    BuiltinRegistry builtins = default_builtins(scratch);
    QueryAst ast = parse_query(read_text_file(args.query_file),
                               query_id_from_path(args.query_file));
    ValidatedQuery q =
        validate_query(std::move(ast), schemas, builtins, resolve_unit_ms(args.unit_ms, {}));
    QueryPlan plan = compile_plan(q, PlanOptions{!args.no_pushdown});
    if (args.pretty) {
        std::cout << plan_to_text(plan);
    } else {
        std::cout << plan_to_json(plan).dump(2) << "\n";
    }
    return kExitOk;
}

struct CleanArgs {
    std::string input;
    std::string config_file;
    std::string out;
    bool metrics = false;
};

void print_cleaning_metrics(const CleaningMetrics& metrics) {
    std::cerr << "filter: dropped " << metrics.dropped_truncated << " truncated ids, "
              << metrics.dropped_unknown_reader << " unknown readers\n"
              << "convert: dropped " << metrics.dropped_before_origin << " before origin\n"
              << "smooth: synthesized " << metrics.synthesized << " readings\n"
              << "dedup: removed " << metrics.duplicates_removed << " duplicates\n"
              << "generate: " << metrics.catalog_misses << " catalog misses, "
              << metrics.events_emitted << " events\n";
}

int cmd_clean(const CleanArgs& args) {
    PipelineConfig config = pipeline_config_from_json(parse_json_file(args.config_file));
    SchemaRegistry schemas = SchemaRegistry::default_retail();
    validate_pipeline_config(config, schemas);

    std::ifstream in(args.input);
    if (!in) fail(ErrorCode::IoError, "cannot open " + args.input);
    auto readings = load_readings_csv(in);

    CleaningMetrics metrics;
    auto events = run_pipeline(readings, config, schemas, metrics);

    std::ostream* out = nullptr;
    auto file = open_output(args.out, out);
    write_events_jsonl(*out, events);
    if (args.metrics) print_cleaning_metrics(metrics);
    return kExitOk;
}

struct SimulateArgs {
    std::string scenario_file;
    std::optional<std::uint64_t> seed;
    std::string out_readings;
    std::string out_truth;
    std::string queries_out;
};

int cmd_simulate(const SimulateArgs& args) {
    Scenario scenario = scenario_from_json(parse_json_file(args.scenario_file));
    if (args.seed) scenario.seed = *args.seed;
    SimulationResult result = simulate(scenario);

    std::ostream* readings_out = nullptr;
    auto readings_file = open_output(args.out_readings, readings_out);
    write_readings_csv(*readings_out, result.readings);

    if (!args.out_truth.empty()) {
        std::ofstream truth_out(args.out_truth);
        if (!truth_out) fail(ErrorCode::IoError, "cannot write " + args.out_truth);
        for (const auto& truth : result.truth) truth_out << truth_to_json(truth).dump() << "\n";
    }
    if (!args.queries_out.empty()) {
        std::filesystem::create_directories(args.queries_out);
        for (const auto& [id, text] : misplaced_inventory_queries(scenario)) {
            std::ofstream query_out(std::filesystem::path(args.queries_out) / (id + ".sase"));
            query_out << text;
        }
    }
    std::cerr << "emitted " << result.metrics.readings_emitted << " readings ("
              << result.metrics.injected_dropped << " dropped, "
              << result.metrics.injected_truncated << " truncated, "
              << result.metrics.injected_duplicates << " duplicated), " << result.truth.size()
              << " truth events\n";
    return kExitOk;
}

struct RunArgs {
    std::string queries_dir;
    std::string events_file;
    std::string raw_file;
    std::string scenario_file;
    std::string config_file;
    std::string schemas_file;
    std::string out;
    std::string db_path;
    std::string areas_csv;
    std::optional<std::int64_t> unit_ms;
    bool no_pushdown = false;
    bool pretty = false;
    bool metrics = false;
};

int cmd_run(const RunArgs& args) {
    const int sources = (args.events_file.empty() ? 0 : 1) + (args.raw_file.empty() ? 0 : 1) +
                        (args.scenario_file.empty() ? 0 : 1);
    if (sources != 1) {
        fail(ErrorCode::ConfigError,
             "exactly one of --events, --raw or --scenario must be given");
    }

    SchemaRegistry schemas = load_schemas_or_default(args.schemas_file);

    // Assemble the cleaned event stream and the pipeline config (when one is
    // in play; pre-cleaned events may run without it).
    std::optional<PipelineConfig> config;
    if (!args.config_file.empty()) {
        config = pipeline_config_from_json(parse_json_file(args.config_file));
    }
    std::vector<EventPtr> events;
    CleaningMetrics cleaning_metrics;
    if (!args.scenario_file.empty()) {
        Scenario scenario = scenario_from_json(parse_json_file(args.scenario_file));
        if (!config) config = scenario.pipeline;
        validate_pipeline_config(*config, schemas);
        SimulationResult sim = simulate(scenario);
        events = run_pipeline(sim.readings, *config, schemas, cleaning_metrics);
    } else if (!args.raw_file.empty()) {
        if (!config) fail(ErrorCode::ConfigError, "--raw needs --config");
        validate_pipeline_config(*config, schemas);
        std::ifstream in(args.raw_file);
        if (!in) fail(ErrorCode::IoError, "cannot open " + args.raw_file);
        events = run_pipeline(load_readings_csv(in), *config, schemas, cleaning_metrics);
    } else {
        if (args.events_file == "-") {
            events = load_events_jsonl(std::cin, schemas);
        } else {
            std::ifstream in(args.events_file);
            if (!in) fail(ErrorCode::IoError, "cannot open " + args.events_file);
            events = load_events_jsonl(in, schemas);
        }
    }

    EventStore store = args.db_path.empty() ? EventStore() : EventStore::open(args.db_path);
    if (!args.areas_csv.empty()) import_areas_csv(store, args.areas_csv);
    BuiltinRegistry builtins = default_builtins(store);

    const std::int64_t unit_ms =
        resolve_unit_ms(args.unit_ms, config ? std::optional(config->unit_duration_ms)
                                             : std::nullopt);
    EngineOptions options;
    options.pushdown = !args.no_pushdown;
    Engine engine(builtins, options);
    for (const auto& path : query_files(args.queries_dir)) {
        QueryAst ast = parse_query(read_text_file(path), query_id_from_path(path));
        engine.register_query(validate_query(std::move(ast), schemas, builtins, unit_ms));
    }

    std::optional<ContainmentTracker> tracker;
    if (config && (!config->loading_zones.empty() || !config->unloading_zones.empty())) {
        tracker.emplace(*config, store);
    }

    std::ostream* out = nullptr;
    auto file = open_output(args.out, out);
    std::uint64_t composites = 0;
    for (const auto& event : events) {
        if (tracker) tracker->on_event(*event);
        for (const auto& composite : engine.process_event(event)) {
            if (args.pretty) {
                *out << composite_to_pretty(composite) << "\n";
            } else {
                *out << composite_to_json(composite).dump() << "\n";
            }
            ++composites;
        }
    }
    if (tracker) tracker->finish();
    store.flush();
    if (args.metrics) {
        print_cleaning_metrics(cleaning_metrics);
        std::cerr << "engine: " << events.size() << " events in, " << composites
                  << " composite events out\n";
    }
    return kExitOk;
}

struct StoreArgs {
    std::string db_path;
    std::string current_tag;
    std::string history_tag;
    std::string areas_csv;
};

int cmd_store_current(const StoreArgs& args) {
    EventStore store = EventStore::open(args.db_path);
    auto location = store.current_location(args.current_tag);
    nlohmann::json j;
    j["tag"] = args.current_tag;
    if (location) {
        j["area"] = location->first;
        j["time_in"] = location->second;
    } else {
        j["area"] = nullptr;
    }
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_store_history(const StoreArgs& args) {
    EventStore store = EventStore::open(args.db_path);
    for (const auto& entry : store.movement_history(args.history_tag)) {
        std::cout << history_entry_to_json(entry).dump() << "\n";
    }
    return kExitOk;
}

int cmd_store_areas_import(const StoreArgs& args) {
    EventStore store = EventStore::open(args.db_path);
    import_areas_csv(store, args.areas_csv);
    store.flush();
    std::cerr << "imported " << store.areas().size() << " areas\n";
    return kExitOk;
}

}// namespace

int main(int argc, char** argv) {
    CLI::App app{"SASE: complex event processing over RFID streams"};
    app.require_subcommand(1);

    ParseArgs parse_args;
    auto* parse_cmd = app.add_subcommand("parse", "parse a .sase query and print its AST");
    parse_cmd->add_option("query", parse_args.query_file, "query file")->required();
    parse_cmd->add_flag("--pretty", parse_args.pretty, "print canonical query text");

    PlanArgs plan_args;
    auto* plan_cmd = app.add_subcommand("plan", "compile a query and print its plan");
    plan_cmd->add_option("query", plan_args.query_file, "query file")->required();
    plan_cmd->add_option("--schemas", plan_args.schemas_file, "schema JSON file");
    plan_cmd->add_option("--unit-ms", plan_args.unit_ms, "logical unit duration in ms");
    plan_cmd->add_flag("--no-pushdown", plan_args.no_pushdown, "disable push-down");
    plan_cmd->add_flag("--pretty", plan_args.pretty, "print human readable plan");

    CleanArgs clean_args;
    auto* clean_cmd = app.add_subcommand("clean", "run raw readings through the cleaning layers");
    clean_cmd->add_option("--input", clean_args.input, "raw readings CSV")->required();
    clean_cmd->add_option("--config", clean_args.config_file, "pipeline config JSON")->required();
    clean_cmd->add_option("--out", clean_args.out, "event JSONL output (default stdout)");
    clean_cmd->add_flag("--metrics", clean_args.metrics, "print per-layer counters");

    SimulateArgs simulate_args;
    auto* simulate_cmd = app.add_subcommand("simulate", "generate a scripted reading stream");
    simulate_cmd->add_option("--scenario", simulate_args.scenario_file, "scenario JSON")
        ->required();
    simulate_cmd->add_option("--seed", simulate_args.seed, "override the scenario seed");
    simulate_cmd->add_option("--out-readings", simulate_args.out_readings,
                             "raw readings CSV output (default stdout)");
    simulate_cmd->add_option("--out-truth", simulate_args.out_truth, "truth JSONL output");
    simulate_cmd->add_option("--queries-out", simulate_args.queries_out,
                             "directory for generated misplaced-inventory queries");

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "register queries and process a stream");
    run_cmd->add_option("--queries", run_args.queries_dir, "directory of .sase files")
        ->required();
    run_cmd->add_option("--events", run_args.events_file, "pre-cleaned event JSONL ('-' stdin)");
    run_cmd->add_option("--raw", run_args.raw_file, "raw readings CSV (cleaned first)");
    run_cmd->add_option("--scenario", run_args.scenario_file, "simulate, clean, then run");
    run_cmd->add_option("--config", run_args.config_file, "pipeline config JSON");
    run_cmd->add_option("--schemas", run_args.schemas_file, "schema JSON file");
    run_cmd->add_option("--out", run_args.out, "composite event JSONL output (default stdout)");
    run_cmd->add_option("--db", run_args.db_path, "event store path");
    run_cmd->add_option("--areas", run_args.areas_csv, "area description CSV to import");
    run_cmd->add_option("--unit-ms", run_args.unit_ms, "logical unit duration in ms");
    run_cmd->add_flag("--no-pushdown", run_args.no_pushdown, "disable push-down");
    run_cmd->add_flag("--pretty", run_args.pretty, "human readable output");
    run_cmd->add_flag("--metrics", run_args.metrics, "print counters to stderr");

    StoreArgs store_args;
    auto* store_cmd = app.add_subcommand("store", "query the event store");
    store_cmd->require_subcommand(1);
    store_cmd->fallthrough();
    auto* current_cmd = store_cmd->add_subcommand("current", "current location of a tag");
    current_cmd->add_option("tag", store_args.current_tag, "tag id")->required();
    auto* history_cmd = store_cmd->add_subcommand("history", "movement history of a tag");
    history_cmd->add_option("tag", store_args.history_tag, "tag id")->required();
    auto* areas_cmd = store_cmd->add_subcommand("areas", "area records");
    areas_cmd->require_subcommand(1);
    areas_cmd->fallthrough();
    auto* import_cmd = areas_cmd->add_subcommand("import", "import area descriptions from CSV");
    import_cmd->add_option("csv", store_args.areas_csv, "area_id,description CSV")->required();
    store_cmd->add_option("--db", store_args.db_path, "event store path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUserError;
    }

    try {
        if (parse_cmd->parsed()) return cmd_parse(parse_args);
        if (plan_cmd->parsed()) return cmd_plan(plan_args);
        if (clean_cmd->parsed()) return cmd_clean(clean_args);
        if (simulate_cmd->parsed()) return cmd_simulate(simulate_args);
        if (run_cmd->parsed()) return cmd_run(run_args);
        if (store_cmd->parsed()) {
            if (current_cmd->parsed()) return cmd_store_current(store_args);
            if (history_cmd->parsed()) return cmd_store_history(store_args);
            if (import_cmd->parsed()) return cmd_store_areas_import(store_args);
        }
        std::cerr << "no subcommand\n";
        return kExitUserError;
    } catch (const SaseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUserError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
}
