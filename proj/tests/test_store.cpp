#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "sase/builtins.hpp"
#include "sase/rng.hpp"
#include "sase/store.hpp"

using namespace sase;

namespace {

std::filesystem::path temp_path(const char* name) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove(path);
    return path;
}

std::string file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}// namespace

TEST_CASE("location updates chain intervals exactly") {
    EventStore store;
    store.update_location("T1", "S1", 1);
    store.update_location("T1", "S2", 5);
    const auto& records = store.locations("T1");
    REQUIRE(records.size() == 2);
    CHECK(records[0] == LocationRecord{"T1", "S1", 1, 5});
    CHECK(records[1] == LocationRecord{"T1", "S2", 5, std::nullopt});
    CHECK(store.current_location("T1") == std::pair(std::string("S2"), LogicalTime{5}));

    SUBCASE("first sighting opens directly") {
        CHECK(store.locations("T9").empty());
        store.update_location("T9", "S1", 3);
        CHECK(store.locations("T9").front() == LocationRecord{"T9", "S1", 3, std::nullopt});
    }

    SUBCASE("stale timestamps are rejected") {
        try {
            store.update_location("T1", "S3", 0);
            FAIL("expected StaleTimestamp");
        } catch (const SaseError& e) {
            CHECK(e.code() == ErrorCode::StaleTimestamp);
        }
        // state unchanged
        CHECK(store.locations("T1").size() == 2);
    }
}

TEST_CASE("interval chain property holds for random update sequences") {
    SplitMix64 rng(42);
    for (int round = 0; round < 50; ++round) {
        EventStore store;
        LogicalTime ts = 0;
        int updates = 1 + static_cast<int>(rng.next_below(20));
        for (int i = 0; i < updates; ++i) {
            ts += static_cast<LogicalTime>(rng.next_below(5));
            store.update_location("T1", "S" + std::to_string(rng.next_below(4)), ts);
        }
        const auto& records = store.locations("T1");
        REQUIRE(records.size() == static_cast<std::size_t>(updates));
        for (std::size_t i = 0; i + 1 < records.size(); ++i) {
            REQUIRE(records[i].time_out.has_value());
            CHECK(*records[i].time_out == records[i + 1].time_in);
        }
        CHECK_FALSE(records.back().time_out.has_value());
    }
}

TEST_CASE("area lookups fall back to a sentinel") {
    EventStore store;
    store.put_area("X1", "leftmost door on the south side");
    CHECK(store.retrieve_location("X1") == "leftmost door on the south side");
    CHECK(store.retrieve_location("Z9") == "unknown-area:Z9");
    store.put_area("X2", "");
    CHECK(store.retrieve_location("X2") == "");
}

TEST_CASE("containment updates") {
    EventStore store;
    store.update_containment("T1", "B1", 2);
    CHECK(store.containments("T1").back() == ContainmentRecord{"T1", "B1", 2, std::nullopt});
    store.update_containment("T1", "B2", 7);
    const auto& records = store.containments("T1");
    REQUIRE(records.size() == 2);
    CHECK(records[0] == ContainmentRecord{"T1", "B1", 2, 7});
    CHECK(records[1] == ContainmentRecord{"T1", "B2", 7, std::nullopt});

    try {
        store.update_containment("T1", "T1", 9);
        FAIL("expected SelfContainment");
    } catch (const SaseError& e) {
        CHECK(e.code() == ErrorCode::SelfContainment);
    }

    store.end_containment("T1", 9);
    CHECK(store.containments("T1").back().time_out == 9);
    // closing again is a no-op
    store.end_containment("T1", 11);
    CHECK(store.containments("T1").back().time_out == 9);
}

TEST_CASE("movement history merges by time_in, location first on ties") {
    EventStore store;
    store.update_location("T1", "S1", 1);
    store.update_containment("T1", "B1", 2);
    store.end_containment("T1", 4);
    store.update_location("T1", "S2", 5);
    store.update_containment("T1", "B2", 5);

    auto history = store.movement_history("T1");
    REQUIRE(history.size() == 4);
    CHECK(std::get<LocationRecord>(history[0]).area == "S1");
    CHECK(std::get<ContainmentRecord>(history[1]).parent == "B1");
    CHECK(std::get<LocationRecord>(history[2]).area == "S2");// tie at 5: location first
    CHECK(std::get<ContainmentRecord>(history[3]).parent == "B2");

    CHECK(store.movement_history("T404").empty());
}

TEST_CASE("current location of an archived or unknown tag is absent") {
    EventStore store;
    CHECK_FALSE(store.current_location("T404").has_value());
    store.update_location("T1", "S1", 1);
    // close the open interval by hand through the log format
    auto path = temp_path("sase_store_close.jsonl");
    {
        EventStore persisted = EventStore::open(path);
        persisted.update_location("T1", "S1", 1);
    }
    {
        std::ofstream log(path, std::ios::app);
        log << R"({"op":"location","tag":"T1","area":"S2","ts":9})" << "\n";
        log << R"({"op":"end_containment","child":"T1","ts":9})" << "\n";
    }
    EventStore reopened = EventStore::open(path);
    CHECK(reopened.current_location("T1") == std::pair(std::string("S2"), LogicalTime{9}));
    std::filesystem::remove(path);
}

TEST_CASE("the append log round-trips and replays deterministically") {
    auto path_a = temp_path("sase_store_a.jsonl");
    auto path_b = temp_path("sase_store_b.jsonl");
    auto run = [](const std::filesystem::path& path) {
        EventStore store = EventStore::open(path);
        store.put_area("X1", "south door");
        store.update_location("T1", "S1", 1);
        store.update_location("T1", "S2", 5);
        store.update_containment("T1", "B1", 2);
        store.end_containment("T1", 4);
        store.flush();
    };
    run(path_a);
    run(path_b);
    CHECK(file_bytes(path_a) == file_bytes(path_b));
    CHECK_FALSE(file_bytes(path_a).empty());

    EventStore reopened = EventStore::open(path_a);
    CHECK(reopened.current_location("T1") == std::pair(std::string("S2"), LogicalTime{5}));
    CHECK(reopened.retrieve_location("X1") == "south door");
    CHECK(reopened.containments("T1").back().time_out == 4);
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);
}

TEST_CASE("builtins dispatch through the registry") {
    EventStore store;
    store.put_area("X1", "south door");
    auto builtins = default_builtins(store);

    std::vector<Value> args = {Value(std::string("X1"))};
    CHECK(std::get<std::string>(builtins.invoke("_retrieveLocation", args)) == "south door");

    std::vector<Value> update_args = {Value(std::string("T1")), Value(std::string("S2")),
                                      Value(std::int64_t{5})};
    CHECK(std::holds_alternative<std::monostate>(builtins.invoke("_updateLocation", update_args)));
    CHECK(store.current_location("T1") == std::pair(std::string("S2"), LogicalTime{5}));

    std::vector<Value> history_args = {Value(std::string("T1"))};
    CHECK(std::get<std::string>(builtins.invoke("_retrieveHistory", history_args)) ==
          "at S2 [5, now)");

    try {
        builtins.invoke("_noSuchFn", {});
        FAIL("expected UnresolvedBuiltin");
    } catch (const SaseError& e) {
        CHECK(e.code() == ErrorCode::UnresolvedBuiltin);
    }
}
