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

#ifndef SASE_STORE_HPP
#define SASE_STORE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sase/event.hpp"

namespace sase {

/// Where an item was: a temporal interval per area. An absent time_out marks
/// the current location.
struct LocationRecord {
    std::string tag;
    std::string area;
    LogicalTime time_in = 0;
    std::optional<LogicalTime> time_out;

    bool operator==(const LocationRecord&) const = default;
};

/// What an item was inside: child resided in parent between time_in and
/// time_out.
struct ContainmentRecord {
    std::string child;
    std::string parent;
    LogicalTime time_in = 0;
    std::optional<LogicalTime> time_out;

    bool operator==(const ContainmentRecord&) const = default;
};

struct AreaRecord {
    std::string area;
    std::string description;
};

using HistoryEntry = std::variant<LocationRecord, ContainmentRecord>;

/// Embedded persistent store for archived state: location and containment
/// intervals plus area descriptions. Persistence is a JSONL append log of
/// mutations, replayed on open; replaying the same mutation sequence yields
/// byte-identical files. All mutations are serialized by the caller (the
/// engine's transformation operator during a run).
class EventStore {
  public:
    EventStore() = default;// in-memory only

    /// Opens (or creates) a log-backed store and replays its contents.
    static EventStore open(const std::filesystem::path& path);

    /// Closes the tag's open location interval at ts (if any) and opens a
    /// new one at (area, ts). Throws StaleTimestamp when ts precedes the
    /// open interval's time_in.
    void update_location(const std::string& tag, const std::string& area, LogicalTime ts);

    /// Textual description of an area, or the sentinel
    /// "unknown-area:<area>" when unregistered.
    std::string retrieve_location(const std::string& area) const;

    /// Closes the child's open containment (if any) and opens
    /// (child, parent, ts). Throws SelfContainment when child == parent.
    void update_containment(const std::string& child, const std::string& parent, LogicalTime ts);

    /// Closes the child's open containment at ts; no-op when none is open.
    void end_containment(const std::string& child, LogicalTime ts);

    void put_area(const std::string& area, const std::string& description);

    /// The open location interval, or nullopt.
    std::optional<std::pair<std::string, LogicalTime>> current_location(
        const std::string& tag) const;

    /// All location and containment records of a tag merged by time_in,
    /// ties ordered location before containment.
    std::vector<HistoryEntry> movement_history(const std::string& tag) const;

    const std::vector<LocationRecord>& locations(const std::string& tag) const;
    const std::vector<ContainmentRecord>& containments(const std::string& tag) const;
    const std::map<std::string, std::string>& areas() const { return areas_; }

    /// Flushes the append log to disk.
    void flush();

  private:
    void apply(const nlohmann::json& op);
    void append(const nlohmann::json& op);

    std::map<std::string, std::vector<LocationRecord>> locations_;
    std::map<std::string, std::vector<ContainmentRecord>> containments_;
    std::map<std::string, std::string> areas_;
    std::filesystem::path log_path_;
    std::ofstream log_;
    bool persistent_ = false;
};

std::string history_to_string(const std::vector<HistoryEntry>& history);
nlohmann::json history_entry_to_json(const HistoryEntry& entry);

}// namespace sase

#endif
