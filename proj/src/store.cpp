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

#include "sase/store.hpp"

#include <algorithm>
#include <sstream>

namespace sase {

EventStore EventStore::open(const std::filesystem::path& path) {
    EventStore store;
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        if (!in) fail(ErrorCode::IoError, "cannot read store log " + path.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json op = nlohmann::json::parse(line, nullptr, false);
            if (op.is_discarded()) {
                fail(ErrorCode::IoError, "corrupt store log " + path.string() + " at line " +
                                             std::to_string(line_no));
            }
            store.apply(op);
        }
    }
    store.persistent_ = true;
    store.log_path_ = path;
    store.log_.open(path, std::ios::app);
    if (!store.log_) fail(ErrorCode::IoError, "cannot append to store log " + path.string());
    return store;
}

void EventStore::append(const nlohmann::json& op) {
    if (!persistent_) return;
    log_ << op.dump() << "\n";
}

void EventStore::apply(const nlohmann::json& op) {
    const std::string kind = op.at("op").get<std::string>();
    if (kind == "location") {
        update_location(op.at("tag").get<std::string>(), op.at("area").get<std::string>(),
                        op.at("ts").get<LogicalTime>());
        return;
    }
    if (kind == "containment") {
        update_containment(op.at("child").get<std::string>(), op.at("parent").get<std::string>(),
                           op.at("ts").get<LogicalTime>());
        return;
    }
    if (kind == "end_containment") {
        end_containment(op.at("child").get<std::string>(), op.at("ts").get<LogicalTime>());
        return;
    }
    if (kind == "area") {
        put_area(op.at("area").get<std::string>(), op.at("description").get<std::string>());
        return;
    }
    fail(ErrorCode::IoError, "unknown store log operation '" + kind + "'");
}

void EventStore::update_location(const std::string& tag, const std::string& area,
                                 LogicalTime ts) {
    auto& records = locations_[tag];
    if (!records.empty() && !records.back().time_out) {
        LocationRecord& open = records.back();
        if (ts < open.time_in) {
            fail(ErrorCode::StaleTimestamp,
                 "location update for " + tag + " at ts " + std::to_string(ts) +
                     " precedes open interval at " + std::to_string(open.time_in));
        }
        open.time_out = ts;
    }
    records.push_back({tag, area, ts, std::nullopt});
    append({{"op", "location"}, {"tag", tag}, {"area", area}, {"ts", ts}});
}

std::string EventStore::retrieve_location(const std::string& area) const {
    auto it = areas_.find(area);
    if (it == areas_.end()) return "unknown-area:" + area;
    return it->second;
}

void EventStore::update_containment(const std::string& child, const std::string& parent,
                                    LogicalTime ts) {
    if (child == parent) {
        fail(ErrorCode::SelfContainment, "tag " + child + " cannot contain itself");
    }
    auto& records = containments_[child];
    if (!records.empty() && !records.back().time_out) {
        ContainmentRecord& open = records.back();
        if (ts < open.time_in) {
            fail(ErrorCode::StaleTimestamp,
                 "containment update for " + child + " at ts " + std::to_string(ts) +
                     " precedes open interval at " + std::to_string(open.time_in));
        }
        open.time_out = ts;
    }
    records.push_back({child, parent, ts, std::nullopt});
    append({{"op", "containment"}, {"child", child}, {"parent", parent}, {"ts", ts}});
}

void EventStore::end_containment(const std::string& child, LogicalTime ts) {
    auto it = containments_.find(child);
    if (it == containments_.end() || it->second.empty() || it->second.back().time_out) return;
    ContainmentRecord& open = it->second.back();
    if (ts < open.time_in) {
        fail(ErrorCode::StaleTimestamp,
             "containment end for " + child + " at ts " + std::to_string(ts) +
                 " precedes open interval at " + std::to_string(open.time_in));
    }
    open.time_out = ts;
    append({{"op", "end_containment"}, {"child", child}, {"ts", ts}});
}

void EventStore::put_area(const std::string& area, const std::string& description) {
    areas_[area] = description;
    append({{"op", "area"}, {"area", area}, {"description", description}});
}

std::optional<std::pair<std::string, LogicalTime>> EventStore::current_location(
    const std::string& tag) const {
    auto it = locations_.find(tag);
    if (it == locations_.end() || it->second.empty()) return std::nullopt;
    const LocationRecord& last = it->second.back();
    if (last.time_out) return std::nullopt;// archived
    return std::pair(last.area, last.time_in);
}

std::vector<HistoryEntry> EventStore::movement_history(const std::string& tag) const {
    std::vector<HistoryEntry> history;
    if (auto it = locations_.find(tag); it != locations_.end()) {
        for (const auto& record : it->second) history.emplace_back(record);
    }
    if (auto it = containments_.find(tag); it != containments_.end()) {
        for (const auto& record : it->second) history.emplace_back(record);
    }
    std::stable_sort(history.begin(), history.end(),
                     [](const HistoryEntry& a, const HistoryEntry& b) {
                         auto key = [](const HistoryEntry& entry) {
                             if (std::holds_alternative<LocationRecord>(entry)) {
                                 return std::pair(std::get<LocationRecord>(entry).time_in, 0);
                             }
                             return std::pair(std::get<ContainmentRecord>(entry).time_in, 1);
                         };
                         return key(a) < key(b);
                     });
    return history;
}

const std::vector<LocationRecord>& EventStore::locations(const std::string& tag) const {
    static const std::vector<LocationRecord> empty;
    auto it = locations_.find(tag);
    return it == locations_.end() ? empty : it->second;
}

const std::vector<ContainmentRecord>& EventStore::containments(const std::string& tag) const {
    static const std::vector<ContainmentRecord> empty;
    auto it = containments_.find(tag);
    return it == containments_.end() ? empty : it->second;
}

void EventStore::flush() {
    if (persistent_) log_.flush();
}

std::string history_to_string(const std::vector<HistoryEntry>& history) {
    std::ostringstream out;
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (i > 0) out << "; ";
        if (std::holds_alternative<LocationRecord>(history[i])) {
            const auto& record = std::get<LocationRecord>(history[i]);
            out << "at " << record.area << " [" << record.time_in << ", "
                << (record.time_out ? std::to_string(*record.time_out) : "now") << ")";
        } else {
            const auto& record = std::get<ContainmentRecord>(history[i]);
            out << "in " << record.parent << " [" << record.time_in << ", "
                << (record.time_out ? std::to_string(*record.time_out) : "now") << ")";
        }
    }
    return out.str();
}

nlohmann::json history_entry_to_json(const HistoryEntry& entry) {
    if (std::holds_alternative<LocationRecord>(entry)) {
        const auto& record = std::get<LocationRecord>(entry);
        return {{"kind", "location"},
                {"tag", record.tag},
                {"area", record.area},
                {"time_in", record.time_in},
                {"time_out",
                 record.time_out ? nlohmann::json(*record.time_out) : nlohmann::json(nullptr)}};
    }
    const auto& record = std::get<ContainmentRecord>(entry);
    return {{"kind", "containment"},
            {"child", record.child},
            {"parent", record.parent},
            {"time_in", record.time_in},
            {"time_out",
             record.time_out ? nlohmann::json(*record.time_out) : nlohmann::json(nullptr)}};
}

}// namespace sase
