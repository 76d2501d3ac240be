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

#include "sase/containment.hpp"

#include <algorithm>

namespace sase {

void ContainmentTracker::on_event(const Event& event) {
    flush_older_than(event.ts);

    const Value* area_value = event.find_attr("AreaId");
    const Value* tag_value = event.find_attr("TagId");
    if (area_value == nullptr || tag_value == nullptr) return;
    const std::string& area = std::get<std::string>(*area_value);
    const std::string& tag = std::get<std::string>(*tag_value);

    if (std::find(config_.loading_zones.begin(), config_.loading_zones.end(), area) !=
        config_.loading_zones.end()) {
        Group& group = open_groups_[area];
        if (!group.tags.empty() && group.ts != event.ts) {
            flush_group(area, group);
            group = Group{};
        }
        group.ts = event.ts;
        // dedup guarantees one read per (tag, area, ts)
        group.tags.push_back(tag);
        return;
    }
    if (std::find(config_.unloading_zones.begin(), config_.unloading_zones.end(), area) !=
        config_.unloading_zones.end()) {
        store_.end_containment(tag, event.ts);
    }
}

void ContainmentTracker::finish() {
    for (auto& [area, group] : open_groups_) flush_group(area, group);
    open_groups_.clear();
}

void ContainmentTracker::flush_older_than(LogicalTime ts) {
    for (auto& [area, group] : open_groups_) {
        if (!group.tags.empty() && group.ts < ts) {
            flush_group(area, group);
            group = Group{};
        }
    }
}

void ContainmentTracker::flush_group(const std::string& area, Group& group) {
    (void)area;
    if (group.tags.empty()) return;
    std::vector<std::string> containers;
    std::vector<std::string> items;
    for (const auto& tag : group.tags) {
        (config_.is_container(tag) ? containers : items).push_back(tag);
    }
    if (containers.empty() || items.empty()) return;
    const std::string& parent = *std::min_element(containers.begin(), containers.end());
    for (const auto& item : items) {
        store_.update_containment(item, parent, group.ts);
    }
}

}// namespace sase
