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

#ifndef SASE_CONTAINMENT_HPP
#define SASE_CONTAINMENT_HPP

#include <map>
#include <string>
#include <vector>

#include "sase/cleaning.hpp"
#include "sase/event.hpp"
#include "sase/store.hpp"

namespace sase {

/// Containment update rule, applied to the cleaned stream during a run:
/// items and containers read in the same loading-zone area within the same
/// logical unit are paired (container tags carry the configured prefix);
/// a read in an unloading zone closes the tag's open containment.
///
/// When a group holds several containers, items pair with the
/// lexicographically smallest; a group with no container is ignored.
class ContainmentTracker {
  public:
    ContainmentTracker(const PipelineConfig& config, EventStore& store)
        : config_(config), store_(store) {}

    /// Feed events in stream order; pending loading groups are flushed as
    /// soon as the clock passes their unit.
    void on_event(const Event& event);

    /// Flush pending groups at end of stream.
    void finish();

  private:
    struct Group {
        LogicalTime ts = 0;
        std::vector<std::string> tags;// arrival order
    };

    const PipelineConfig& config_;
    EventStore& store_;
    std::map<std::string, Group> open_groups_;// per loading area

    void flush_group(const std::string& area, Group& group);
    void flush_older_than(LogicalTime ts);
};

}// namespace sase

#endif
