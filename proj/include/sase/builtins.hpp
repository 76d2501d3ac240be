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

#ifndef SASE_BUILTINS_HPP
#define SASE_BUILTINS_HPP

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sase/event.hpp"

namespace sase {

class EventStore;

/// A builtin database function callable from RETURN clauses. Names start
/// with '_'. Handlers may throw SaseError; the engine reports that as a
/// BuiltinFailure for the triggering match only.
struct BuiltinFn {
    std::string name;
    std::size_t arity = 0;
    std::function<ReturnedValue(std::span<const Value>)> handler;
};

class BuiltinRegistry {
  public:
    void register_fn(BuiltinFn fn);

    /// nullptr when the name is unknown.
    const BuiltinFn* find(std::string_view name) const;

    /// Dispatches a subquery by name. Throws UnresolvedBuiltin for unknown
    /// names or an argument count the builtin does not accept.
    ReturnedValue invoke(std::string_view name, std::span<const Value> args) const;

  private:
    std::map<std::string, BuiltinFn, std::less<>> fns_;
};

/// The stock registry backed by an event store:
///   _updateLocation(tag, area, ts)  closes the tag's open location interval
///                                   and opens a new one; returns unit
///   _retrieveLocation(area)         textual description of an area
///   _retrieveHistory(tag)           rendered movement history of a tag
/// The store must outlive the registry.
BuiltinRegistry default_builtins(EventStore& store);

}// namespace sase

#endif
