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

#include "sase/builtins.hpp"

#include "sase/errors.hpp"
#include "sase/store.hpp"

namespace sase {

void BuiltinRegistry::register_fn(BuiltinFn fn) {
    auto name = fn.name;
    if (!fns_.emplace(name, std::move(fn)).second) {
        fail(ErrorCode::ConfigError, "builtin '" + name + "' registered twice");
    }
}

const BuiltinFn* BuiltinRegistry::find(std::string_view name) const {
    auto it = fns_.find(name);
    return it == fns_.end() ? nullptr : &it->second;
}

ReturnedValue BuiltinRegistry::invoke(std::string_view name, std::span<const Value> args) const {
    const BuiltinFn* fn = find(name);
    if (fn == nullptr) {
        fail(ErrorCode::UnresolvedBuiltin, "builtin '" + std::string(name) + "' is not registered");
    }
    if (fn->arity != args.size()) {
        fail(ErrorCode::UnresolvedBuiltin,
             "builtin '" + std::string(name) + "' expects " + std::to_string(fn->arity) +
                 " arguments, got " + std::to_string(args.size()));
    }
    return fn->handler(args);
}

namespace {

std::string textual_arg(std::span<const Value> args, std::size_t index, const char* what) {
    if (!std::holds_alternative<std::string>(args[index])) {
        fail(ErrorCode::TypeMismatch, std::string(what) + " argument must be textual");
    }
    return std::get<std::string>(args[index]);
}

LogicalTime integer_arg(std::span<const Value> args, std::size_t index, const char* what) {
    if (!std::holds_alternative<std::int64_t>(args[index])) {
        fail(ErrorCode::TypeMismatch, std::string(what) + " argument must be an integer");
    }
    return std::get<std::int64_t>(args[index]);
}

}// namespace

BuiltinRegistry default_builtins(EventStore& store) {
    BuiltinRegistry registry;
    registry.register_fn(
        {"_updateLocation", 3, [&store](std::span<const Value> args) -> ReturnedValue {
             store.update_location(textual_arg(args, 0, "tag"), textual_arg(args, 1, "area"),
                                   integer_arg(args, 2, "timestamp"));
             return std::monostate{};
         }});
    registry.register_fn(
        {"_retrieveLocation", 1, [&store](std::span<const Value> args) -> ReturnedValue {
             return store.retrieve_location(textual_arg(args, 0, "area"));
         }});
    registry.register_fn(
        {"_retrieveHistory", 1, [&store](std::span<const Value> args) -> ReturnedValue {
             return history_to_string(store.movement_history(textual_arg(args, 0, "tag")));
         }});
    return registry;
}

}// namespace sase
