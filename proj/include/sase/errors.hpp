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

#ifndef SASE_ERRORS_HPP
#define SASE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sase {

/// Every failure the library reports carries one of these codes so callers
/// (and tests) can branch on the condition instead of parsing messages.
enum class ErrorCode {
    // event model
    UnknownType,
    SchemaMismatch,
    OutOfOrderEvent,
    // query text
    LexError,
    ParseError,
    // validation
    UnknownEventType,
    UnknownAttribute,
    TypeMismatch,
    UnresolvedBuiltin,
    NegationPositionError,
    WindowNotConvertible,
    // engine lifecycle
    DuplicateQueryId,
    UnknownQueryId,
    BuiltinFailure,
    // event store
    StaleTimestamp,
    SelfContainment,
    // simulator
    InvalidScenario,
    // files and configuration
    IoError,
    ConfigError,
};

std::string_view error_code_name(ErrorCode code);

class SaseError : public std::runtime_error {
  public:
    SaseError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw SaseError(code, message);
}

}// namespace sase

#endif
