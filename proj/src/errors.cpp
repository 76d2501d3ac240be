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

#include "sase/errors.hpp"

namespace sase {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownType: return "UnknownType";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::OutOfOrderEvent: return "OutOfOrderEvent";
        case ErrorCode::LexError: return "LexError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownEventType: return "UnknownEventType";
        case ErrorCode::UnknownAttribute: return "UnknownAttribute";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::UnresolvedBuiltin: return "UnresolvedBuiltin";
        case ErrorCode::NegationPositionError: return "NegationPositionError";
        case ErrorCode::WindowNotConvertible: return "WindowNotConvertible";
        case ErrorCode::DuplicateQueryId: return "DuplicateQueryId";
        case ErrorCode::UnknownQueryId: return "UnknownQueryId";
        case ErrorCode::BuiltinFailure: return "BuiltinFailure";
        case ErrorCode::StaleTimestamp: return "StaleTimestamp";
        case ErrorCode::SelfContainment: return "SelfContainment";
        case ErrorCode::InvalidScenario: return "InvalidScenario";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

}// namespace sase
