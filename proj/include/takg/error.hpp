// Copyright 2026 The takg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace takg {

enum class ErrorCode {
  // event model
  UnknownSignal,
  NonMonotonicTimestamps,
  InconsistentOldValue,
  // learner
  UnreachableState,
  NondeterministicTransition,
  // detector
  UnknownStartState,
  DetectorHalted,
  // simulator
  InvalidFaultPhase,
  InvalidConfig,
  // rdf
  ParseError,
  UnsupportedFeature,
  MalformedQuery,
  // mapper
  DanglingParent,
  DuplicateEntity,
  CyclicHierarchy,
  UnknownActuator,
  DanglingReference,
  // file formats
  InvalidFormat,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownSignal: return "UnknownSignal";
    case ErrorCode::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case ErrorCode::InconsistentOldValue: return "InconsistentOldValue";
    case ErrorCode::UnreachableState: return "UnreachableState";
    case ErrorCode::NondeterministicTransition: return "NondeterministicTransition";
    case ErrorCode::UnknownStartState: return "UnknownStartState";
    case ErrorCode::DetectorHalted: return "DetectorHalted";
    case ErrorCode::InvalidFaultPhase: return "InvalidFaultPhase";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::MalformedQuery: return "MalformedQuery";
    case ErrorCode::DanglingParent: return "DanglingParent";
    case ErrorCode::DuplicateEntity: return "DuplicateEntity";
    case ErrorCode::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorCode::UnknownActuator: return "UnknownActuator";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::InvalidFormat: return "InvalidFormat";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. The code is the
/// stable, testable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace takg
