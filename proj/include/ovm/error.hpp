// Copyright 2026 The Overmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ovm {

// Every failure the library reports deliberately goes through Error so that
// callers (CLI, bindings, tests) can switch on a stable kind instead of
// parsing messages.
enum class ErrorKind {
  kNotSquare,
  kNotHermitian,
  kNotUnitary,
  kNotAProjector,
  kNotUnit,
  kShapeMismatch,
  kDimMismatch,
  kCountMismatch,
  kIndexOutOfRange,
  kClusterAmbiguity,
  kNonFinite,
  kNonFiniteImage,
  kDuplicateCoarseValues,
  kTooManyTerms,
  kInvalidObservable,
  kInvalidSurjection,
  kInvalidPartition,
  kInvalidState,
  kInvalidTolerance,
  kNotCommuting,
  kNotOrthogonal,
  kNotCompatible,
  kPreconditionViolated,
  kEmptyList,
  kZeroProbabilityBranch,
  kParseError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const { return kind_; }

  // Message without the kind prefix, for callers that add context and
  // rethrow.
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotSquare: return "NotSquare";
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kNotUnitary: return "NotUnitary";
    case ErrorKind::kNotAProjector: return "NotAProjector";
    case ErrorKind::kNotUnit: return "NotUnit";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kDimMismatch: return "DimMismatch";
    case ErrorKind::kCountMismatch: return "CountMismatch";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kNonFiniteImage: return "NonFiniteImage";
    case ErrorKind::kDuplicateCoarseValues: return "DuplicateCoarseValues";
    case ErrorKind::kTooManyTerms: return "TooManyTerms";
    case ErrorKind::kInvalidObservable: return "InvalidObservable";
    case ErrorKind::kInvalidSurjection: return "InvalidSurjection";
    case ErrorKind::kInvalidPartition: return "InvalidPartition";
    case ErrorKind::kInvalidState: return "InvalidState";
    case ErrorKind::kInvalidTolerance: return "InvalidTolerance";
    case ErrorKind::kNotCommuting: return "NotCommuting";
    case ErrorKind::kNotOrthogonal: return "NotOrthogonal";
    case ErrorKind::kNotCompatible: return "NotCompatible";
    case ErrorKind::kPreconditionViolated: return "PreconditionViolated";
    case ErrorKind::kEmptyList: return "EmptyList";
    case ErrorKind::kZeroProbabilityBranch: return "ZeroProbabilityBranch";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ovm
