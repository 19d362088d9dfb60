/* Copyright 2026 The StructKit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "structkit/error.h"

namespace structkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kUnknownDataset:
      return "UnknownDataset";
    case ErrorCode::kSpanOutOfRange:
      return "SpanOutOfRange";
    case ErrorCode::kNoPredicate:
      return "NoPredicate";
    case ErrorCode::kMalformedCompletion:
      return "MalformedCompletion";
    case ErrorCode::kTurnCountMismatch:
      return "TurnCountMismatch";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kEmptyCorpus:
      return "EmptyCorpus";
    case ErrorCode::kFamilyMismatch:
      return "FamilyMismatch";
    case ErrorCode::kBackendUnavailable:
      return "BackendUnavailable";
    case ErrorCode::kBackendTimeout:
      return "BackendTimeout";
    case ErrorCode::kIdMismatch:
      return "IdMismatch";
    case ErrorCode::kConfigError:
      return "ConfigError";
  }
  return "Unknown";
}

}  // namespace structkit
