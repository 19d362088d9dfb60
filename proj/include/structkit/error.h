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

#ifndef STRUCTKIT_ERROR_H_
#define STRUCTKIT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace structkit {

// Stable error codes. The string names are part of the CLI's machine-readable
// error output; never rename an existing entry.
enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kIoError,
  kUnknownDataset,
  kSpanOutOfRange,
  kNoPredicate,
  kMalformedCompletion,
  kTurnCountMismatch,
  kLengthMismatch,
  kEmptyCorpus,
  kFamilyMismatch,
  kBackendUnavailable,
  kBackendTimeout,
  kIdMismatch,
  kConfigError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  // Retryable errors come from the generation backend only.
  bool retryable() const {
    return code_ == ErrorCode::kBackendUnavailable ||
           code_ == ErrorCode::kBackendTimeout;
  }

 private:
  ErrorCode code_;
};

// Malformed input file content, with its location.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message)
      : Error(ErrorCode::kParseError,
              file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace structkit

#endif  // STRUCTKIT_ERROR_H_
