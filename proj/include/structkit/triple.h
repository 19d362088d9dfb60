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

// The linearized triple language shared by every model input and output:
//
//   ( head; relation; tail ) ( head; relation; tail ) ...
//
// Inside a field the characters '(', ')', ';' and '\' are written with a
// leading backslash. Text outside of groups (including the "<s>" and "<e>"
// sentinels some backends emit) carries no triples and is ignored.

#ifndef STRUCTKIT_TRIPLE_H_
#define STRUCTKIT_TRIPLE_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace structkit {

struct Triple {
  std::string head;
  std::string relation;
  std::string tail;

  auto operator<=>(const Triple&) const = default;
};

std::string DebugString(const Triple& triple);

enum class SkipReason { kUnbalancedParen, kWrongArity, kEmptyField };

std::string_view SkipReasonName(SkipReason reason);

struct SkippedFragment {
  std::size_t begin = 0;  // byte offset into the parsed input
  std::size_t end = 0;    // exclusive
  SkipReason reason = SkipReason::kWrongArity;

  bool operator==(const SkippedFragment&) const = default;
};

struct ParseDiagnostics {
  // Groups with more than three fields that were still turned into a triple
  // by treating the last two separators as the field boundaries.
  std::size_t recovered_count = 0;
  // Disjoint and sorted by offset.
  std::vector<SkippedFragment> skipped_fragments;
};

struct ParseResult {
  std::vector<Triple> triples;
  ParseDiagnostics diagnostics;
};

// Total: never throws and never aborts, whatever the input.
ParseResult ParseTriples(std::string_view raw);

// Throws Error(kInvalidArgument) if a field is empty after trimming.
std::string SerializeTriples(std::span<const Triple> triples);
std::string SerializeTriple(const Triple& triple);

// Backslash-escapes the reserved characters of one field.
std::string EscapeField(std::string_view field);

enum class CasePolicy { kPreserve, kLower };

// Collapses whitespace runs to a single space, trims both ends and applies
// the case policy.
std::string NormalizeSurface(std::string_view s,
                             CasePolicy policy = CasePolicy::kPreserve);

// Surface form of a whole linearization with the spacing around '(', ')'
// and ';' made uniform. Two linearizations that differ only in that spacing
// compare equal after this.
std::string CanonicalLinearization(std::string_view s);

bool IsAsciiSpace(char c);
std::string_view TrimAsciiSpace(std::string_view s);

}  // namespace structkit

#endif  // STRUCTKIT_TRIPLE_H_
