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

// Grounding of generated entity surfaces back to character spans, and the
// "[ ... ]" marking used for predicates and event triggers.
//
// Offsets are UTF-8 byte offsets into the source text. Matching compares
// whitespace-normalized strings, so "Pizza\tHut" in the text matches the
// generated surface "Pizza Hut".

#ifndef STRUCTKIT_SPAN_GROUNDING_H_
#define STRUCTKIT_SPAN_GROUNDING_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace structkit {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - start; }
  bool Contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  auto operator<=>(const Span&) const = default;
};

struct GroundedSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  // How many earlier matches of the same surface preceded this one.
  std::size_t occurrence_index = 0;

  Span span() const { return {start, end}; }
  bool operator==(const GroundedSpan&) const = default;
};

struct GroundingOptions {
  // Retry a surface case-insensitively when the exact pass finds no
  // remaining occurrence.
  bool case_insensitive_fallback = false;
};

// Left-to-right sequential matcher over one source text. Every distinct
// surface keeps its own cursor, so the n-th request for a surface returns
// its n-th occurrence; occurrences are never reused and never wrap around.
class MentionGrounder {
 public:
  explicit MentionGrounder(std::string_view text,
                           GroundingOptions options = {});

  std::optional<GroundedSpan> Next(std::string_view surface);

  // Occurrence of `surface` closest to (and starting before) `limit`,
  // without consuming it. Used for antecedents that were never generated as
  // a mention of their own.
  std::optional<Span> LastBefore(std::string_view surface,
                                 std::size_t limit) const;

  std::string_view text() const { return text_; }

 private:
  std::optional<Span> Find(const std::string& haystack,
                           const std::string& needle, std::size_t from) const;
  Span ToOriginal(std::size_t norm_start, std::size_t norm_len) const;

  std::string_view text_;
  GroundingOptions options_;
  std::string normalized_;        // whitespace-collapsed text
  std::string normalized_lower_;  // same, ASCII-lowercased
  std::vector<std::size_t> origin_;  // normalized index -> text offset
  std::map<std::string, std::size_t> exact_cursor_;
  std::map<std::string, std::size_t> fallback_cursor_;
  std::map<std::string, std::size_t> counts_;
  std::set<std::pair<std::size_t, std::size_t>> taken_;
};

struct GroundingResult {
  std::vector<GroundedSpan> spans;
  std::vector<std::string> dropped;
  // For each input surface, its index into `spans`, or nullopt if dropped.
  std::vector<std::optional<std::size_t>> positions;
};

GroundingResult GroundSurfaces(const std::vector<std::string>& surfaces,
                               std::string_view text,
                               GroundingOptions options = {});

// Inserts "[ " before and " ]" after the span. Throws
// Error(kSpanOutOfRange) unless 0 <= start < end <= text.size().
std::string MarkSpan(std::string_view text, Span span);

// Inverse of MarkSpan: strips the first "[ ... ]" pair and returns the
// original text with the span it enclosed.
std::optional<std::pair<std::string, Span>> UnmarkSpan(std::string_view marked);

void CheckSpan(std::string_view text, Span span);

}  // namespace structkit

#endif  // STRUCTKIT_SPAN_GROUNDING_H_
