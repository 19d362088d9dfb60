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

#include "structkit/span_grounding.h"

#include "structkit/error.h"
#include "structkit/triple.h"

namespace structkit {

MentionGrounder::MentionGrounder(std::string_view text,
                                 GroundingOptions options)
    : text_(text), options_(options) {
  normalized_.reserve(text.size());
  origin_.reserve(text.size());
  bool pending_space = false;
  std::size_t space_at = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (IsAsciiSpace(text[i])) {
      if (!pending_space) space_at = i;
      pending_space = !normalized_.empty();
      continue;
    }
    if (pending_space) {
      normalized_.push_back(' ');
      origin_.push_back(space_at);
      pending_space = false;
    }
    normalized_.push_back(text[i]);
    origin_.push_back(i);
  }
  normalized_lower_ = NormalizeSurface(normalized_, CasePolicy::kLower);
}

std::optional<Span> MentionGrounder::Find(const std::string& haystack,
                                          const std::string& needle,
                                          std::size_t from) const {
  std::size_t pos = haystack.find(needle, from);
  if (pos == std::string::npos) return std::nullopt;
  return Span{pos, pos + needle.size()};
}

Span MentionGrounder::ToOriginal(std::size_t norm_start,
                                 std::size_t norm_len) const {
  // Surfaces are trimmed, so the first and last matched characters are never
  // collapsed whitespace and map to exactly one source byte each.
  return {origin_[norm_start], origin_[norm_start + norm_len - 1] + 1};
}

std::optional<GroundedSpan> MentionGrounder::Next(std::string_view surface) {
  const std::string key = NormalizeSurface(surface);
  if (key.empty()) return std::nullopt;

  std::optional<Span> hit;
  std::size_t& cursor = exact_cursor_[key];
  while (auto found = Find(normalized_, key, cursor)) {
    cursor = found->start + 1;
    Span original = ToOriginal(found->start, key.size());
    if (!taken_.contains({original.start, original.end})) {
      hit = original;
      break;
    }
  }
  if (!hit && options_.case_insensitive_fallback) {
    const std::string lower = NormalizeSurface(key, CasePolicy::kLower);
    std::size_t& lower_cursor = fallback_cursor_[lower];
    while (auto found = Find(normalized_lower_, lower, lower_cursor)) {
      lower_cursor = found->start + 1;
      Span original = ToOriginal(found->start, lower.size());
      if (!taken_.contains({original.start, original.end})) {
        hit = original;
        break;
      }
    }
  }
  if (!hit) return std::nullopt;
  taken_.insert({hit->start, hit->end});
  std::size_t& count = counts_[key];
  GroundedSpan grounded{hit->start, hit->end, key, count++};
  return grounded;
}

std::optional<Span> MentionGrounder::LastBefore(std::string_view surface,
                                                std::size_t limit) const {
  const std::string key = NormalizeSurface(surface);
  if (key.empty()) return std::nullopt;
  std::optional<Span> best;
  std::size_t from = 0;
  while (auto found = Find(normalized_, key, from)) {
    Span original = ToOriginal(found->start, key.size());
    if (original.start >= limit) break;
    best = original;
    from = found->start + 1;
  }
  return best;
}

GroundingResult GroundSurfaces(const std::vector<std::string>& surfaces,
                               std::string_view text,
                               GroundingOptions options) {
  GroundingResult result;
  MentionGrounder grounder(text, options);
  for (const std::string& surface : surfaces) {
    if (auto grounded = grounder.Next(surface)) {
      result.positions.push_back(result.spans.size());
      result.spans.push_back(std::move(*grounded));
    } else {
      result.positions.push_back(std::nullopt);
      result.dropped.push_back(surface);
    }
  }
  return result;
}

void CheckSpan(std::string_view text, Span span) {
  if (span.start >= span.end || span.end > text.size()) {
    throw Error(ErrorCode::kSpanOutOfRange,
                "span [" + std::to_string(span.start) + ", " +
                    std::to_string(span.end) + ") is not within text of " +
                    std::to_string(text.size()) + " bytes");
  }
}

std::string MarkSpan(std::string_view text, Span span) {
  CheckSpan(text, span);
  std::string out;
  out.reserve(text.size() + 4);
  out.append(text.substr(0, span.start));
  out.append("[ ");
  out.append(text.substr(span.start, span.size()));
  out.append(" ]");
  out.append(text.substr(span.end));
  return out;
}

std::optional<std::pair<std::string, Span>> UnmarkSpan(
    std::string_view marked) {
  const std::size_t open = marked.find("[ ");
  if (open == std::string_view::npos) return std::nullopt;
  const std::size_t close = marked.find(" ]", open + 2);
  if (close == std::string_view::npos || close == open + 2) return std::nullopt;
  std::string text;
  text.append(marked.substr(0, open));
  text.append(marked.substr(open + 2, close - open - 2));
  text.append(marked.substr(close + 2));
  return std::make_pair(std::move(text), Span{open, close - 2});
}

}  // namespace structkit
