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

#include "structkit/triple.h"

#include <optional>

#include "structkit/error.h"

namespace structkit {
namespace {

bool IsReserved(char c) {
  return c == '(' || c == ')' || c == ';' || c == '\\';
}

std::string Unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      out.push_back(s[++i]);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

// Splits group content on unescaped ';'. The raw (still escaped) pieces are
// returned so that over-long groups can be rejoined verbatim.
std::vector<std::string_view> SplitFields(std::string_view content) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i < content.size(); ++i) {
    if (content[i] == '\\') {
      ++i;
    } else if (content[i] == ';') {
      fields.push_back(content.substr(start, i - start));
      start = i + 1;
    }
  }
  fields.push_back(content.substr(start));
  return fields;
}

// Edge whitespace is never part of a field, escaped or not, so that every
// parsed triple serializes back to itself.
std::string CleanField(std::string_view raw) {
  return std::string(TrimAsciiSpace(Unescape(raw)));
}

struct GroupOutcome {
  std::optional<Triple> triple;
  SkipReason reason = SkipReason::kWrongArity;
  bool recovered = false;
};

GroupOutcome ParseGroup(std::string_view content) {
  GroupOutcome outcome;
  std::vector<std::string_view> fields = SplitFields(content);
  if (fields.size() < 3) {
    outcome.reason = SkipReason::kWrongArity;
    return outcome;
  }
  std::string_view head_raw = fields[0];
  if (fields.size() > 3) {
    // The head absorbs every separator but the last two.
    const std::string_view& last_head_piece = fields[fields.size() - 3];
    head_raw = std::string_view(
        fields[0].data(),
        static_cast<std::size_t>(last_head_piece.data() + last_head_piece.size() -
                                 fields[0].data()));
    outcome.recovered = true;
  }
  Triple triple{CleanField(head_raw), CleanField(fields[fields.size() - 2]),
                CleanField(fields[fields.size() - 1])};
  if (triple.head.empty() || triple.relation.empty() || triple.tail.empty()) {
    outcome.reason = SkipReason::kEmptyField;
    outcome.recovered = false;
    return outcome;
  }
  outcome.triple = std::move(triple);
  return outcome;
}

void AppendField(std::string& out, std::string_view field) {
  std::string_view trimmed = TrimAsciiSpace(field);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot serialize a triple with an empty field");
  }
  out += EscapeField(trimmed);
}

}  // namespace

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view TrimAsciiSpace(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && IsAsciiSpace(s[begin])) ++begin;
  while (end > begin && IsAsciiSpace(s[end - 1])) --end;
  return s.substr(begin, end - begin);
}

std::string DebugString(const Triple& triple) {
  return "(" + triple.head + "; " + triple.relation + "; " + triple.tail + ")";
}

std::string_view SkipReasonName(SkipReason reason) {
  switch (reason) {
    case SkipReason::kUnbalancedParen:
      return "unbalanced-paren";
    case SkipReason::kWrongArity:
      return "wrong-arity";
    case SkipReason::kEmptyField:
      return "empty-field";
  }
  return "unknown";
}

ParseResult ParseTriples(std::string_view raw) {
  ParseResult result;
  auto skip = [&](std::size_t begin, std::size_t end, SkipReason reason) {
    result.diagnostics.skipped_fragments.push_back({begin, end, reason});
  };

  constexpr std::size_t kNone = std::string_view::npos;
  std::size_t open = kNone;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '\\') {
      ++i;  // the escaped character is plain text wherever it appears
      continue;
    }
    if (c == '(') {
      if (open != kNone) skip(open, i, SkipReason::kUnbalancedParen);
      open = i;
    } else if (c == ')') {
      if (open == kNone) {
        skip(i, i + 1, SkipReason::kUnbalancedParen);
        continue;
      }
      GroupOutcome outcome = ParseGroup(raw.substr(open + 1, i - open - 1));
      if (outcome.triple) {
        if (outcome.recovered) ++result.diagnostics.recovered_count;
        result.triples.push_back(std::move(*outcome.triple));
      } else {
        skip(open, i + 1, outcome.reason);
      }
      open = kNone;
    }
  }
  if (open != kNone) skip(open, raw.size(), SkipReason::kUnbalancedParen);
  return result;
}

std::string EscapeField(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    if (IsReserved(c)) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string SerializeTriple(const Triple& triple) {
  std::string out = "( ";
  AppendField(out, triple.head);
  out += "; ";
  AppendField(out, triple.relation);
  out += "; ";
  AppendField(out, triple.tail);
  out += " )";
  return out;
}

std::string SerializeTriples(std::span<const Triple> triples) {
  std::string out;
  for (const Triple& triple : triples) {
    if (!out.empty()) out.push_back(' ');
    out += SerializeTriple(triple);
  }
  return out;
}

std::string NormalizeSurface(std::string_view s, CasePolicy policy) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (IsAsciiSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    if (policy == CasePolicy::kLower && c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
    out.push_back(c);
  }
  return out;
}

std::string CanonicalLinearization(std::string_view s) {
  const std::string collapsed = NormalizeSurface(s);
  std::string out;
  out.reserve(collapsed.size());
  for (std::size_t i = 0; i < collapsed.size(); ++i) {
    const char c = collapsed[i];
    const char next = i + 1 < collapsed.size() ? collapsed[i + 1] : '\0';
    if (c == ' ') {
      if (next == ')' || next == ';') continue;
      if (!out.empty() && out.back() == '(') continue;
      out.push_back(c);
      continue;
    }
    if (c == '(' && !out.empty() && out.back() == ')') out.push_back(' ');
    out.push_back(c);
    if (c == ';' && next != ' ' && next != '\0') out.push_back(' ');
  }
  return out;
}

}  // namespace structkit
