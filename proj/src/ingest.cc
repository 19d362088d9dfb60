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

#include "structkit/ingest.h"

#include <cctype>
#include <optional>

#include "structkit/error.h"
#include "structkit/triple.h"

namespace structkit {
namespace {

struct Token {
  std::string text;
  std::string tag;
  std::size_t line = 0;
};

struct Joined {
  std::string text;
  std::vector<Span> spans;
};

template <typename Range, typename Get>
Joined JoinTokens(const Range& tokens, Get get) {
  Joined out;
  for (const auto& token : tokens) {
    if (!out.text.empty()) out.text += ' ';
    const std::string& t = get(token);
    out.spans.push_back({out.text.size(), out.text.size() + t.size()});
    out.text += t;
  }
  return out;
}

std::vector<std::string> SplitColumns(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsAsciiSpace(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !IsAsciiSpace(line[i])) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

TaskRecord ConllSentence(const std::vector<Token>& tokens,
                         std::string_view dataset_id, const LabelMap& labels,
                         const std::string& file) {
  const Joined joined =
      JoinTokens(tokens, [](const Token& t) -> const std::string& {
        return t.text;
      });
  EntityGold gold;
  std::optional<std::size_t> open_start;
  std::string open_type;
  std::size_t open_end = 0;
  auto close = [&] {
    if (open_start) {
      gold.entities.push_back(
          {{joined.spans[*open_start].start, joined.spans[open_end].end},
           MapLabel(labels.entity, open_type)});
    }
    open_start.reset();
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tag = tokens[i].tag;
    if (tag == "O") {
      close();
      continue;
    }
    if (tag.size() < 3 || tag[1] != '-' ||
        std::string_view("BIES").find(tag[0]) == std::string_view::npos) {
      throw ParseError(file, tokens[i].line, "bad tag \"" + tag + "\"");
    }
    const char prefix = tag[0];
    const std::string type = tag.substr(2);
    const bool continues = open_start && open_type == type &&
                           (prefix == 'I' || prefix == 'E');
    if (!continues) {
      close();
      open_start = i;
      open_type = type;
    }
    open_end = i;
    if (prefix == 'E' || prefix == 'S') close();
  }
  close();
  TaskRecord record;
  record.task = TaskKind::kNer;
  record.dataset_id = std::string(dataset_id);
  record.text = joined.text;
  record.gold = std::move(gold);
  return record;
}

[[noreturn]] void SpertError(std::size_t doc, const std::string& message) {
  throw Error(ErrorCode::kParseError,
              "document " + std::to_string(doc) + ": " + message);
}

std::size_t Index(const Json& obj, const char* key, std::size_t limit,
                  std::size_t doc) {
  if (!obj.contains(key) || !obj[key].is_number_unsigned()) {
    SpertError(doc, std::string("\"") + key + "\" must be an unsigned integer");
  }
  const auto value = obj[key].get<std::size_t>();
  if (value > limit) {
    SpertError(doc, std::string("\"") + key + "\" is out of range");
  }
  return value;
}

std::string TypeField(const Json& obj, std::size_t doc) {
  if (!obj.contains("type") || !obj["type"].is_string()) {
    SpertError(doc, "\"type\" must be a string");
  }
  return obj["type"].get<std::string>();
}

}  // namespace

LabelMap BuiltinLabelMap(std::string_view dataset_id) {
  if (dataset_id == "conll03") {
    return {{{"LOC", "location"},
             {"PER", "person"},
             {"ORG", "organization"},
             {"MISC", "miscellaneous"}},
            {}};
  }
  if (dataset_id == "conll04") {
    return {{{"Loc", "location"},
             {"Org", "organization"},
             {"Peop", "person"},
             {"Other", "other"}},
            {{"OrgBased_In", "organization based in"},
             {"Located_In", "located in"},
             {"Live_In", "live in"},
             {"Work_For", "work for"},
             {"Kill", "kill"}}};
  }
  if (dataset_id == "ade") {
    return {{{"Adverse-Effect", "disease"}, {"Drug", "drug"}},
            {{"Adverse-Effect", "effect"}}};
  }
  return {};
}

std::string MapLabel(const std::map<std::string, std::string>& map,
                     std::string_view label) {
  if (auto it = map.find(std::string(label)); it != map.end()) {
    return it->second;
  }
  std::string out;
  for (char c : label) {
    out += (c == '_' || c == '-')
               ? ' '
               : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return NormalizeSurface(out);
}

std::vector<TaskRecord> IngestConllNer(std::string_view content,
                                       std::string_view dataset_id,
                                       const LabelMap& labels,
                                       const std::string& file) {
  std::vector<TaskRecord> records;
  std::vector<Token> sentence;
  auto flush = [&] {
    if (!sentence.empty()) {
      records.push_back(ConllSentence(sentence, dataset_id, labels, file));
    }
    sentence.clear();
  };
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto columns = SplitColumns(line);
    if (columns.empty()) {
      flush();
      continue;
    }
    if (columns[0] == "-DOCSTART-") {
      flush();
      continue;
    }
    if (columns.size() < 2) {
      throw ParseError(file, line_no, "expected a token and a tag");
    }
    sentence.push_back({columns.front(), columns.back(), line_no});
  }
  flush();
  return records;
}

std::vector<TaskRecord> IngestSpertJson(const Json& json,
                                        std::string_view dataset_id,
                                        const LabelMap& labels) {
  if (!json.is_array()) {
    throw Error(ErrorCode::kParseError, "expected a JSON array of documents");
  }
  std::vector<TaskRecord> records;
  for (std::size_t d = 0; d < json.size(); ++d) {
    const Json& doc = json[d];
    if (!doc.is_object() || !doc.contains("tokens") ||
        !doc["tokens"].is_array()) {
      SpertError(d, "missing \"tokens\" array");
    }
    std::vector<std::string> tokens;
    for (const Json& t : doc["tokens"]) {
      if (!t.is_string()) SpertError(d, "tokens must be strings");
      tokens.push_back(t.get<std::string>());
    }
    const Joined joined =
        JoinTokens(tokens, [](const std::string& t) -> const std::string& {
          return t;
        });
    EntityGold gold;
    for (const Json& e : doc.value("entities", Json::array())) {
      const std::size_t start = Index(e, "start", tokens.size(), d);
      const std::size_t end = Index(e, "end", tokens.size(), d);
      if (start >= end) SpertError(d, "entity with empty token range");
      gold.entities.push_back(
          {{joined.spans[start].start, joined.spans[end - 1].end},
           MapLabel(labels.entity, TypeField(e, d))});
    }
    for (const Json& r : doc.value("relations", Json::array())) {
      const std::size_t limit =
          gold.entities.empty() ? 0 : gold.entities.size() - 1;
      if (gold.entities.empty()) SpertError(d, "relation without entities");
      gold.relations.push_back({Index(r, "head", limit, d),
                                Index(r, "tail", limit, d),
                                MapLabel(labels.relation, TypeField(r, d))});
    }
    TaskRecord record;
    record.task = TaskKind::kJointEntityRelation;
    record.dataset_id = std::string(dataset_id);
    record.text = joined.text;
    record.gold = std::move(gold);
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace structkit
