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

#include "structkit/schema_align.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "structkit/error.h"
#include "structkit/io.h"

namespace structkit {
namespace {

constexpr std::string_view kHeader = "# structkit schema alignment v1";
constexpr std::string_view kDatasetComment = "# dataset\t";

using LabelSets = std::map<std::string, std::set<std::string>>;
using PairLabelSets =
    std::map<std::pair<std::string, std::string>, std::set<std::string>>;

struct Contingency {
  std::map<std::string, std::map<std::string, std::size_t>> joint;
  std::set<std::string> targets;  // every target the smoothing ranges over
};

bool Allowed(const std::vector<std::string>& vocab, const std::string& label) {
  return vocab.empty() ||
         std::find(vocab.begin(), vocab.end(), label) != vocab.end();
}

std::vector<std::string> NormalizedVocab(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  for (const std::string& label : v) out.push_back(NormalizeSurface(label));
  return out;
}

void CollectDownstream(const TaskRecord& record, LabelSets& entities,
                       PairLabelSets& relations) {
  const std::string_view text = record.text;
  auto surface = [&](Span span) { return NormalizeSurface(SpanText(text, span)); };
  auto add_entities = [&](const std::vector<TypedSpan>& spans) {
    for (const TypedSpan& e : spans) {
      entities[surface(e.span)].insert(NormalizeSurface(e.type));
    }
  };
  if (const auto* gold = std::get_if<EntityGold>(&record.gold)) {
    add_entities(gold->entities);
    for (const SpanRelation& rel : gold->relations) {
      relations[{surface(gold->entities[rel.head].span),
                 surface(gold->entities[rel.tail].span)}]
          .insert(NormalizeSurface(rel.type));
    }
  } else if (const auto* frames = std::get_if<FrameGold>(&record.gold)) {
    for (const PredicateFrame& frame : frames->frames) {
      add_entities(frame.arguments);
    }
  } else if (const auto* rc = std::get_if<RcGold>(&record.gold)) {
    relations[{surface(rc->head), surface(rc->tail)}].insert(
        NormalizeSurface(rc->relation));
  } else if (const auto* fact = std::get_if<FactGold>(&record.gold)) {
    relations[{NormalizeSurface(fact->subject),
               NormalizeSurface(fact->object)}]
        .insert(NormalizeSurface(fact->relation));
  }
}

void FillMap(const Contingency& table, std::map<std::string, AlignmentEntry>& out) {
  std::size_t total = 0;
  std::map<std::string, std::size_t> source_count;
  std::map<std::string, std::size_t> target_count;
  for (const auto& [source, row] : table.joint) {
    for (const auto& [target, count] : row) {
      total += count;
      source_count[source] += count;
      target_count[target] += count;
    }
  }
  const double num_sources = static_cast<double>(table.joint.size());
  const double num_targets = static_cast<double>(table.targets.size());
  const double smoothed_total =
      static_cast<double>(total) + num_sources * num_targets;

  for (const auto& [source, row] : table.joint) {
    std::optional<AlignmentEntry> best;
    std::size_t best_count = 0;
    for (const auto& [target, count] : row) {
      if (count == 0) continue;
      const double joint = static_cast<double>(count) + 1.0;
      const double marginal_s =
          static_cast<double>(source_count[source]) + num_targets;
      const double marginal_t =
          static_cast<double>(target_count[target]) + num_sources;
      const double pmi =
          std::log(joint * smoothed_total / (marginal_s * marginal_t));
      // Rows iterate targets in lexicographic order, so strict comparisons
      // keep the smaller label on a full tie.
      if (!best || pmi > best->score ||
          (pmi == best->score && count > best_count)) {
        best = AlignmentEntry{target, pmi, false};
        best_count = count;
      }
    }
    if (best) out[source] = *best;
  }
}

std::string EscapeTsv(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::optional<std::string> UnescapeTsv(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i == s.size()) return std::nullopt;
    switch (s[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: return std::nullopt;
    }
  }
  return out;
}

std::string FormatScore(double score) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), score);
  return std::string(buffer, end);
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::string_view AlignKindName(AlignKind kind) {
  return kind == AlignKind::kEntity ? "entity" : "relation";
}

SchemaAlignment BuildCooccurrenceAlignment(
    std::span<const PretrainExample> pretrain,
    std::span<const TaskRecord> downstream, const DatasetInfo& info) {
  LabelSets entity_labels;
  PairLabelSets relation_labels;
  for (const TaskRecord& record : downstream) {
    CollectDownstream(record, entity_labels, relation_labels);
  }
  const bool usable_pretrain =
      std::any_of(pretrain.begin(), pretrain.end(),
                  [](const PretrainExample& e) { return !e.triples.empty(); });
  if (!usable_pretrain) {
    throw Error(ErrorCode::kEmptyCorpus, "pretraining corpus has no triples");
  }
  if (entity_labels.empty() && relation_labels.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "downstream records carry no gold labels");
  }

  const auto entity_vocab = NormalizedVocab(info.entity_labels);
  const auto relation_vocab = NormalizedVocab(info.relation_labels);
  Contingency entities;
  Contingency relations;
  for (const auto& [surface, labels] : entity_labels) {
    for (const auto& l : labels) {
      if (Allowed(entity_vocab, l)) entities.targets.insert(l);
    }
  }
  for (const auto& [pair, labels] : relation_labels) {
    for (const auto& l : labels) {
      if (Allowed(relation_vocab, l)) relations.targets.insert(l);
    }
  }
  for (const auto& l : entity_vocab) entities.targets.insert(l);
  for (const auto& l : relation_vocab) relations.targets.insert(l);

  for (const PretrainExample& example : pretrain) {
    for (const Triple& triple : example.triples) {
      const std::string head = NormalizeSurface(triple.head);
      const std::string relation = NormalizeSurface(triple.relation);
      const std::string tail = NormalizeSurface(triple.tail);
      if (head.empty() || relation.empty() || tail.empty()) continue;
      if (relation == "instance of") {
        auto it = entity_labels.find(head);
        if (it == entity_labels.end()) continue;
        for (const std::string& target : it->second) {
          if (Allowed(entity_vocab, target)) ++entities.joint[tail][target];
        }
      } else {
        auto it = relation_labels.find({head, tail});
        if (it == relation_labels.end()) continue;
        for (const std::string& target : it->second) {
          if (Allowed(relation_vocab, target)) {
            ++relations.joint[relation][target];
          }
        }
      }
    }
  }

  SchemaAlignment alignment;
  alignment.dataset_id = info.id;
  FillMap(entities, alignment.entity_type_map);
  FillMap(relations, alignment.relation_map);
  return alignment;
}

std::optional<Triple> ApplyAlignment(const Triple& triple,
                                     const SchemaAlignment& alignment) {
  const bool is_entity = NormalizeSurface(triple.relation) == "instance of";
  const auto& map = alignment.Map(is_entity ? AlignKind::kEntity
                                            : AlignKind::kRelation);
  const std::string label =
      NormalizeSurface(is_entity ? triple.tail : triple.relation);
  std::optional<std::string> target;
  if (auto it = map.find(label); it != map.end()) {
    target = it->second.target;
  } else {
    for (const auto& [source, entry] : map) {
      if (entry.target == label) {
        target = label;
        break;
      }
    }
  }
  if (!target) return std::nullopt;
  Triple out = triple;
  (is_entity ? out.tail : out.relation) = *target;
  return out;
}

SchemaAlignment MergeAlignments(std::span<const SchemaAlignment> layers) {
  SchemaAlignment merged;
  for (const SchemaAlignment& layer : layers) {
    if (!layer.dataset_id.empty()) merged.dataset_id = layer.dataset_id;
    for (AlignKind kind : {AlignKind::kEntity, AlignKind::kRelation}) {
      auto& out = merged.Map(kind);
      for (const auto& [source, entry] : layer.Map(kind)) {
        auto it = out.find(source);
        if (it == out.end()) {
          out.emplace(source, entry);
        } else if (entry.curated || !it->second.curated) {
          it->second = entry;
        }
      }
    }
  }
  return merged;
}

void ValidateAlignment(const SchemaAlignment& alignment,
                       const DatasetInfo& info) {
  for (AlignKind kind : {AlignKind::kEntity, AlignKind::kRelation}) {
    const auto vocab = NormalizedVocab(kind == AlignKind::kEntity
                                           ? info.entity_labels
                                           : info.relation_labels);
    for (const auto& [source, entry] : alignment.Map(kind)) {
      if (!Allowed(vocab, NormalizeSurface(entry.target))) {
        throw Error(ErrorCode::kConfigError,
                    "alignment target \"" + entry.target +
                        "\" is not a " + info.id + " label");
      }
    }
  }
}

std::string SerializeAlignment(const SchemaAlignment& alignment) {
  std::string out(kHeader);
  out.push_back('\n');
  if (!alignment.dataset_id.empty()) {
    out += kDatasetComment;
    out += EscapeTsv(alignment.dataset_id);
    out.push_back('\n');
  }
  for (AlignKind kind : {AlignKind::kEntity, AlignKind::kRelation}) {
    for (const auto& [source, entry] : alignment.Map(kind)) {
      out += AlignKindName(kind);
      out.push_back('\t');
      out += EscapeTsv(source);
      out.push_back('\t');
      out += EscapeTsv(entry.target);
      out.push_back('\t');
      out += FormatScore(entry.score);
      out.push_back('\t');
      out.push_back(entry.curated ? '1' : '0');
      out.push_back('\n');
    }
  }
  return out;
}

SchemaAlignment ParseAlignment(std::string_view content,
                               const std::string& file) {
  SchemaAlignment alignment;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kDatasetComment)) {
        auto id = UnescapeTsv(line.substr(kDatasetComment.size()));
        if (!id) throw ParseError(file, line_no, "bad escape in dataset id");
        alignment.dataset_id = *id;
      }
      continue;
    }
    const auto fields = SplitTabs(line);
    if (fields.size() != 5) {
      throw ParseError(file, line_no,
                       "expected 5 tab-separated fields, found " +
                           std::to_string(fields.size()));
    }
    AlignKind kind;
    if (fields[0] == "entity") {
      kind = AlignKind::kEntity;
    } else if (fields[0] == "relation") {
      kind = AlignKind::kRelation;
    } else {
      throw ParseError(file, line_no,
                       "unknown kind \"" + std::string(fields[0]) + "\"");
    }
    auto source = UnescapeTsv(fields[1]);
    auto target = UnescapeTsv(fields[2]);
    if (!source || !target) throw ParseError(file, line_no, "bad escape");
    const std::string key = NormalizeSurface(*source);
    if (key.empty() || NormalizeSurface(*target).empty()) {
      throw ParseError(file, line_no, "empty label");
    }
    AlignmentEntry entry;
    entry.target = *target;
    const std::string_view score = fields[3];
    auto [ptr, ec] =
        std::from_chars(score.data(), score.data() + score.size(), entry.score);
    if (ec != std::errc() || ptr != score.data() + score.size()) {
      throw ParseError(file, line_no,
                       "bad score \"" + std::string(score) + "\"");
    }
    if (fields[4] == "1") {
      entry.curated = true;
    } else if (fields[4] != "0") {
      throw ParseError(file, line_no, "curated must be 0 or 1");
    }
    if (!alignment.Map(kind).emplace(key, std::move(entry)).second) {
      throw ParseError(file, line_no,
                       "duplicate " + std::string(AlignKindName(kind)) +
                           " source label \"" + key + "\"");
    }
  }
  return alignment;
}

SchemaAlignment LoadAlignment(const std::string& path) {
  return ParseAlignment(ReadFile(path), path);
}

void SaveAlignment(const SchemaAlignment& alignment, const std::string& path) {
  WriteFileAtomic(path, SerializeAlignment(alignment));
}

}  // namespace structkit
