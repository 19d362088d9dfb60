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

#include "structkit/codec.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "structkit/error.h"
#include "structkit/hash.h"

namespace structkit {
namespace {

constexpr std::size_t kIdHexDigits = 16;

bool InVocab(const std::vector<std::string>& vocab, std::string_view label) {
  if (vocab.empty()) return true;
  const std::string key = NormalizeSurface(label);
  return std::any_of(vocab.begin(), vocab.end(), [&](const std::string& v) {
    return NormalizeSurface(v) == key;
  });
}

void RequireLabel(const std::vector<std::string>& vocab, std::string_view label,
                  const DatasetInfo& info) {
  if (!InVocab(vocab, label)) {
    throw Error(ErrorCode::kInvalidArgument,
                "label \"" + std::string(label) + "\" is not in the " +
                    info.id + " vocabulary");
  }
}

bool SameSurface(std::string_view a, std::string_view b) {
  return NormalizeSurface(a) == NormalizeSurface(b);
}

// Resolves "(antecedent; refer to; mention)" pairs to spans. The encoder
// runs the same linker to pick antecedents the decoder will resolve back to
// the gold mentions.
class CorefLinker {
 public:
  explicit CorefLinker(std::string_view text) : grounder_(text) {}

  // The antecedent resolves to the latest mention already linked under the
  // same surface, or else to the next free occurrence; the mention always
  // takes the next free occurrence of its surface.
  std::optional<std::pair<Span, Span>> Link(std::string_view head,
                                            std::string_view tail) {
    const std::string head_key = NormalizeSurface(head);
    std::optional<Span> head_span;
    if (auto it = linked_.find(head_key);
        it != linked_.end() && !it->second.empty()) {
      head_span = *std::max_element(it->second.begin(), it->second.end());
    } else if (auto grounded = grounder_.Next(head_key)) {
      head_span = grounded->span();
      linked_[head_key].push_back(*head_span);
    }
    if (!head_span) return std::nullopt;
    auto tail_grounded = grounder_.Next(tail);
    if (!tail_grounded) return std::nullopt;
    linked_[tail_grounded->surface].push_back(tail_grounded->span());
    return std::make_pair(*head_span, tail_grounded->span());
  }

 private:
  MentionGrounder grounder_;
  std::map<std::string, std::vector<Span>> linked_;
};

class UnionFind {
 public:
  std::size_t Add(const Span& span) {
    auto [it, inserted] = index_.try_emplace(span, parent_.size());
    if (inserted) parent_.push_back(parent_.size());
    return it->second;
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<Span>> Components() {
    std::map<std::size_t, std::vector<Span>> groups;
    for (const auto& [span, id] : index_) groups[Find(id)].push_back(span);
    std::vector<std::vector<Span>> out;
    for (auto& [root, spans] : groups) {
      if (spans.size() >= 2) out.push_back(std::move(spans));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::map<Span, std::size_t> index_;
  std::vector<std::size_t> parent_;
};

std::vector<Triple> EncodeCoref(const CorefGold& gold, std::string_view text,
                                bool augment) {
  struct Mention {
    Span span;
    std::size_t cluster;
  };
  std::vector<Mention> mentions;
  for (std::size_t c = 0; c < gold.clusters.size(); ++c) {
    if (gold.clusters[c].size() < 2) continue;
    for (const Span& span : gold.clusters[c]) mentions.push_back({span, c});
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention& a, const Mention& b) { return a.span < b.span; });

  auto surface = [&](Span span) { return NormalizeSurface(SpanText(text, span)); };
  auto wrap = [&](std::string s) { return augment ? "[" + s + "]" : s; };

  std::vector<Triple> triples;
  std::map<std::size_t, std::vector<Span>> seen;  // cluster -> earlier mentions
  CorefLinker linker(text);
  for (const Mention& mention : mentions) {
    std::vector<Span>& earlier = seen[mention.cluster];
    if (earlier.empty()) {
      earlier.push_back(mention.span);
      continue;
    }
    const std::string tail = surface(mention.span);
    // Nearest earlier mention first; keep the first candidate the decoder
    // resolves back to exactly this pair.
    std::optional<Span> chosen;
    for (auto it = earlier.rbegin(); it != earlier.rend(); ++it) {
      CorefLinker trial = linker;
      auto linked = trial.Link(surface(*it), tail);
      if (linked && linked->first == *it && linked->second == mention.span) {
        chosen = *it;
        linker = std::move(trial);
        break;
      }
    }
    if (!chosen) {
      chosen = earlier.back();
      linker.Link(surface(*chosen), tail);
    }
    triples.push_back({wrap(surface(*chosen)), std::string(kReferTo),
                       wrap(tail)});
    earlier.push_back(mention.span);
  }
  return triples;
}

std::vector<Triple> EncodeEntities(std::vector<TypedSpan> entities,
                                   std::string_view text, bool augment) {
  std::stable_sort(entities.begin(), entities.end(),
                   [](const TypedSpan& a, const TypedSpan& b) {
                     return a.span < b.span;
                   });
  std::vector<Triple> triples;
  for (const TypedSpan& entity : entities) {
    std::string head = NormalizeSurface(SpanText(text, entity.span));
    if (augment) head = "[" + head + "]";
    triples.push_back({std::move(head), std::string(kInstanceOf),
                       NormalizeSurface(entity.type)});
  }
  return triples;
}

std::string WrapIf(bool augment, std::string s) {
  return augment ? "[" + s + "]" : s;
}

EncodedExample EncodeUnit(const TaskRecord& record, const DatasetInfo& info,
                          const EncodeMode& mode, Family family,
                          std::string_view key, std::size_t predicate_index) {
  const bool aug = mode.augmentation;
  EncodedExample example;
  example.id = ExampleId(key, predicate_index, family);
  DecodeHints& hints = example.hints;
  hints.task = record.task;
  hints.dataset_id = record.dataset_id;
  hints.family = family;
  hints.zero_shot = mode.zero_shot();
  hints.augmented = aug;
  hints.marked_span = record.marked_span;
  hints.text = record.text;
  hints.record_key = std::string(key);
  hints.gold = record.gold;
  if (record.task == TaskKind::kIntentDetection) {
    hints.labels = info.intent_labels;
  } else if (family == Family::kEntity) {
    hints.labels = info.entity_labels;
  } else if (family == Family::kRelation) {
    hints.labels = info.relation_labels;
  }

  std::string body =
      record.marked_span ? MarkSpan(record.text, *record.marked_span)
                         : record.text;
  std::vector<Triple> triples;
  const std::string_view text = record.text;

  switch (record.task) {
    case TaskKind::kNer:
    case TaskKind::kEventTrigger:
    case TaskKind::kSrl:
    case TaskKind::kEventArgument:
    case TaskKind::kJointEntityRelation: {
      const auto& gold = std::get<EntityGold>(record.gold);
      if (family == Family::kEntity) {
        for (const TypedSpan& e : gold.entities) {
          RequireLabel(info.entity_labels, e.type, info);
        }
        triples = EncodeEntities(gold.entities, text, aug);
      } else {
        for (const SpanRelation& rel : gold.relations) {
          RequireLabel(info.relation_labels, rel.type, info);
          triples.push_back(
              {WrapIf(aug, NormalizeSurface(
                               SpanText(text, gold.entities[rel.head].span))),
               NormalizeSurface(rel.type),
               WrapIf(aug, NormalizeSurface(SpanText(
                               text, gold.entities[rel.tail].span)))});
        }
      }
      break;
    }
    case TaskKind::kRelationClassification: {
      const auto& gold = std::get<RcGold>(record.gold);
      RequireLabel(info.relation_labels, gold.relation, info);
      const std::string head = NormalizeSurface(SpanText(text, gold.head));
      const std::string tail = NormalizeSurface(SpanText(text, gold.tail));
      body += " The relationship between " + head + " and " + tail + " is";
      if (mode.zero_shot()) hints.priming = "( " + head + ";";
      triples.push_back({WrapIf(aug, head), NormalizeSurface(gold.relation),
                         WrapIf(aug, tail)});
      break;
    }
    case TaskKind::kOie: {
      const auto& gold = std::get<OieGold>(record.gold);
      for (const auto& tuple : gold.tuples) {
        if (tuple.size() != 3) {
          throw Error(ErrorCode::kInvalidArgument,
                      "only (arg1, predicate, arg2) tuples can be encoded");
        }
        triples.push_back({WrapIf(aug, NormalizeSurface(tuple[0])),
                           NormalizeSurface(tuple[1]),
                           WrapIf(aug, NormalizeSurface(tuple[2]))});
      }
      break;
    }
    case TaskKind::kFactualProbe: {
      const auto& gold = std::get<FactGold>(record.gold);
      RequireLabel(info.relation_labels, gold.relation, info);
      hints.priming = FactPriming({gold.subject, gold.relation});
      triples.push_back({NormalizeSurface(gold.subject),
                         NormalizeSurface(gold.relation),
                         NormalizeSurface(gold.object)});
      break;
    }
    case TaskKind::kCoreference:
      triples = EncodeCoref(std::get<CorefGold>(record.gold), text, aug);
      break;
    case TaskKind::kDialogueStateTracking: {
      DstGold gold = std::get<DstGold>(record.gold);
      if (gold.slots.empty()) gold.slots = info.slots;
      if (gold.slots.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "no slot list for dataset " + info.id);
      }
      for (const auto& [slot, value] : gold.state) {
        if (std::find(gold.slots.begin(), gold.slots.end(), slot) ==
            gold.slots.end()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "slot \"" + slot + "\" is not in the slot list");
        }
      }
      for (const std::string& slot : gold.slots) {
        auto [it, inserted] =
            gold.state.try_emplace(slot, std::string(kNotGiven));
        triples.push_back({std::string(kDstHead), NormalizeSurface(slot),
                           NormalizeSurface(it->second)});
      }
      hints.slots = gold.slots;
      hints.gold = std::move(gold);
      break;
    }
    case TaskKind::kIntentDetection: {
      const auto& gold = std::get<IntentGold>(record.gold);
      RequireLabel(info.intent_labels, gold.intent, info);
      triples.push_back({std::string(kIntentHead),
                         std::string(kIntentRelation),
                         NormalizeSurface(gold.intent)});
      break;
    }
  }

  example.input = InputPrefix(info, family, mode) + " " + body;
  example.gold_output = SerializeTriples(triples);
  return example;
}

}  // namespace

std::string ZeroShotPrefix(Family family) {
  return std::string(FamilyName(family)) + ":";
}

std::string InputPrefix(const DatasetInfo& info, Family family,
                        const EncodeMode& mode) {
  if (mode.zero_shot()) return ZeroShotPrefix(family);
  return info.tag + ":";
}

std::string RecordKey(TaskKind task, std::string_view dataset_id,
                      std::size_t index) {
  return Sha256Hex(std::string(TaskKindName(task)) + '\x1f' +
                   std::string(dataset_id) + '\x1f' + std::to_string(index))
      .substr(0, kIdHexDigits);
}

std::string ExampleId(std::string_view record_key, std::size_t predicate_index,
                      Family unit) {
  return Sha256Hex(std::string(record_key) + '\x1f' +
                   std::to_string(predicate_index) + '\x1f' +
                   std::string(FamilyName(unit)))
      .substr(0, kIdHexDigits);
}

std::vector<EncodedExample> EncodeRecord(const TaskRecord& record,
                                         const EncodeMode& mode,
                                         const DatasetRegistry& registry,
                                         std::string_view record_key) {
  if (mode.augmentation && mode.zero_shot()) {
    throw Error(ErrorCode::kInvalidArgument,
                "augmentation is only defined for multi-task encoding");
  }
  const DatasetInfo& info = registry.Get(record.task, record.dataset_id);
  ValidateRecord(record);
  const std::string key =
      record_key.empty()
          ? Sha256Hex(std::string(TaskKindName(record.task)) + '\x1f' +
                      record.dataset_id + '\x1f' + record.text)
                .substr(0, kIdHexDigits)
          : std::string(record_key);

  std::vector<TaskRecord> units;
  if (record.task == TaskKind::kSrl ||
      record.task == TaskKind::kEventArgument) {
    units = ExpandMultiPredicate(record);
  } else {
    units.push_back(record);
  }
  std::vector<EncodedExample> out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (Family family : FamiliesFor(record.task)) {
      out.push_back(EncodeUnit(units[i], info, mode, family, key, i));
    }
  }
  return out;
}

std::vector<TaskRecord> ExpandMultiPredicate(const TaskRecord& record) {
  if (record.task != TaskKind::kSrl &&
      record.task != TaskKind::kEventArgument) {
    throw Error(ErrorCode::kInvalidArgument,
                "only SRL and event-argument records have predicates");
  }
  if (std::holds_alternative<EntityGold>(record.gold)) {
    if (!record.marked_span) {
      throw Error(ErrorCode::kNoPredicate, "record has no marked predicate");
    }
    return {record};
  }
  const auto& frames = std::get<FrameGold>(record.gold).frames;
  if (frames.empty()) {
    throw Error(ErrorCode::kNoPredicate, "record has no predicate");
  }
  std::vector<TaskRecord> out;
  for (const PredicateFrame& frame : frames) {
    TaskRecord unit;
    unit.task = record.task;
    unit.dataset_id = record.dataset_id;
    unit.text = record.text;
    unit.marked_span = frame.predicate;
    unit.gold = EntityGold{frame.arguments, {}};
    out.push_back(std::move(unit));
  }
  return out;
}

std::string StripAugmentation(std::string_view field) {
  std::string_view trimmed = TrimAsciiSpace(field);
  if (trimmed.size() >= 2 && trimmed.front() == '[' && trimmed.back() == ']') {
    trimmed = trimmed.substr(1, trimmed.size() - 2);
  }
  return NormalizeSurface(trimmed);
}

std::string CompleteWithPriming(std::string_view priming,
                                std::string_view output) {
  if (priming.empty()) return std::string(output);
  const std::string canonical = CanonicalLinearization(output);
  if (canonical.starts_with(CanonicalLinearization(priming))) {
    return std::string(output);
  }
  return std::string(priming) + " " + std::string(output);
}

EntityDecodeResult DecodeEntityPrediction(std::span<const Triple> triples,
                                          std::string_view text,
                                          const std::vector<std::string>& vocab,
                                          GroundingOptions options) {
  EntityDecodeResult result;
  std::vector<std::string> heads;
  std::vector<std::string> types;
  for (const Triple& triple : triples) {
    if (!SameSurface(triple.relation, kInstanceOf) ||
        !InVocab(vocab, triple.tail)) {
      ++result.dropped_label;
      continue;
    }
    heads.push_back(StripAugmentation(triple.head));
    types.push_back(NormalizeSurface(triple.tail));
  }
  GroundingResult grounded = GroundSurfaces(heads, text, options);
  for (std::size_t i = 0; i < heads.size(); ++i) {
    if (!grounded.positions[i]) {
      ++result.dropped_ungrounded;
      continue;
    }
    result.entities.push_back(
        {grounded.spans[*grounded.positions[i]].span(), types[i]});
  }
  return result;
}

RelationDecodeResult DecodeRelationPrediction(
    std::span<const Triple> triples, const std::vector<std::string>& vocab,
    bool trim_to_first) {
  RelationDecodeResult result;
  std::set<Triple> seen;
  bool kept_one = false;
  for (const Triple& triple : triples) {
    // Type assertions belong to the entity view; they are not drops.
    if (SameSurface(triple.relation, kInstanceOf)) continue;
    if ((trim_to_first && kept_one) || !InVocab(vocab, triple.relation)) {
      ++result.dropped;
      continue;
    }
    kept_one = true;
    Triple clean{StripAugmentation(triple.head),
                 NormalizeSurface(triple.relation),
                 StripAugmentation(triple.tail)};
    if (seen.insert(clean).second) result.relations.push_back(clean);
  }
  return result;
}

std::vector<OpenTuple> DecodeOpenTriples(std::span<const Triple> triples,
                                         bool trim_to_first) {
  if (trim_to_first && triples.size() > 1) triples = triples.first(1);
  std::vector<OpenTuple> out;
  std::set<OpenTuple> seen;
  for (const Triple& triple : triples) {
    OpenTuple tuple{StripAugmentation(triple.head),
                    NormalizeSurface(triple.relation),
                    StripAugmentation(triple.tail)};
    if (seen.insert(tuple).second) out.push_back(std::move(tuple));
  }
  return out;
}

CorefDecodeResult DecodeCoref(std::span<const Triple> triples,
                              std::string_view text) {
  CorefDecodeResult result;
  CorefLinker linker(text);
  UnionFind components;
  for (const Triple& triple : triples) {
    if (!SameSurface(triple.relation, kReferTo)) {
      ++result.dropped;
      continue;
    }
    auto linked = linker.Link(StripAugmentation(triple.head),
                              StripAugmentation(triple.tail));
    if (!linked) {
      ++result.dropped;
      continue;
    }
    components.Union(components.Add(linked->first),
                     components.Add(linked->second));
  }
  result.clusters = components.Components();
  return result;
}

std::map<std::string, std::string> DecodeDst(
    std::span<const Triple> triples, const std::vector<std::string>& slots) {
  std::map<std::string, std::string> state;
  for (const std::string& slot : slots) {
    state[slot] = std::string(kNotGiven);
  }
  for (const Triple& triple : triples) {
    if (!SameSurface(triple.head, kDstHead)) continue;
    const std::string relation = NormalizeSurface(triple.relation);
    for (const std::string& slot : slots) {
      if (NormalizeSurface(slot) == relation) {
        state[slot] = NormalizeSurface(triple.tail);
      }
    }
  }
  return state;
}

std::optional<std::string> DecodeIntent(std::span<const Triple> triples) {
  for (const Triple& triple : triples) {
    if (SameSurface(triple.head, kIntentHead) &&
        SameSurface(triple.relation, kIntentRelation)) {
      return NormalizeSurface(triple.tail);
    }
  }
  return std::nullopt;
}

std::string FactPriming(const FactQuery& query) {
  return "( " + EscapeField(NormalizeSurface(query.subject)) + "; " +
         EscapeField(NormalizeSurface(query.relation)) + ";";
}

std::string DecodeFactualProbe(std::string_view generated,
                               const FactQuery& query) {
  for (const Triple& triple : ParseTriples(generated).triples) {
    if (SameSurface(triple.head, query.subject) &&
        SameSurface(triple.relation, query.relation)) {
      return NormalizeSurface(triple.tail);
    }
  }
  const std::size_t close = generated.find(')');
  if (close == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedCompletion,
                "generation has no closing parenthesis");
  }
  return NormalizeSurface(generated.substr(0, close));
}

}  // namespace structkit
