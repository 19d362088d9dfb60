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

#include "structkit/task.h"

#include <algorithm>
#include <array>
#include <utility>

#include "structkit/error.h"

namespace structkit {
namespace {

constexpr std::array<std::pair<TaskKind, std::string_view>, 11> kTaskNames = {{
    {TaskKind::kOie, "oie"},
    {TaskKind::kRelationClassification, "rc"},
    {TaskKind::kFactualProbe, "fp"},
    {TaskKind::kJointEntityRelation, "jer"},
    {TaskKind::kNer, "ner"},
    {TaskKind::kSrl, "srl"},
    {TaskKind::kEventTrigger, "ee_trg"},
    {TaskKind::kEventArgument, "ee_arg"},
    {TaskKind::kCoreference, "cr"},
    {TaskKind::kDialogueStateTracking, "dst"},
    {TaskKind::kIntentDetection, "id"},
}};

[[noreturn]] void SchemaError(const std::string& message) {
  throw Error(ErrorCode::kParseError, message);
}

const Json& Field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    SchemaError(std::string("missing field \"") + key + "\"");
  }
  return json.at(key);
}

std::string StringField(const Json& json, const char* key) {
  const Json& value = Field(json, key);
  if (!value.is_string()) {
    SchemaError(std::string("field \"") + key + "\" must be a string");
  }
  return value.get<std::string>();
}

std::size_t IndexField(const Json& json, const char* key) {
  const Json& value = Field(json, key);
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    SchemaError(std::string("field \"") + key +
                "\" must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

const Json& ArrayField(const Json& json, const char* key) {
  const Json& value = Field(json, key);
  if (!value.is_array()) {
    SchemaError(std::string("field \"") + key + "\" must be an array");
  }
  return value;
}

Json SpanToJson(Span span) { return {{"start", span.start}, {"end", span.end}}; }

Span SpanFromJson(const Json& json) {
  if (json.is_array()) {
    if (json.size() != 2 || !json[0].is_number_integer() ||
        !json[1].is_number_integer()) {
      SchemaError("a span array must hold two integers");
    }
    return {json[0].get<std::size_t>(), json[1].get<std::size_t>()};
  }
  return {IndexField(json, "start"), IndexField(json, "end")};
}

Json TypedSpanToJson(const TypedSpan& typed) {
  return {{"start", typed.span.start},
          {"end", typed.span.end},
          {"type", typed.type}};
}

TypedSpan TypedSpanFromJson(const Json& json) {
  return {SpanFromJson(json), StringField(json, "type")};
}

std::vector<TypedSpan> TypedSpansFromJson(const Json& array) {
  std::vector<TypedSpan> out;
  for (const Json& item : array) out.push_back(TypedSpanFromJson(item));
  return out;
}

Json TypedSpansToJson(const std::vector<TypedSpan>& spans) {
  Json out = Json::array();
  for (const TypedSpan& typed : spans) out.push_back(TypedSpanToJson(typed));
  return out;
}

EntityGold EntityGoldFromJson(const Json& json) {
  EntityGold gold;
  if (json.contains("entities")) {
    gold.entities = TypedSpansFromJson(ArrayField(json, "entities"));
  }
  if (json.contains("relations")) {
    for (const Json& item : ArrayField(json, "relations")) {
      gold.relations.push_back({IndexField(item, "head"),
                                IndexField(item, "tail"),
                                StringField(item, "type")});
    }
  }
  return gold;
}

FrameGold FrameGoldFromJson(const Json& json) {
  FrameGold gold;
  for (const Json& item : ArrayField(json, "frames")) {
    PredicateFrame frame;
    frame.predicate = SpanFromJson(item);
    if (item.contains("type")) frame.type = StringField(item, "type");
    if (item.contains("arguments")) {
      frame.arguments = TypedSpansFromJson(ArrayField(item, "arguments"));
    }
    gold.frames.push_back(std::move(frame));
  }
  return gold;
}

void CheckEntityTypes(const std::vector<TypedSpan>& spans,
                      std::string_view text) {
  for (const TypedSpan& typed : spans) {
    CheckSpan(text, typed.span);
    if (typed.type.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "entity type must be non-empty");
    }
  }
}

bool GoldFitsTask(TaskKind task, const Gold& gold) {
  switch (task) {
    case TaskKind::kNer:
    case TaskKind::kJointEntityRelation:
    case TaskKind::kEventTrigger:
      return std::holds_alternative<EntityGold>(gold);
    case TaskKind::kSrl:
    case TaskKind::kEventArgument:
      return std::holds_alternative<EntityGold>(gold) ||
             std::holds_alternative<FrameGold>(gold);
    case TaskKind::kRelationClassification:
      return std::holds_alternative<RcGold>(gold);
    case TaskKind::kOie:
      return std::holds_alternative<OieGold>(gold);
    case TaskKind::kFactualProbe:
      return std::holds_alternative<FactGold>(gold);
    case TaskKind::kCoreference:
      return std::holds_alternative<CorefGold>(gold);
    case TaskKind::kDialogueStateTracking:
      return std::holds_alternative<DstGold>(gold);
    case TaskKind::kIntentDetection:
      return std::holds_alternative<IntentGold>(gold);
  }
  return false;
}

}  // namespace

std::string_view TaskKindName(TaskKind task) {
  for (const auto& [kind, name] : kTaskNames) {
    if (kind == task) return name;
  }
  return "unknown";
}

TaskKind ParseTaskKind(std::string_view name) {
  for (const auto& [kind, known] : kTaskNames) {
    if (known == name) return kind;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown task \"" + std::string(name) + "\"");
}

const std::vector<TaskKind>& AllTaskKinds() {
  static const std::vector<TaskKind> kAll = [] {
    std::vector<TaskKind> all;
    for (const auto& entry : kTaskNames) all.push_back(entry.first);
    return all;
  }();
  return kAll;
}

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kEntity:
      return "entity";
    case Family::kRelation:
      return "relation";
    case Family::kTriple:
      return "triple";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  if (name == "entity") return Family::kEntity;
  if (name == "relation") return Family::kRelation;
  if (name == "triple") return Family::kTriple;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown family \"" + std::string(name) + "\"");
}

std::vector<Family> FamiliesFor(TaskKind task) {
  switch (task) {
    case TaskKind::kOie:
      return {Family::kTriple};
    case TaskKind::kRelationClassification:
    case TaskKind::kFactualProbe:
      return {Family::kRelation};
    case TaskKind::kJointEntityRelation:
      return {Family::kEntity, Family::kRelation};
    default:
      return {Family::kEntity};
  }
}

std::string SpanText(std::string_view text, Span span) {
  CheckSpan(text, span);
  return std::string(text.substr(span.start, span.size()));
}

void ValidateRecord(const TaskRecord& record) {
  if (!GoldFitsTask(record.task, record.gold)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gold structure does not fit task " +
                    std::string(TaskKindName(record.task)));
  }
  const std::string_view text = record.text;
  if (record.marked_span) CheckSpan(text, *record.marked_span);

  std::visit(
      [&](const auto& gold) {
        using T = std::decay_t<decltype(gold)>;
        if constexpr (std::is_same_v<T, EntityGold>) {
          CheckEntityTypes(gold.entities, text);
          for (const SpanRelation& rel : gold.relations) {
            if (rel.head >= gold.entities.size() ||
                rel.tail >= gold.entities.size() || rel.type.empty()) {
              throw Error(ErrorCode::kInvalidArgument,
                          "relation references a missing entity");
            }
          }
        } else if constexpr (std::is_same_v<T, FrameGold>) {
          for (const PredicateFrame& frame : gold.frames) {
            CheckSpan(text, frame.predicate);
            CheckEntityTypes(frame.arguments, text);
          }
        } else if constexpr (std::is_same_v<T, RcGold>) {
          CheckSpan(text, gold.head);
          CheckSpan(text, gold.tail);
          if (gold.relation.empty()) {
            throw Error(ErrorCode::kInvalidArgument, "empty relation label");
          }
        } else if constexpr (std::is_same_v<T, OieGold>) {
          for (const auto& tuple : gold.tuples) {
            if (tuple.size() < 2) {
              throw Error(ErrorCode::kInvalidArgument,
                          "an open tuple needs at least two fields");
            }
          }
        } else if constexpr (std::is_same_v<T, FactGold>) {
          if (gold.subject.empty() || gold.relation.empty() ||
              gold.object.empty()) {
            throw Error(ErrorCode::kInvalidArgument,
                        "factual probe gold needs subject, relation, object");
          }
        } else if constexpr (std::is_same_v<T, CorefGold>) {
          for (const auto& cluster : gold.clusters) {
            for (const Span& mention : cluster) CheckSpan(text, mention);
          }
        } else if constexpr (std::is_same_v<T, DstGold>) {
          for (const std::string& slot : gold.slots) {
            if (!gold.state.contains(slot)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "dialogue state lacks slot \"" + slot + "\"");
            }
          }
          if (!gold.slots.empty()) {
            for (const auto& [slot, value] : gold.state) {
              if (std::find(gold.slots.begin(), gold.slots.end(), slot) ==
                  gold.slots.end()) {
                throw Error(ErrorCode::kInvalidArgument,
                            "dialogue state has unknown slot \"" + slot + "\"");
              }
            }
          }
        } else if constexpr (std::is_same_v<T, IntentGold>) {
          if (gold.intent.empty()) {
            throw Error(ErrorCode::kInvalidArgument, "empty intent label");
          }
        }
      },
      record.gold);
}

Json GoldToJson(const Gold& gold) {
  return std::visit(
      [](const auto& g) -> Json {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, EntityGold>) {
          Json out = {{"entities", TypedSpansToJson(g.entities)}};
          if (!g.relations.empty()) {
            Json relations = Json::array();
            for (const SpanRelation& rel : g.relations) {
              relations.push_back(
                  {{"head", rel.head}, {"tail", rel.tail}, {"type", rel.type}});
            }
            out["relations"] = std::move(relations);
          }
          return out;
        } else if constexpr (std::is_same_v<T, FrameGold>) {
          Json frames = Json::array();
          for (const PredicateFrame& frame : g.frames) {
            Json item = SpanToJson(frame.predicate);
            if (!frame.type.empty()) item["type"] = frame.type;
            item["arguments"] = TypedSpansToJson(frame.arguments);
            frames.push_back(std::move(item));
          }
          return {{"frames", std::move(frames)}};
        } else if constexpr (std::is_same_v<T, RcGold>) {
          return {{"head", SpanToJson(g.head)},
                  {"tail", SpanToJson(g.tail)},
                  {"relation", g.relation}};
        } else if constexpr (std::is_same_v<T, OieGold>) {
          return {{"tuples", g.tuples}};
        } else if constexpr (std::is_same_v<T, FactGold>) {
          return {{"subject", g.subject},
                  {"relation", g.relation},
                  {"object", g.object}};
        } else if constexpr (std::is_same_v<T, CorefGold>) {
          Json clusters = Json::array();
          for (const auto& cluster : g.clusters) {
            Json mentions = Json::array();
            for (const Span& mention : cluster) {
              mentions.push_back(SpanToJson(mention));
            }
            clusters.push_back(std::move(mentions));
          }
          return {{"clusters", std::move(clusters)}};
        } else if constexpr (std::is_same_v<T, DstGold>) {
          return {{"slots", g.slots}, {"state", g.state}};
        } else {
          return {{"intent", g.intent}};
        }
      },
      gold);
}

Gold GoldFromJson(TaskKind task, const Json& json) {
  if (!json.is_object()) SchemaError("\"gold\" must be an object");
  switch (task) {
    case TaskKind::kNer:
    case TaskKind::kJointEntityRelation:
    case TaskKind::kEventTrigger:
      return EntityGoldFromJson(json);
    case TaskKind::kSrl:
    case TaskKind::kEventArgument:
      if (json.contains("frames")) return FrameGoldFromJson(json);
      return EntityGoldFromJson(json);
    case TaskKind::kRelationClassification:
      return RcGold{SpanFromJson(Field(json, "head")),
                    SpanFromJson(Field(json, "tail")),
                    StringField(json, "relation")};
    case TaskKind::kOie: {
      OieGold gold;
      for (const Json& tuple : ArrayField(json, "tuples")) {
        if (!tuple.is_array()) SchemaError("each tuple must be an array");
        std::vector<std::string> fields;
        for (const Json& field : tuple) {
          if (!field.is_string()) SchemaError("tuple fields must be strings");
          fields.push_back(field.get<std::string>());
        }
        gold.tuples.push_back(std::move(fields));
      }
      return gold;
    }
    case TaskKind::kFactualProbe:
      return FactGold{StringField(json, "subject"),
                      StringField(json, "relation"),
                      StringField(json, "object")};
    case TaskKind::kCoreference: {
      CorefGold gold;
      for (const Json& cluster : ArrayField(json, "clusters")) {
        if (!cluster.is_array()) SchemaError("each cluster must be an array");
        std::vector<Span> mentions;
        for (const Json& mention : cluster) {
          mentions.push_back(SpanFromJson(mention));
        }
        gold.clusters.push_back(std::move(mentions));
      }
      return gold;
    }
    case TaskKind::kDialogueStateTracking: {
      DstGold gold;
      if (json.contains("slots")) {
        for (const Json& slot : ArrayField(json, "slots")) {
          if (!slot.is_string()) SchemaError("slot names must be strings");
          gold.slots.push_back(slot.get<std::string>());
        }
      }
      if (json.contains("state")) {
        const Json& state = Field(json, "state");
        if (!state.is_object()) SchemaError("\"state\" must be an object");
        for (const auto& [slot, value] : state.items()) {
          if (!value.is_string()) SchemaError("slot values must be strings");
          gold.state[slot] = value.get<std::string>();
        }
      }
      // Slots without information are "not given".
      for (const std::string& slot : gold.slots) {
        gold.state.try_emplace(slot, std::string(kNotGiven));
      }
      return gold;
    }
    case TaskKind::kIntentDetection:
      return IntentGold{StringField(json, "intent")};
  }
  SchemaError("unsupported task");
}

Json RecordToJson(const TaskRecord& record) {
  Json out = {{"task", TaskKindName(record.task)},
              {"dataset", record.dataset_id},
              {"text", record.text},
              {"gold", GoldToJson(record.gold)}};
  out["marked_span"] =
      record.marked_span ? SpanToJson(*record.marked_span) : Json(nullptr);
  return out;
}

TaskRecord RecordFromJson(const Json& json) {
  if (!json.is_object()) SchemaError("a record must be a JSON object");
  TaskRecord record;
  try {
    record.task = ParseTaskKind(StringField(json, "task"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    SchemaError(e.what());
  }
  record.dataset_id = StringField(json, "dataset");
  const Json& gold = Field(json, "gold");
  if (json.contains("text") || record.task != TaskKind::kFactualProbe) {
    record.text = StringField(json, "text");
  }
  // Factual probes may carry their oracle context sentences separately.
  if (record.text.empty() && gold.is_object() && gold.contains("context")) {
    for (const Json& sentence : ArrayField(gold, "context")) {
      if (!sentence.is_string()) SchemaError("context entries must be strings");
      if (!record.text.empty()) record.text.push_back(' ');
      record.text += sentence.get<std::string>();
    }
  }
  record.gold = GoldFromJson(record.task, gold);
  if (json.contains("marked_span") && !json.at("marked_span").is_null()) {
    record.marked_span = SpanFromJson(json.at("marked_span"));
  }
  return record;
}

Json ExampleToJson(const EncodedExample& example) {
  const DecodeHints& hints = example.hints;
  Json h = {{"task", TaskKindName(hints.task)},
            {"dataset", hints.dataset_id},
            {"family", FamilyName(hints.family)},
            {"zero_shot", hints.zero_shot},
            {"augmented", hints.augmented},
            {"labels", hints.labels},
            {"slots", hints.slots},
            {"text", hints.text},
            {"priming", hints.priming},
            {"record_key", hints.record_key},
            {"gold", GoldToJson(hints.gold)}};
  h["marked_span"] =
      hints.marked_span ? SpanToJson(*hints.marked_span) : Json(nullptr);
  return {{"id", example.id},
          {"input", example.input},
          {"gold_output", example.gold_output},
          {"hints", std::move(h)}};
}

EncodedExample ExampleFromJson(const Json& json) {
  if (!json.is_object()) SchemaError("an example must be a JSON object");
  EncodedExample example;
  example.id = StringField(json, "id");
  example.input = StringField(json, "input");
  example.gold_output = StringField(json, "gold_output");
  const Json& h = Field(json, "hints");
  DecodeHints& hints = example.hints;
  try {
    hints.task = ParseTaskKind(StringField(h, "task"));
    hints.family = ParseFamily(StringField(h, "family"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    SchemaError(e.what());
  }
  hints.dataset_id = StringField(h, "dataset");
  hints.zero_shot = h.value("zero_shot", false);
  hints.augmented = h.value("augmented", false);
  hints.labels = h.value("labels", std::vector<std::string>{});
  hints.slots = h.value("slots", std::vector<std::string>{});
  hints.text = StringField(h, "text");
  hints.priming = h.value("priming", std::string());
  hints.record_key = h.value("record_key", std::string());
  hints.gold = GoldFromJson(hints.task, Field(h, "gold"));
  if (h.contains("marked_span") && !h.at("marked_span").is_null()) {
    hints.marked_span = SpanFromJson(h.at("marked_span"));
  }
  return example;
}

Json PretrainToJson(const PretrainExample& example) {
  Json triples = Json::array();
  for (const Triple& t : example.triples) {
    triples.push_back({t.head, t.relation, t.tail});
  }
  Json out = {{"text", example.text},
              {"triples", std::move(triples)},
              {"source", example.source}};
  out["family"] =
      example.family ? Json(FamilyName(*example.family)) : Json(nullptr);
  return out;
}

PretrainExample PretrainFromJson(const Json& json) {
  if (!json.is_object()) SchemaError("a corpus line must be a JSON object");
  PretrainExample example;
  example.text = StringField(json, "text");
  for (const Json& triple : ArrayField(json, "triples")) {
    if (!triple.is_array() || triple.size() != 3 || !triple[0].is_string() ||
        !triple[1].is_string() || !triple[2].is_string()) {
      SchemaError("each triple must be an array of three strings");
    }
    example.triples.push_back({triple[0].get<std::string>(),
                               triple[1].get<std::string>(),
                               triple[2].get<std::string>()});
  }
  if (json.contains("source") && !json["source"].is_null()) {
    example.source = StringField(json, "source");
  }
  if (json.contains("family") && !json["family"].is_null()) {
    try {
      example.family = ParseFamily(StringField(json, "family"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError) throw;
      SchemaError(e.what());
    }
  }
  return example;
}

}  // namespace structkit
