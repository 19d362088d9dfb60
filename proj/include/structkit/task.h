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

// Native task records, their gold structures and the encoded
// text-to-triples examples built from them, plus their JSON Lines forms.

#ifndef STRUCTKIT_TASK_H_
#define STRUCTKIT_TASK_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "structkit/span_grounding.h"
#include "structkit/triple.h"

namespace structkit {

using Json = nlohmann::json;

enum class TaskKind {
  kOie,
  kRelationClassification,
  kFactualProbe,
  kJointEntityRelation,
  kNer,
  kSrl,
  kEventTrigger,
  kEventArgument,
  kCoreference,
  kDialogueStateTracking,
  kIntentDetection,
};

// Short identifiers used in files and on the command line: oie, rc, fp, jer,
// ner, srl, ee_trg, ee_arg, cr, dst, id.
std::string_view TaskKindName(TaskKind task);
TaskKind ParseTaskKind(std::string_view name);
const std::vector<TaskKind>& AllTaskKinds();

// The three pretraining task families.
enum class Family { kEntity, kRelation, kTriple };

std::string_view FamilyName(Family family);
Family ParseFamily(std::string_view name);

// Families a task is decomposed into, in encoding order. Only joint entity
// and relation extraction has two.
std::vector<Family> FamiliesFor(TaskKind task);

struct TypedSpan {
  Span span;
  std::string type;

  auto operator<=>(const TypedSpan&) const = default;
};

struct SpanRelation {
  std::size_t head = 0;  // index into EntityGold::entities
  std::size_t tail = 0;
  std::string type;

  bool operator==(const SpanRelation&) const = default;
};

// NER, JER, event triggers, and single-predicate SRL / event arguments.
struct EntityGold {
  std::vector<TypedSpan> entities;
  std::vector<SpanRelation> relations;

  bool operator==(const EntityGold&) const = default;
};

struct PredicateFrame {
  Span predicate;
  std::string type;  // event type for triggers; may be empty for SRL
  std::vector<TypedSpan> arguments;

  bool operator==(const PredicateFrame&) const = default;
};

// SRL sentences and event-argument sentences before per-predicate expansion.
struct FrameGold {
  std::vector<PredicateFrame> frames;

  bool operator==(const FrameGold&) const = default;
};

struct RcGold {
  Span head;
  Span tail;
  std::string relation;

  bool operator==(const RcGold&) const = default;
};

struct OieGold {
  std::vector<std::vector<std::string>> tuples;

  bool operator==(const OieGold&) const = default;
};

struct FactGold {
  std::string subject;
  std::string relation;
  std::string object;

  bool operator==(const FactGold&) const = default;
};

struct CorefGold {
  std::vector<std::vector<Span>> clusters;

  bool operator==(const CorefGold&) const = default;
};

inline constexpr std::string_view kNotGiven = "not given";

struct DstGold {
  std::vector<std::string> slots;            // output order
  std::map<std::string, std::string> state;  // every slot has an entry

  bool operator==(const DstGold&) const = default;
};

struct IntentGold {
  std::string intent;

  bool operator==(const IntentGold&) const = default;
};

using Gold = std::variant<EntityGold, FrameGold, RcGold, OieGold, FactGold,
                          CorefGold, DstGold, IntentGold>;

struct TaskRecord {
  TaskKind task = TaskKind::kNer;
  std::string dataset_id;
  std::string text;
  Gold gold;
  std::optional<Span> marked_span;

  bool operator==(const TaskRecord&) const = default;
};

// Checks that the gold alternative fits the task and that every span lies in
// the text. Throws Error(kSpanOutOfRange) or Error(kInvalidArgument).
void ValidateRecord(const TaskRecord& record);

std::string SpanText(std::string_view text, Span span);

struct EncodeMode {
  enum class Setting { kZeroShot, kMultiTask };
  Setting setting = Setting::kMultiTask;
  // Wrap entity mentions in the gold output with "[...]". Multi-task only.
  bool augmentation = false;

  bool zero_shot() const { return setting == Setting::kZeroShot; }
};

struct DecodeHints {
  TaskKind task = TaskKind::kNer;
  std::string dataset_id;
  Family family = Family::kEntity;
  bool zero_shot = false;
  bool augmented = false;
  // Entity types for the entity family, relation labels for the relation
  // family. Empty means open vocabulary.
  std::vector<std::string> labels;
  std::vector<std::string> slots;
  std::optional<Span> marked_span;
  std::string text;  // original, unmarked source text
  // Partial output the backend continues from; empty when unprimed.
  std::string priming;
  // Shared by all examples encoded from the same record.
  std::string record_key;
  Gold gold;
};

struct EncodedExample {
  std::string id;
  std::string input;
  std::string gold_output;
  DecodeHints hints;
};

Json GoldToJson(const Gold& gold);
Gold GoldFromJson(TaskKind task, const Json& json);

Json RecordToJson(const TaskRecord& record);
// Throws Error(kParseError) on schema violations (callers add file:line).
TaskRecord RecordFromJson(const Json& json);

Json ExampleToJson(const EncodedExample& example);
EncodedExample ExampleFromJson(const Json& json);

// One line of a pretraining corpus: a sentence with its schema triples.
struct PretrainExample {
  std::string text;
  std::vector<Triple> triples;
  std::string source;  // corpus name, e.g. "T-REx"
  std::optional<Family> family;

  bool operator==(const PretrainExample&) const = default;
};

Json PretrainToJson(const PretrainExample& example);
// Throws Error(kParseError) on schema violations.
PretrainExample PretrainFromJson(const Json& json);

}  // namespace structkit

#endif  // STRUCTKIT_TASK_H_
