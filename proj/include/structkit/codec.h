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

// Encoding of task records into prefixed text-to-triples examples and
// decoding of generated triples back into task predictions.

#ifndef STRUCTKIT_CODEC_H_
#define STRUCTKIT_CODEC_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structkit/registry.h"
#include "structkit/span_grounding.h"
#include "structkit/task.h"
#include "structkit/triple.h"

namespace structkit {

inline constexpr std::string_view kInstanceOf = "instance of";
inline constexpr std::string_view kReferTo = "refer to";
inline constexpr std::string_view kDstHead = "[User]";
inline constexpr std::string_view kIntentHead = "intent";
inline constexpr std::string_view kIntentRelation = "is";

// "entity:", "relation:" or "triple:".
std::string ZeroShotPrefix(Family family);

// Prefix including the ':' separator, without the following space.
std::string InputPrefix(const DatasetInfo& info, Family family,
                        const EncodeMode& mode);

// Stable key for the record at `index` of a (task, dataset) file.
std::string RecordKey(TaskKind task, std::string_view dataset_id,
                      std::size_t index);

// Id of one encoded unit of a record.
std::string ExampleId(std::string_view record_key, std::size_t predicate_index,
                      Family unit);

// Encodes one record. Joint entity and relation records yield an entity
// example followed by a relation example; SRL and event-argument records
// with several predicates yield one example per predicate. An empty
// `record_key` derives one from the task, dataset id and text.
//
// Throws Error(kUnknownDataset), Error(kSpanOutOfRange),
// Error(kInvalidArgument) or Error(kNoPredicate).
std::vector<EncodedExample> EncodeRecord(
    const TaskRecord& record, const EncodeMode& mode,
    const DatasetRegistry& registry = DatasetRegistry::Builtin(),
    std::string_view record_key = {});

// One record per predicate, each with a single marked span and the
// arguments of that predicate as gold. Throws Error(kNoPredicate).
std::vector<TaskRecord> ExpandMultiPredicate(const TaskRecord& record);

// "[Iago]" -> "Iago"; anything else is returned trimmed.
std::string StripAugmentation(std::string_view field);

// Returns `output` unchanged if it already starts with `priming` (up to
// spacing), otherwise `priming` followed by `output`.
std::string CompleteWithPriming(std::string_view priming,
                                std::string_view output);

struct EntityDecodeResult {
  std::vector<TypedSpan> entities;  // in generation order
  std::size_t dropped_label = 0;      // wrong relation or type outside vocab
  std::size_t dropped_ungrounded = 0;  // head not found in the text
};

EntityDecodeResult DecodeEntityPrediction(std::span<const Triple> triples,
                                          std::string_view text,
                                          const std::vector<std::string>& vocab,
                                          GroundingOptions options = {});

struct RelationDecodeResult {
  std::vector<Triple> relations;
  std::size_t dropped = 0;
};

// Entity-type triples ("instance of") are never relations. With
// `trim_to_first` only the first relation triple is kept.
RelationDecodeResult DecodeRelationPrediction(
    std::span<const Triple> triples, const std::vector<std::string>& vocab,
    bool trim_to_first = false);

using OpenTuple = std::vector<std::string>;

std::vector<OpenTuple> DecodeOpenTriples(std::span<const Triple> triples,
                                         bool trim_to_first);

struct CorefDecodeResult {
  std::vector<std::vector<Span>> clusters;  // each of size >= 2, sorted
  std::size_t dropped = 0;
};

CorefDecodeResult DecodeCoref(std::span<const Triple> triples,
                              std::string_view text);

// Every slot is present in the result; unmentioned slots are "not given".
std::map<std::string, std::string> DecodeDst(
    std::span<const Triple> triples, const std::vector<std::string>& slots);

// std::nullopt is the "no prediction" outcome.
std::optional<std::string> DecodeIntent(std::span<const Triple> triples);

struct FactQuery {
  std::string subject;
  std::string relation;
};

// The partial output a factual-probe backend is primed with.
std::string FactPriming(const FactQuery& query);

// Object of the probed fact. Accepts either the bare continuation
// (" Vienna)") or a full echoed triple. Throws Error(kMalformedCompletion)
// when no closing parenthesis is generated.
std::string DecodeFactualProbe(std::string_view generated,
                               const FactQuery& query);

}  // namespace structkit

#endif  // STRUCTKIT_CODEC_H_
