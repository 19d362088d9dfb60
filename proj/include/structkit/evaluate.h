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

// End-to-end scoring of generated outputs against encoded examples.

#ifndef STRUCTKIT_EVALUATE_H_
#define STRUCTKIT_EVALUATE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "structkit/generation.h"
#include "structkit/metrics.h"
#include "structkit/registry.h"
#include "structkit/schema_align.h"
#include "structkit/task.h"

namespace structkit {

struct EvalOptions {
  GroundingOptions grounding;
  TupleMatcher oie_matcher = TokenOverlapMatcher();
  // Applied to zero-shot entity and relation outputs before decoding.
  std::optional<SchemaAlignment> alignment;
  // Applied on top of DefaultDecodeConfig for every example.
  Json decode_overrides = Json::object();
  const DatasetRegistry* registry = &DatasetRegistry::Builtin();
};

DecodeConfig DecodeConfigFor(const DecodeHints& hints,
                             const EvalOptions& options);

// Scores of one (task, dataset) pair. Metric names by task:
//   ner: entity_f1           jer: entity_f1, relation_f1
//   rc: relation_f1          oie: oie_f1
//   srl: argument_f1         ee_trg: trigger_id, trigger_cl
//   ee_arg: argument_id, argument_cl
//   cr: muc, b_cubed, ceaf_phi4, avg_f1
//   dst: joint_goal_accuracy id: intent_f1      fp: p_at_1
struct TaskReport {
  TaskKind task = TaskKind::kNer;
  std::string dataset_id;
  std::size_t examples = 0;
  std::map<std::string, PRF> metrics;
  // Counts of generated material that did not make it into a prediction.
  std::map<std::string, std::size_t> drops;
  std::optional<ErrorTaxonomy> taxonomy;  // joint entity and relation only
};

struct EvalReport {
  std::map<std::string, TaskReport> tasks;  // keyed "task/dataset"
  Json config;
  std::string config_fingerprint;  // sha256 of config
};

std::string ReportKey(TaskKind task, std::string_view dataset_id);

// `outputs[i]` is the raw generation for `examples[i]`.
// Throws Error(kLengthMismatch) on differing sizes.
EvalReport Evaluate(std::span<const EncodedExample> examples,
                    std::span<const std::string> outputs,
                    const EvalOptions& options = {});

Json ReportToJson(const EvalReport& report);

// Generated outputs as stored on disk: one {"id", "output"} object per line.
struct Generation {
  std::string id;
  std::string output;
};

// Orders `generations` like `examples`, which they must match one to one by
// position. Throws Error(kIdMismatch) naming the first differing position.
std::vector<std::string> JoinGenerations(
    std::span<const EncodedExample> examples,
    std::span<const Generation> generations);

// Sends every example through `backend` with its decode config and returns
// the outputs in example order, matched by id. Example ids must be unique;
// a duplicate throws Error(kIdMismatch).
std::vector<Generation> RunGeneration(std::span<const EncodedExample> examples,
                                      GenerationBackend& backend,
                                      const EvalOptions& options = {});

}  // namespace structkit

#endif  // STRUCTKIT_EVALUATE_H_
