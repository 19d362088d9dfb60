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

#include "structkit/evaluate.h"

#include <gtest/gtest.h>

#include "fixtures.h"
#include "structkit/codec.h"
#include "structkit/error.h"

namespace structkit {
namespace {

std::vector<EncodedExample> Encode(TaskKind task, const std::string& dataset,
                                   EncodeMode mode = {}) {
  std::vector<EncodedExample> out;
  const auto records = testing::FixtureRecords(task);
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (EncodedExample& ex :
         EncodeRecord(records[i], mode, DatasetRegistry::Builtin(),
                      RecordKey(task, dataset, i))) {
      out.push_back(std::move(ex));
    }
  }
  return out;
}

std::vector<std::string> GoldOutputs(const std::vector<EncodedExample>& ex) {
  std::vector<std::string> out;
  for (const EncodedExample& e : ex) out.push_back(e.gold_output);
  return out;
}

class OracleClosureTest
    : public ::testing::TestWithParam<std::pair<TaskKind, std::string>> {};

TEST_P(OracleClosureTest, EveryMetricIsOne) {
  const auto& [task, dataset] = GetParam();
  EncodeMode zero_shot;
  zero_shot.setting = EncodeMode::Setting::kZeroShot;
  for (const EncodeMode& mode : {EncodeMode{}, zero_shot}) {
    const auto examples = Encode(task, dataset, mode);
    OracleBackend oracle(examples);
    const auto generations = RunGeneration(examples, oracle);
    const EvalReport report =
        Evaluate(examples, JoinGenerations(examples, generations));
    const TaskReport& t = report.tasks.at(ReportKey(task, dataset));
    EXPECT_FALSE(t.metrics.empty());
    for (const auto& [name, prf] : t.metrics) {
      EXPECT_EQ(prf.f1, 1.0) << name << " zero_shot=" << mode.zero_shot();
      EXPECT_EQ(prf.precision, 1.0) << name;
      EXPECT_EQ(prf.recall, 1.0) << name;
    }
    for (const auto& [name, count] : t.drops) {
      EXPECT_EQ(count, 0u) << name;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllTasks, OracleClosureTest,
                         ::testing::ValuesIn(testing::FixtureDatasets()),
                         [](const auto& info) {
                           return std::string(TaskKindName(info.param.first));
                         });

// Decode settings are opaque to the oracle, so scores cannot depend on them.
TEST(EvaluateTest, ScoresInvariantToDecodeOverrides) {
  const auto examples = Encode(TaskKind::kNer, "conll03");
  EvalOptions options;
  options.decode_overrides = Json{{"length_penalty", 0.1}};
  OracleBackend oracle(examples);
  const auto outputs =
      JoinGenerations(examples, RunGeneration(examples, oracle, options));
  const EvalReport a = Evaluate(examples, outputs);
  const EvalReport b = Evaluate(examples, outputs, options);
  EXPECT_EQ(a.tasks.at("ner/conll03").metrics.at("entity_f1").f1,
            b.tasks.at("ner/conll03").metrics.at("entity_f1").f1);
  EXPECT_NE(a.config_fingerprint, b.config_fingerprint);
}

TEST(EvaluateTest, MissingPredictionsLowerRecall) {
  const auto examples = Encode(TaskKind::kNer, "conll03");
  auto outputs = GoldOutputs(examples);
  outputs[0] = "";
  outputs[1] = "( garbled";
  const EvalReport r = Evaluate(examples, outputs);
  const TaskReport& t = r.tasks.at("ner/conll03");
  const PRF& f = t.metrics.at("entity_f1");
  EXPECT_EQ(f.precision, 1.0);
  EXPECT_LT(f.recall, 1.0);
  EXPECT_EQ(t.drops.at("parse_skipped"), 1u);
}

TEST(EvaluateTest, JointExtractionTaxonomy) {
  const auto examples = Encode(TaskKind::kJointEntityRelation, "conll04");
  auto outputs = GoldOutputs(examples);
  std::size_t removed = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (examples[i].hints.family == Family::kRelation) {
      outputs[i] = "";
      removed += ParseTriples(examples[i].gold_output).triples.size();
    }
  }
  const EvalReport r = Evaluate(examples, outputs);
  const TaskReport& t = r.tasks.at("jer/conll04");
  EXPECT_EQ(t.metrics.at("entity_f1").f1, 1.0);
  EXPECT_EQ(t.metrics.at("relation_f1").recall, 0.0);
  ASSERT_TRUE(t.taxonomy.has_value());
  EXPECT_EQ(t.taxonomy->total(), removed);
}

TEST(EvaluateTest, FactualProbeMalformedCompletion) {
  const auto examples = Encode(TaskKind::kFactualProbe, "t-rex");
  auto outputs = GoldOutputs(examples);
  outputs[0] = " no closing paren";
  const EvalReport r = Evaluate(examples, outputs);
  const TaskReport& t = r.tasks.at("fp/t-rex");
  EXPECT_DOUBLE_EQ(t.metrics.at("p_at_1").precision,
                   (examples.size() - 1.0) / examples.size());
  EXPECT_EQ(t.drops.at("malformed_completion"), 1u);
}

TEST(EvaluateTest, DialogueWrongSlotValue) {
  const auto examples = Encode(TaskKind::kDialogueStateTracking, "multiwoz");
  auto outputs = GoldOutputs(examples);
  outputs[3] = "";
  const EvalReport r = Evaluate(examples, outputs);
  EXPECT_DOUBLE_EQ(
      r.tasks.at("dst/multiwoz").metrics.at("joint_goal_accuracy").f1,
      (examples.size() - 1.0) / examples.size());
}

TEST(EvaluateTest, LengthMismatch) {
  const auto examples = Encode(TaskKind::kNer, "conll03");
  const std::vector<std::string> outputs(examples.size() - 1);
  try {
    Evaluate(examples, outputs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(JoinGenerationsTest, IdMismatch) {
  const auto examples = Encode(TaskKind::kIntentDetection, "snips");
  std::vector<Generation> generations;
  for (const EncodedExample& e : examples) {
    generations.push_back({e.id, e.gold_output});
  }
  EXPECT_EQ(JoinGenerations(examples, generations).size(), examples.size());
  std::swap(generations[0], generations[1]);
  try {
    JoinGenerations(examples, generations);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIdMismatch);
  }
  generations.pop_back();
  EXPECT_THROW(JoinGenerations(examples, generations), Error);
}

TEST(RunGenerationTest, DuplicateIdsRejected) {
  auto examples = Encode(TaskKind::kIntentDetection, "snips");
  examples[1].id = examples[0].id;
  OracleBackend oracle(examples);
  try {
    RunGeneration(examples, oracle);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIdMismatch);
  }
}

TEST(ReportJsonTest, Layout) {
  const auto examples = Encode(TaskKind::kCoreference, "conll12");
  const EvalReport r = Evaluate(examples, GoldOutputs(examples));
  const Json j = ReportToJson(r);
  EXPECT_EQ(j["config_fingerprint"], r.config_fingerprint);
  EXPECT_TRUE(j["config"].contains("oie_matcher"));
  const Json& t = j["tasks"]["cr/conll12"];
  EXPECT_EQ(t["task"], "cr");
  EXPECT_EQ(t["examples"], examples.size());
  for (const char* m : {"muc", "b_cubed", "ceaf_phi4", "avg_f1"}) {
    EXPECT_EQ(t["metrics"][m]["f1"], 1.0) << m;
  }
}

TEST(DecodeConfigForTest, UsesHintsAndOverrides) {
  const auto examples = Encode(TaskKind::kJointEntityRelation, "conll04");
  EvalOptions options;
  EXPECT_EQ(DecodeConfigFor(examples[1].hints, options).length_penalty, 0.3);
  options.decode_overrides = Json{{"length_penalty", 0.6}};
  EXPECT_EQ(DecodeConfigFor(examples[1].hints, options).length_penalty, 0.6);
}

}  // namespace
}  // namespace structkit
