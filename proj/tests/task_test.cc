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

#include <gtest/gtest.h>

#include "fixtures.h"
#include "structkit/error.h"

namespace structkit {
namespace {

TEST(TaskKindTest, NamesRoundTrip) {
  for (TaskKind task : AllTaskKinds()) {
    EXPECT_EQ(ParseTaskKind(TaskKindName(task)), task);
  }
  EXPECT_EQ(AllTaskKinds().size(), 11u);
  EXPECT_EQ(TaskKindName(TaskKind::kEventTrigger), "ee_trg");
  EXPECT_THROW(ParseTaskKind("nope"), Error);
}

TEST(FamilyTest, NamesAndDecomposition) {
  for (Family f : {Family::kEntity, Family::kRelation, Family::kTriple}) {
    EXPECT_EQ(ParseFamily(FamilyName(f)), f);
  }
  EXPECT_EQ(FamiliesFor(TaskKind::kJointEntityRelation),
            (std::vector<Family>{Family::kEntity, Family::kRelation}));
  EXPECT_EQ(FamiliesFor(TaskKind::kOie), std::vector<Family>{Family::kTriple});
  EXPECT_EQ(FamiliesFor(TaskKind::kNer), std::vector<Family>{Family::kEntity});
  for (TaskKind task : AllTaskKinds()) {
    EXPECT_FALSE(FamiliesFor(task).empty());
  }
}

TEST(RecordJsonTest, FixturesRoundTrip) {
  for (const auto& [task, dataset] : testing::FixtureDatasets()) {
    for (const TaskRecord& record : testing::FixtureRecords(task)) {
      EXPECT_NO_THROW(ValidateRecord(record));
      const Json json = RecordToJson(record);
      EXPECT_EQ(RecordFromJson(json), record) << json.dump();
      EXPECT_EQ(RecordFromJson(Json::parse(json.dump())), record);
    }
  }
}

TEST(RecordJsonTest, RejectsSchemaViolations) {
  const Json good = RecordToJson(testing::FixtureRecords(TaskKind::kNer)[0]);
  for (const char* field : {"task", "text", "gold"}) {
    Json bad = good;
    bad.erase(field);
    try {
      RecordFromJson(bad);
      FAIL() << "missing " << field;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError);
    }
  }
  Json wrong_type = good;
  wrong_type["text"] = 5;
  EXPECT_THROW(RecordFromJson(wrong_type), Error);
}

TEST(ValidateRecordTest, SpanOutOfRange) {
  TaskRecord r = testing::FixtureRecords(TaskKind::kNer)[0];
  std::get<EntityGold>(r.gold).entities[0].span = {0, r.text.size() + 1};
  try {
    ValidateRecord(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpanOutOfRange);
  }
}

TEST(ValidateRecordTest, GoldMustFitTask) {
  TaskRecord r = testing::FixtureRecords(TaskKind::kNer)[0];
  r.gold = IntentGold{"play music"};
  try {
    ValidateRecord(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(ValidateRecordTest, DialogueStateCoversEverySlot) {
  TaskRecord r = testing::FixtureRecords(TaskKind::kDialogueStateTracking)[0];
  auto& gold = std::get<DstGold>(r.gold);
  gold.state.erase(gold.slots.front());
  EXPECT_THROW(ValidateRecord(r), Error);
}

TEST(SpanTextTest, Extracts) {
  EXPECT_EQ(SpanText("hello world", {6, 11}), "world");
}

TEST(ExampleJsonTest, RoundTripKeepsHints) {
  EncodedExample ex;
  ex.id = "abc";
  ex.input = "ner conll03: Japan won .";
  ex.gold_output = "( Japan; instance of; location )";
  ex.hints.task = TaskKind::kNer;
  ex.hints.dataset_id = "conll03";
  ex.hints.labels = {"location"};
  ex.hints.text = "Japan won .";
  ex.hints.record_key = "k";
  ex.hints.gold = EntityGold{{{{0, 5}, "location"}}, {}};
  const EncodedExample back = ExampleFromJson(ExampleToJson(ex));
  EXPECT_EQ(back.id, ex.id);
  EXPECT_EQ(back.input, ex.input);
  EXPECT_EQ(back.gold_output, ex.gold_output);
  EXPECT_EQ(back.hints.labels, ex.hints.labels);
  EXPECT_EQ(back.hints.record_key, "k");
  EXPECT_EQ(back.hints.gold, ex.hints.gold);
}

TEST(PretrainJsonTest, RoundTrip) {
  PretrainExample ex{"Kurt was born in Vienna .",
                     {{"Kurt", "place of birth", "Vienna"}},
                     "T-REx",
                     Family::kRelation};
  EXPECT_EQ(PretrainFromJson(PretrainToJson(ex)), ex);
  ex.family.reset();
  EXPECT_EQ(PretrainFromJson(PretrainToJson(ex)), ex);
  EXPECT_THROW(PretrainFromJson(Json{{"text", 1}}), Error);
}

}  // namespace
}  // namespace structkit
