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
#include <set>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "structkit/error.h"
#include "structkit/registry.h"

namespace structkit {
namespace {

EncodeMode ZeroShot() {
  EncodeMode m;
  m.setting = EncodeMode::Setting::kZeroShot;
  return m;
}

TaskRecord JerRecord() {
  return testing::FixtureRecords(TaskKind::kJointEntityRelation)[0];
}

TEST(EncodeRecordTest, JointExtractionYieldsTwoUnits) {
  const auto ex = EncodeRecord(JerRecord(), EncodeMode{});
  ASSERT_EQ(ex.size(), 2u);
  EXPECT_EQ(ex[0].hints.family, Family::kEntity);
  EXPECT_EQ(ex[1].hints.family, Family::kRelation);
  EXPECT_EQ(ex[0].input, ex[1].input);
  EXPECT_NE(ex[0].id, ex[1].id);
  EXPECT_EQ(ex[0].hints.record_key, ex[1].hints.record_key);
  EXPECT_TRUE(ex[0].input.starts_with("jer conll04: "));
  EXPECT_EQ(ex[1].gold_output.find("instance of"), std::string::npos);
}

TEST(EncodeRecordTest, ZeroShotPrefixes) {
  const auto jer = EncodeRecord(JerRecord(), ZeroShot());
  EXPECT_TRUE(jer[0].input.starts_with("entity: "));
  EXPECT_TRUE(jer[1].input.starts_with("relation: "));
  EXPECT_TRUE(jer[0].hints.zero_shot);
  const auto oie =
      EncodeRecord(testing::FixtureRecords(TaskKind::kOie)[0], ZeroShot());
  EXPECT_TRUE(oie[0].input.starts_with("triple: "));
}

TEST(EncodeRecordTest, AugmentationWrapsMentions) {
  EncodeMode aug;
  aug.augmentation = true;
  const auto ex = EncodeRecord(JerRecord(), aug);
  EXPECT_NE(ex[0].gold_output.find("[" + testing::Persons()[0] + "]"),
            std::string::npos);
  EXPECT_TRUE(ex[0].hints.augmented);
  EncodeMode bad = ZeroShot();
  bad.augmentation = true;
  EXPECT_THROW(EncodeRecord(JerRecord(), bad), Error);
}

TEST(EncodeRecordTest, ClosedVocabularyEnforced) {
  TaskRecord r = testing::FixtureRecords(TaskKind::kNer)[0];
  std::get<EntityGold>(r.gold).entities[0].type = "spaceship";
  EXPECT_THROW(EncodeRecord(r, EncodeMode{}), Error);
}

TEST(EncodeRecordTest, UnknownDataset) {
  TaskRecord r = testing::FixtureRecords(TaskKind::kNer)[0];
  r.dataset_id = "nowhere";
  try {
    EncodeRecord(r, EncodeMode{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownDataset);
  }
}

TEST(EncodeRecordTest, MultiPredicateSrlDuplicatesSentence) {
  const TaskRecord r = testing::FixtureRecords(TaskKind::kSrl)[0];
  ASSERT_EQ(std::get<FrameGold>(r.gold).frames.size(), 2u);
  const auto ex = EncodeRecord(r, EncodeMode{});
  ASSERT_EQ(ex.size(), 2u);
  EXPECT_NE(ex[0].input.find("[ sold ]"), std::string::npos);
  EXPECT_NE(ex[1].input.find("[ laughed ]"), std::string::npos);
  EXPECT_NE(ex[0].id, ex[1].id);
  EXPECT_EQ(ex[0].hints.text, r.text);
}

TEST(EncodeRecordTest, NoPredicate) {
  TaskRecord r = testing::FixtureRecords(TaskKind::kSrl)[0];
  std::get<FrameGold>(r.gold).frames.clear();
  try {
    EncodeRecord(r, EncodeMode{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoPredicate);
  }
}

TEST(EncodeRecordTest, RelationClassificationPrompt) {
  const TaskRecord r =
      testing::FixtureRecords(TaskKind::kRelationClassification)[0];
  const auto& gold = std::get<RcGold>(r.gold);
  const std::string head = SpanText(r.text, gold.head);
  const std::string tail = SpanText(r.text, gold.tail);
  const auto multi = EncodeRecord(r, EncodeMode{});
  EXPECT_TRUE(multi[0].input.ends_with(" The relationship between " + head +
                                       " and " + tail + " is"));
  EXPECT_TRUE(multi[0].hints.priming.empty());
  const auto zero = EncodeRecord(r, ZeroShot());
  EXPECT_EQ(zero[0].hints.priming, "( " + head + ";");
}

TEST(EncodeRecordTest, DialogueSlotsInOrder) {
  const TaskRecord r =
      testing::FixtureRecords(TaskKind::kDialogueStateTracking)[0];
  const auto ex = EncodeRecord(r, EncodeMode{});
  const ParseResult parsed = ParseTriples(ex[0].gold_output);
  const auto& slots = std::get<DstGold>(r.gold).slots;
  ASSERT_EQ(parsed.triples.size(), slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    EXPECT_EQ(parsed.triples[i].head, kDstHead);
    EXPECT_EQ(parsed.triples[i].relation, slots[i]);
  }
}

TEST(EncodeRecordTest, IdsAreStableAndDistinct) {
  std::set<std::string> ids;
  std::size_t total = 0;
  for (const auto& [task, dataset] : testing::FixtureDatasets()) {
    const auto records = testing::FixtureRecords(task);
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto a = EncodeRecord(records[i], EncodeMode{},
                                  DatasetRegistry::Builtin(),
                                  RecordKey(task, dataset, i));
      const auto b = EncodeRecord(records[i], EncodeMode{},
                                  DatasetRegistry::Builtin(),
                                  RecordKey(task, dataset, i));
      for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].id, b[k].id);
        ids.insert(a[k].id);
        ++total;
      }
    }
  }
  EXPECT_EQ(ids.size(), total);
}

TEST(DecodeEntityTest, DropsWrongLabelsAndUngrounded) {
  const std::string text = "Alice met Bob in Oslo .";
  const std::vector<Triple> triples = {
      {"Alice", "instance of", "person"},
      {"Bob", "instance of", "wizard"},
      {"Carol", "instance of", "person"},
      {"Oslo", "located in", "Norway"},
      {"Oslo", "instance of", "location"}};
  const auto r = DecodeEntityPrediction(triples, text, {"person", "location"});
  ASSERT_EQ(r.entities.size(), 2u);
  EXPECT_EQ(r.entities[0], (TypedSpan{{0, 5}, "person"}));
  EXPECT_EQ(r.entities[1], (TypedSpan{{17, 21}, "location"}));
  EXPECT_EQ(r.dropped_label, 2u);
  EXPECT_EQ(r.dropped_ungrounded, 1u);
}

TEST(DecodeEntityTest, OpenVocabularyAndAugmentedHeads) {
  const std::vector<Triple> triples = {{"[Alice]", "instance of", "human"}};
  const auto r = DecodeEntityPrediction(triples, "Alice ran", {});
  ASSERT_EQ(r.entities.size(), 1u);
  EXPECT_EQ(r.entities[0].type, "human");
}

TEST(DecodeRelationTest, ExcludesTypesAndTrims) {
  const std::vector<Triple> triples = {{"A", "instance of", "person"},
                                       {"A", "work for", "B"},
                                       {"B", "kill", "A"},
                                       {"B", "likes", "A"}};
  const auto all = DecodeRelationPrediction(triples, {"work for", "kill"});
  EXPECT_EQ(all.relations.size(), 2u);
  EXPECT_EQ(all.dropped, 1u);
  const auto first = DecodeRelationPrediction(triples, {}, true);
  ASSERT_EQ(first.relations.size(), 1u);
  EXPECT_EQ(first.relations[0].relation, "work for");
}

TEST(DecodeRelationTest, DeduplicatesRepeats) {
  const std::vector<Triple> triples = {{"A", "kill", "B"}, {"A", " kill", "B "}};
  EXPECT_EQ(DecodeRelationPrediction(triples, {}).relations.size(), 1u);
}

TEST(DecodeOpenTriplesTest, Trim) {
  const std::vector<Triple> triples = {{"a", "b", "c"}, {"d", "e", "f"}};
  EXPECT_EQ(DecodeOpenTriples(triples, false).size(), 2u);
  EXPECT_EQ(DecodeOpenTriples(triples, true),
            (std::vector<OpenTuple>{{"a", "b", "c"}}));
}

TEST(DecodeCorefTest, BuildsClustersFromLinks) {
  const std::string text = "Ann said she would come and she did .";
  const std::vector<Triple> triples = {{"Ann", "refer to", "she"},
                                       {"Ann", "refer to", "she"},
                                       {"Bob", "refer to", "he"}};
  const auto r = DecodeCoref(triples, text);
  ASSERT_EQ(r.clusters.size(), 1u);
  EXPECT_EQ(r.clusters[0].size(), 3u);
  EXPECT_EQ(r.dropped, 1u);
}

TEST(DecodeDstTest, TotalOverSlots) {
  const std::vector<std::string> slots = {"hotel area", "hotel stars"};
  const std::vector<Triple> triples = {{"[User]", "hotel area", "north"},
                                       {"[User]", "taxi leave at", "9"}};
  const auto state = DecodeDst(triples, slots);
  ASSERT_EQ(state.size(), 2u);
  EXPECT_EQ(state.at("hotel area"), "north");
  EXPECT_EQ(state.at("hotel stars"), kNotGiven);
  EXPECT_EQ(DecodeDst({}, slots).size(), 2u);
}

TEST(DecodeIntentTest, FirstIntentTriple) {
  const std::vector<Triple> triples = {{"x", "y", "z"},
                                       {"intent", "is", "play music"}};
  EXPECT_EQ(DecodeIntent(triples), "play music");
  EXPECT_FALSE(DecodeIntent({}).has_value());
}

TEST(FactualProbeTest, ContinuationAndEcho) {
  const FactQuery q{"Kurt Schwertsik", "place of birth"};
  EXPECT_EQ(FactPriming(q), "( Kurt Schwertsik; place of birth;");
  EXPECT_EQ(DecodeFactualProbe(" Vienna )", q), "Vienna");
  EXPECT_EQ(DecodeFactualProbe("( Kurt Schwertsik; place of birth; Vienna )",
                               q),
            "Vienna");
  try {
    DecodeFactualProbe(" Vienna and more", q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedCompletion);
  }
}

TEST(PrimingTest, CompleteWithPriming) {
  EXPECT_EQ(CompleteWithPriming("", "( a; b; c )"), "( a; b; c )");
  EXPECT_EQ(CompleteWithPriming("( a;", "b; c )"), "( a; b; c )");
  EXPECT_EQ(CompleteWithPriming("( a;", "(a; b; c)"), "(a; b; c)");
}

TEST(StripAugmentationTest, Basics) {
  EXPECT_EQ(StripAugmentation("[Iago]"), "Iago");
  EXPECT_EQ(StripAugmentation("  Iago "), "Iago");
  EXPECT_EQ(StripAugmentation("[a] b"), "[a] b");
}

// Entity and relation units of one record decode the same in either order.
TEST(CodecPropertyTest, JointUnitsAreIndependent) {
  for (const TaskRecord& r :
       testing::FixtureRecords(TaskKind::kJointEntityRelation)) {
    const auto ex = EncodeRecord(r, EncodeMode{});
    const auto ent = ParseTriples(ex[0].gold_output).triples;
    const auto rel = ParseTriples(ex[1].gold_output).triples;
    const auto e1 = DecodeEntityPrediction(ent, r.text, ex[0].hints.labels);
    const auto r1 = DecodeRelationPrediction(rel, ex[1].hints.labels);
    const auto r2 = DecodeRelationPrediction(rel, ex[1].hints.labels);
    const auto e2 = DecodeEntityPrediction(ent, r.text, ex[0].hints.labels);
    EXPECT_EQ(e1.entities, e2.entities);
    EXPECT_EQ(r1.relations, r2.relations);
    EXPECT_EQ(e1.entities.size(),
              std::get<EntityGold>(r.gold).entities.size());
  }
}

// Every fixture decodes back to its gold in both encoding modes.
TEST(CodecPropertyTest, GoldOutputsDecodeToGold) {
  for (const EncodeMode& mode : {EncodeMode{}, ZeroShot()}) {
    for (const TaskRecord& r : testing::FixtureRecords(TaskKind::kNer)) {
      const auto ex = EncodeRecord(r, mode);
      const auto pred = DecodeEntityPrediction(
          ParseTriples(ex[0].gold_output).triples, r.text, ex[0].hints.labels);
      auto want = std::get<EntityGold>(r.gold).entities;
      auto got = pred.entities;
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, want);
    }
    for (const TaskRecord& r : testing::FixtureRecords(TaskKind::kCoreference)) {
      const auto ex = EncodeRecord(r, mode);
      const auto pred =
          DecodeCoref(ParseTriples(ex[0].gold_output).triples, r.text);
      auto want = std::get<CorefGold>(r.gold).clusters;
      for (auto& c : want) std::sort(c.begin(), c.end());
      std::sort(want.begin(), want.end());
      auto got = pred.clusters;
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, want) << r.text;
    }
  }
}

}  // namespace
}  // namespace structkit
