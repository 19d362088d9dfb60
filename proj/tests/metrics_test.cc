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

#include "structkit/metrics.h"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "structkit/error.h"

namespace structkit {
namespace {

TEST(PrfTest, FromCounts) {
  const PRF p = PRF::FromCounts(3, 1, 2);
  EXPECT_DOUBLE_EQ(p.precision, 0.75);
  EXPECT_DOUBLE_EQ(p.recall, 0.6);
  EXPECT_DOUBLE_EQ(p.f1, 2 * 0.75 * 0.6 / 1.35);
  const PRF zero = PRF::FromCounts(0, 0, 0);
  EXPECT_EQ(zero.precision, 0.0);
  EXPECT_EQ(zero.f1, 0.0);
}

TEST(PrfTest, AccumulatesCounts) {
  PRF a = PRF::FromCounts(1, 0, 1);
  a += PRF::FromCounts(1, 2, 0);
  EXPECT_EQ(a.tp, 2u);
  EXPECT_EQ(a.fp, 2u);
  EXPECT_EQ(a.fn, 1u);
  EXPECT_DOUBLE_EQ(a.precision, 0.5);
}

TEST(PrfTest, Accuracy) {
  const PRF a = PRF::FromAccuracy(3, 4);
  EXPECT_EQ(a.precision, 0.75);
  EXPECT_EQ(a.recall, 0.75);
  EXPECT_EQ(a.f1, 0.75);
}

TEST(MicroPrfTest, MultisetSemantics) {
  const std::vector<std::string> pred = {"a", "a", "b"};
  const std::vector<std::string> gold = {"a", "c"};
  const PRF p = MicroPrf(pred, gold);
  EXPECT_EQ(p.tp, 1u);
  EXPECT_EQ(p.fp, 2u);
  EXPECT_EQ(p.fn, 1u);
}

TEST(TypedSpanPrfTest, IdentificationIgnoresType) {
  const std::vector<TypedSpan> gold = {{{0, 5}, "person"}, {{6, 9}, "location"}};
  const std::vector<TypedSpan> pred = {{{0, 5}, "location"}, {{6, 9}, "location"}};
  EXPECT_EQ(TypedSpanPrf(pred, gold, SpanMatch::kIdentification).f1, 1.0);
  EXPECT_EQ(TypedSpanPrf(pred, gold, SpanMatch::kClassification).tp, 1u);
}

Clustering Mentions(std::vector<std::vector<std::size_t>> ids) {
  Clustering out;
  for (const auto& c : ids) {
    Cluster cluster;
    for (std::size_t i : c) cluster.push_back({i * 4, i * 4 + 2});
    out.push_back(cluster);
  }
  return out;
}

TEST(CorefTest, MucSplitCluster) {
  const PRF muc = Muc(Mentions({{0, 1}, {2, 3}}), Mentions({{0, 1, 2, 3}}));
  EXPECT_EQ(muc.precision, 1.0);
  EXPECT_DOUBLE_EQ(muc.recall, 2.0 / 3.0);
  EXPECT_EQ(muc.f1, 0.8);
}

TEST(CorefTest, PerfectPrediction) {
  const Clustering g = Mentions({{0, 1, 2}, {3, 4}});
  const CorefScores s = ScoreCoref(CountCoref(g, g));
  EXPECT_EQ(s.muc.f1, 1.0);
  EXPECT_EQ(s.b_cubed.f1, 1.0);
  EXPECT_EQ(s.ceaf_phi4.f1, 1.0);
  EXPECT_EQ(s.avg_f1, 1.0);
}

TEST(CorefTest, BCubedKnownValue) {
  // gold {a,b,c}, pred {a,b},{c}: recall = (2/3 + 2/3 + 1/3) / 3.
  const PRF b3 = BCubed(Mentions({{0, 1}, {2}}), Mentions({{0, 1, 2}}));
  EXPECT_DOUBLE_EQ(b3.recall, 5.0 / 9.0);
  EXPECT_DOUBLE_EQ(b3.precision, 1.0);
}

TEST(CorefTest, CeafKnownValue) {
  // phi4({a,b,c},{a,b}) = 4/5, the singleton {c} stays unmatched.
  const PRF ceaf = CeafPhi4(Mentions({{0, 1}, {2}}), Mentions({{0, 1, 2}}));
  EXPECT_DOUBLE_EQ(ceaf.recall, 0.8);
  EXPECT_DOUBLE_EQ(ceaf.precision, 0.4);
}

TEST(CorefTest, EmptySides) {
  const PRF muc = Muc({}, Mentions({{0, 1}}));
  EXPECT_EQ(muc.recall, 0.0);
  EXPECT_EQ(muc.f1, 0.0);
  EXPECT_EQ(CeafPhi4({}, {}).f1, 0.0);
}

TEST(CorefTest, CountsAggregateAcrossDocuments) {
  CorefCounts total = CountCoref(Mentions({{0, 1}}), Mentions({{0, 1}}));
  total += CountCoref(Mentions({{0}, {1}}), Mentions({{0, 1}}));
  const CorefScores s = ScoreCoref(total);
  EXPECT_DOUBLE_EQ(s.muc.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.muc.precision, 1.0);
}

TEST(MaxWeightAssignmentTest, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 5;
    const std::size_t cols = 1 + rng() % 5;
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
    for (auto& row : m) {
      for (double& x : row) x = w(rng);
    }
    const std::vector<int> a = MaxWeightAssignment(m);
    ASSERT_EQ(a.size(), rows);
    double got = 0.0;
    std::vector<bool> used(cols, false);
    for (std::size_t r = 0; r < rows; ++r) {
      if (a[r] < 0) continue;
      ASSERT_FALSE(used[a[r]]);
      used[a[r]] = true;
      got += m[r][a[r]];
    }
    const std::size_t n = std::max(rows, cols);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0.0;
    do {
      double total = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        if (perm[r] < cols) total += m[r][perm[r]];
      }
      best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_NEAR(got, best, 1e-12);
  }
}

TEST(DialogueTest, JointGoalAccuracy) {
  const std::vector<SlotState> gold = {{{"hotel area", "north"}},
                                       {{"hotel area", "south"}}};
  const std::vector<SlotState> pred = {{{"hotel area", " north "}},
                                       {{"hotel area", "east"}}};
  EXPECT_EQ(JointGoalAccuracy(pred, gold), 0.5);
  EXPECT_TRUE(SameDialogueState(pred[0], gold[0]));
  EXPECT_FALSE(SameDialogueState({}, gold[0]));
}

TEST(DialogueTest, TurnCountMismatch) {
  const std::vector<SlotState> one(1);
  const std::vector<SlotState> two(2);
  for (auto [p, g] : {std::pair{one, two}, std::pair{std::vector<SlotState>{},
                                                      std::vector<SlotState>{}}}) {
    try {
      JointGoalAccuracy(p, g);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kTurnCountMismatch);
    }
  }
}

TEST(PrecisionAt1Test, NormalizedEquality) {
  const std::vector<std::string> pred = {"Vienna ", "Graz"};
  const std::vector<std::string> gold = {"Vienna", "Linz"};
  EXPECT_EQ(PrecisionAt1(pred, gold), 0.5);
  const std::vector<std::string> short_gold = {"Vienna"};
  EXPECT_THROW(PrecisionAt1(pred, short_gold), Error);
}

TEST(OieTest, TokenF1) {
  EXPECT_DOUBLE_EQ(TokenF1("the software", "software"), 2.0 / 3.0);
  EXPECT_EQ(TokenF1("A B", "a b"), 1.0);
  EXPECT_EQ(TokenF1("", "x"), 0.0);
}

TEST(OieTest, GreedyOneToOne) {
  const std::vector<OpenTuple> gold = {
      {"Americans", "making", "PCs and the software that runs them"},
      {"PCs", "runs", "software"}};
  const std::vector<OpenTuple> pred = {
      {"Americans", "making", "PCs and the software"},
      {"Americans", "making", "PCs and the software that runs them"},
      {"PCs", "run", "software"}};
  const PRF p = OieTuplePrf(pred, gold);
  EXPECT_EQ(p.tp, 1u);
  EXPECT_EQ(p.fp, 2u);
  EXPECT_EQ(p.fn, 1u);
  EXPECT_FALSE(TokenOverlapMatcher().description.empty());
}

TEST(OieTest, ArityMustMatch) {
  const std::vector<OpenTuple> gold = {{"a", "b", "c"}};
  const std::vector<OpenTuple> pred = {{"a", "b", "c", "d"}};
  EXPECT_EQ(OieTuplePrf(pred, gold).tp, 0u);
}

TEST(ErrorTaxonomyTest, Categories) {
  const Triple gold{"Alice Adler", "work for", "Acme Labs"};
  const std::vector<std::string> no_entities;
  const std::vector<Triple> close = {{"Alice Adler", "work for", "Acme"}};
  EXPECT_EQ(CategorizeMissingRelation(gold, close, no_entities),
            ErrorCategory::kCloseEntity);
  const std::vector<Triple> wrong = {{"Alice Adler", "live in", "Acme Labs"}};
  EXPECT_EQ(CategorizeMissingRelation(gold, wrong, no_entities),
            ErrorCategory::kWrongRelation);
  const std::vector<Triple> focus = {{"Bruno Brandt", "work for", "Zephyr"}};
  EXPECT_EQ(CategorizeMissingRelation(gold, focus, no_entities),
            ErrorCategory::kDifferentFocus);
  EXPECT_EQ(CategorizeMissingRelation(gold, {}, no_entities),
            ErrorCategory::kTotallyMissing);
  const std::vector<std::string> near_entity = {"Acme Labs Inc"};
  EXPECT_EQ(CategorizeMissingRelation(gold, {}, near_entity),
            ErrorCategory::kCloseEntity);
}

TEST(ErrorTaxonomyTest, CountsSumToMissing) {
  const std::vector<Triple> missing = {{"a", "r", "b"}, {"c", "r", "d"}};
  const std::vector<Triple> predicted = {{"a", "s", "b"}};
  const ErrorTaxonomy t = CategorizeMissingRelations(missing, predicted, {});
  EXPECT_EQ(t.total(), 2u);
  EXPECT_EQ(t[ErrorCategory::kWrongRelation], 1u);
  EXPECT_EQ(ErrorCategoryName(ErrorCategory::kCloseEntity), "close_entity");
}

}  // namespace
}  // namespace structkit
