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

// Evaluation metrics: micro P/R/F1 kernels, span scores, the three
// coreference metrics, dialogue joint goal accuracy, P@1, open-tuple F1 and
// a categorization of missed relation triples.
//
// Every 0/0 ratio is defined as 0.

#ifndef STRUCTKIT_METRICS_H_
#define STRUCTKIT_METRICS_H_

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structkit/span_grounding.h"
#include "structkit/task.h"
#include "structkit/triple.h"

namespace structkit {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  static PRF FromCounts(std::size_t tp, std::size_t fp, std::size_t fn);
  // precision = p_num / p_den, recall = r_num / r_den. Counts stay zero.
  static PRF FromRatios(double p_num, double p_den, double r_num,
                        double r_den);
  // Accuracy reported in PRF form: all three values equal correct / total.
  static PRF FromAccuracy(std::size_t correct, std::size_t total);

  // Sums counts and recomputes the values (count-based metrics only).
  PRF& operator+=(const PRF& other);
};

// Multiset micro P/R/F1 over canonical item keys.
PRF MicroPrf(std::span<const std::string> pred,
             std::span<const std::string> gold);

enum class SpanMatch { kIdentification, kClassification };

PRF TypedSpanPrf(std::span<const TypedSpan> pred,
                 std::span<const TypedSpan> gold, SpanMatch mode);

using Cluster = std::vector<Span>;
using Clustering = std::vector<Cluster>;

// Numerator and denominator of one coreference precision or recall, kept
// apart so documents aggregate the way the CoNLL scorer does.
struct Ratio {
  double num = 0.0;
  double den = 0.0;
};

struct CorefCounts {
  Ratio muc_p, muc_r;
  Ratio b3_p, b3_r;
  Ratio ceaf_p, ceaf_r;

  CorefCounts& operator+=(const CorefCounts& other);
};

struct CorefScores {
  PRF muc;
  PRF b_cubed;
  PRF ceaf_phi4;
  double avg_f1 = 0.0;
};

CorefCounts CountCoref(const Clustering& pred, const Clustering& gold);
CorefScores ScoreCoref(const CorefCounts& counts);

PRF Muc(const Clustering& pred, const Clustering& gold);
PRF BCubed(const Clustering& pred, const Clustering& gold);
PRF CeafPhi4(const Clustering& pred, const Clustering& gold);

// Optimal assignment maximizing total weight over a rows x cols matrix.
// Returns, per row, the assigned column or -1.
std::vector<int> MaxWeightAssignment(
    const std::vector<std::vector<double>>& weight);

using SlotState = std::map<std::string, std::string>;

// True iff both states have the same slots and every value matches after
// whitespace normalization.
bool SameDialogueState(const SlotState& pred, const SlotState& gold);

// Throws Error(kTurnCountMismatch) on differing or zero turn counts.
double JointGoalAccuracy(std::span<const SlotState> pred,
                         std::span<const SlotState> gold);

// Throws Error(kLengthMismatch).
double PrecisionAt1(std::span<const std::string> pred,
                    std::span<const std::string> gold);

using OpenTuple = std::vector<std::string>;

struct TupleMatcher {
  // Written into evaluation reports so the numbers are interpretable.
  std::string description;
  // Match score of (pred, gold), or nullopt when the pair does not match.
  std::function<std::optional<double>(const OpenTuple&, const OpenTuple&)>
      match;
};

// Lowercased whitespace-token F1 between two strings.
double TokenF1(std::string_view a, std::string_view b);

// Same arity and per-slot TokenF1 >= threshold on every slot; the score is
// the mean slot F1.
TupleMatcher TokenOverlapMatcher(double threshold = 0.5);

// Greedy one-to-one matching by descending score.
PRF OieTuplePrf(std::span<const OpenTuple> pred,
                std::span<const OpenTuple> gold,
                const TupleMatcher& matcher = TokenOverlapMatcher());

enum class ErrorCategory {
  kCloseEntity,
  kTotallyMissing,
  kWrongRelation,
  kDifferentFocus,
};

std::string_view ErrorCategoryName(ErrorCategory category);

struct ErrorTaxonomy {
  std::array<std::size_t, 4> counts{};

  std::size_t& operator[](ErrorCategory c) {
    return counts[static_cast<std::size_t>(c)];
  }
  std::size_t operator[](ErrorCategory c) const {
    return counts[static_cast<std::size_t>(c)];
  }
  std::size_t total() const;
  ErrorTaxonomy& operator+=(const ErrorTaxonomy& other);
};

// Precedence: CloseEntity, WrongRelation, DifferentFocus, TotallyMissing.
// Surfaces are compared case-insensitively after normalization.
ErrorCategory CategorizeMissingRelation(
    const Triple& gold, std::span<const Triple> predicted,
    std::span<const std::string> predicted_entities);

ErrorTaxonomy CategorizeMissingRelations(
    std::span<const Triple> missing, std::span<const Triple> predicted,
    std::span<const std::string> predicted_entities);

}  // namespace structkit

#endif  // STRUCTKIT_METRICS_H_
