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
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "structkit/error.h"

namespace structkit {
namespace {

double SafeDiv(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::map<Span, std::size_t> ClusterIndex(const Clustering& clustering) {
  std::map<Span, std::size_t> index;
  for (std::size_t c = 0; c < clustering.size(); ++c) {
    for (const Span& mention : clustering[c]) index.emplace(mention, c);
  }
  return index;
}

// MUC numerator and denominator of `key` against `response`: every mention
// of a key cluster missing from the response is its own partition.
Ratio MucRatio(const Clustering& key, const Clustering& response) {
  const auto index = ClusterIndex(response);
  Ratio ratio;
  for (const Cluster& cluster : key) {
    if (cluster.empty()) continue;
    std::set<std::size_t> parts;
    std::size_t unaligned = 0;
    for (const Span& mention : cluster) {
      auto it = index.find(mention);
      if (it == index.end()) {
        ++unaligned;
      } else {
        parts.insert(it->second);
      }
    }
    ratio.num += static_cast<double>(cluster.size() -
                                     (parts.size() + unaligned));
    ratio.den += static_cast<double>(cluster.size() - 1);
  }
  return ratio;
}

std::size_t Overlap(const Cluster& a, const Cluster& b) {
  std::set<Span> lookup(b.begin(), b.end());
  std::size_t n = 0;
  for (const Span& mention : a) n += lookup.count(mention);
  return n;
}

Ratio BCubedRatio(const Clustering& key, const Clustering& response) {
  Ratio ratio;
  for (const Cluster& k : key) {
    if (k.empty()) continue;
    double sum = 0.0;
    for (const Cluster& r : response) {
      const double common = static_cast<double>(Overlap(k, r));
      sum += common * common;
    }
    ratio.num += sum / static_cast<double>(k.size());
    ratio.den += static_cast<double>(k.size());
  }
  return ratio;
}

double Phi4(const Cluster& a, const Cluster& b) {
  const double total = static_cast<double>(a.size() + b.size());
  if (total == 0.0) return 0.0;
  return 2.0 * static_cast<double>(Overlap(a, b)) / total;
}

double CeafSimilarity(const Clustering& pred, const Clustering& gold) {
  if (pred.empty() || gold.empty()) return 0.0;
  std::vector<std::vector<double>> weight(pred.size(),
                                          std::vector<double>(gold.size()));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gold.size(); ++j) {
      weight[i][j] = Phi4(pred[i], gold[j]);
    }
  }
  const std::vector<int> assignment = MaxWeightAssignment(weight);
  double total = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= 0) total += weight[i][assignment[i]];
  }
  return total;
}

std::vector<std::string> LowerTokens(std::string_view s) {
  std::vector<std::string> tokens;
  std::istringstream in(NormalizeSurface(s, CasePolicy::kLower));
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::string Key(std::string_view s) {
  return NormalizeSurface(s, CasePolicy::kLower);
}

}  // namespace

PRF PRF::FromCounts(std::size_t tp, std::size_t fp, std::size_t fn) {
  PRF prf;
  prf.tp = tp;
  prf.fp = fp;
  prf.fn = fn;
  prf.precision = SafeDiv(static_cast<double>(tp), static_cast<double>(tp + fp));
  prf.recall = SafeDiv(static_cast<double>(tp), static_cast<double>(tp + fn));
  prf.f1 = SafeDiv(2.0 * static_cast<double>(tp),
                   static_cast<double>(2 * tp + fp + fn));
  return prf;
}

PRF PRF::FromRatios(double p_num, double p_den, double r_num, double r_den) {
  PRF prf;
  prf.precision = SafeDiv(p_num, p_den);
  prf.recall = SafeDiv(r_num, r_den);
  if (p_den > 0.0 && r_den > 0.0) {
    // 2PR / (P + R) with the denominators multiplied out, so that ratios of
    // small integers stay exact.
    prf.f1 = SafeDiv(2.0 * p_num * r_num, p_num * r_den + r_num * p_den);
  }
  return prf;
}

PRF PRF::FromAccuracy(std::size_t correct, std::size_t total) {
  PRF prf;
  prf.tp = correct;
  prf.fn = total - correct;
  prf.precision = prf.recall = prf.f1 =
      SafeDiv(static_cast<double>(correct), static_cast<double>(total));
  return prf;
}

PRF& PRF::operator+=(const PRF& other) {
  *this = FromCounts(tp + other.tp, fp + other.fp, fn + other.fn);
  return *this;
}

PRF MicroPrf(std::span<const std::string> pred,
             std::span<const std::string> gold) {
  std::map<std::string_view, std::size_t> remaining;
  for (const std::string& item : gold) ++remaining[item];
  std::size_t tp = 0;
  for (const std::string& item : pred) {
    auto it = remaining.find(item);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++tp;
    }
  }
  return PRF::FromCounts(tp, pred.size() - tp, gold.size() - tp);
}

PRF TypedSpanPrf(std::span<const TypedSpan> pred,
                 std::span<const TypedSpan> gold, SpanMatch mode) {
  auto keys = [mode](std::span<const TypedSpan> spans) {
    std::vector<std::string> out;
    out.reserve(spans.size());
    for (const TypedSpan& s : spans) {
      std::string key =
          std::to_string(s.span.start) + ":" + std::to_string(s.span.end);
      if (mode == SpanMatch::kClassification) {
        key += "\x1f" + NormalizeSurface(s.type);
      }
      out.push_back(std::move(key));
    }
    return out;
  };
  const auto p = keys(pred);
  const auto g = keys(gold);
  return MicroPrf(p, g);
}

CorefCounts& CorefCounts::operator+=(const CorefCounts& other) {
  for (auto [mine, theirs] :
       {std::pair{&muc_p, &other.muc_p}, std::pair{&muc_r, &other.muc_r},
        std::pair{&b3_p, &other.b3_p}, std::pair{&b3_r, &other.b3_r},
        std::pair{&ceaf_p, &other.ceaf_p},
        std::pair{&ceaf_r, &other.ceaf_r}}) {
    mine->num += theirs->num;
    mine->den += theirs->den;
  }
  return *this;
}

CorefCounts CountCoref(const Clustering& pred, const Clustering& gold) {
  CorefCounts counts;
  counts.muc_r = MucRatio(gold, pred);
  counts.muc_p = MucRatio(pred, gold);
  counts.b3_r = BCubedRatio(gold, pred);
  counts.b3_p = BCubedRatio(pred, gold);
  const double similarity = CeafSimilarity(pred, gold);
  counts.ceaf_p = {similarity, static_cast<double>(pred.size())};
  counts.ceaf_r = {similarity, static_cast<double>(gold.size())};
  return counts;
}

CorefScores ScoreCoref(const CorefCounts& c) {
  CorefScores scores;
  scores.muc = PRF::FromRatios(c.muc_p.num, c.muc_p.den, c.muc_r.num,
                               c.muc_r.den);
  scores.b_cubed =
      PRF::FromRatios(c.b3_p.num, c.b3_p.den, c.b3_r.num, c.b3_r.den);
  scores.ceaf_phi4 = PRF::FromRatios(c.ceaf_p.num, c.ceaf_p.den,
                                     c.ceaf_r.num, c.ceaf_r.den);
  scores.avg_f1 =
      (scores.muc.f1 + scores.b_cubed.f1 + scores.ceaf_phi4.f1) / 3.0;
  return scores;
}

PRF Muc(const Clustering& pred, const Clustering& gold) {
  return ScoreCoref(CountCoref(pred, gold)).muc;
}

PRF BCubed(const Clustering& pred, const Clustering& gold) {
  return ScoreCoref(CountCoref(pred, gold)).b_cubed;
}

PRF CeafPhi4(const Clustering& pred, const Clustering& gold) {
  return ScoreCoref(CountCoref(pred, gold)).ceaf_phi4;
}

std::vector<int> MaxWeightAssignment(
    const std::vector<std::vector<double>>& weight) {
  const std::size_t rows = weight.size();
  if (rows == 0) return {};
  const std::size_t cols = weight[0].size();
  if (cols == 0) return std::vector<int>(rows, -1);
  const bool transposed = rows > cols;
  const std::size_t n = transposed ? cols : rows;
  const std::size_t m = transposed ? rows : cols;
  auto cost = [&](std::size_t i, std::size_t j) {
    return transposed ? -weight[j - 1][i - 1] : -weight[i - 1][j - 1];
  };

  // Shortest augmenting path formulation of the Hungarian method, 1-based
  // with column 0 as the virtual source.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> result(rows, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    if (transposed) {
      result[j - 1] = static_cast<int>(p[j] - 1);
    } else {
      result[p[j] - 1] = static_cast<int>(j - 1);
    }
  }
  return result;
}

bool SameDialogueState(const SlotState& pred, const SlotState& gold) {
  if (pred.size() != gold.size()) return false;
  for (const auto& [slot, value] : gold) {
    auto it = pred.find(slot);
    if (it == pred.end() ||
        NormalizeSurface(it->second) != NormalizeSurface(value)) {
      return false;
    }
  }
  return true;
}

double JointGoalAccuracy(std::span<const SlotState> pred,
                         std::span<const SlotState> gold) {
  if (pred.size() != gold.size()) {
    throw Error(ErrorCode::kTurnCountMismatch,
                std::to_string(pred.size()) + " predicted turns for " +
                    std::to_string(gold.size()) + " gold turns");
  }
  if (gold.empty()) {
    throw Error(ErrorCode::kTurnCountMismatch,
                "joint goal accuracy is undefined without turns");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (SameDialogueState(pred[i], gold[i])) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

double PrecisionAt1(std::span<const std::string> pred,
                    std::span<const std::string> gold) {
  if (pred.size() != gold.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(pred.size()) + " predictions for " +
                    std::to_string(gold.size()) + " gold objects");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (NormalizeSurface(pred[i]) == NormalizeSurface(gold[i])) ++correct;
  }
  return SafeDiv(static_cast<double>(correct), static_cast<double>(gold.size()));
}

double TokenF1(std::string_view a, std::string_view b) {
  const auto ta = LowerTokens(a);
  const auto tb = LowerTokens(b);
  if (ta.empty() && tb.empty()) return 1.0;
  std::map<std::string, std::size_t> remaining;
  for (const auto& t : tb) ++remaining[t];
  std::size_t common = 0;
  for (const auto& t : ta) {
    auto it = remaining.find(t);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(ta.size() + tb.size());
}

TupleMatcher TokenOverlapMatcher(double threshold) {
  std::ostringstream description;
  description << "token-overlap: same arity, lowercased whitespace-token F1 >= "
              << threshold << " on every slot, greedy one-to-one by mean F1";
  TupleMatcher matcher;
  matcher.description = description.str();
  matcher.match = [threshold](const OpenTuple& pred,
                              const OpenTuple& gold) -> std::optional<double> {
    if (pred.size() != gold.size() || gold.empty()) return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const double f1 = TokenF1(pred[i], gold[i]);
      if (f1 < threshold) return std::nullopt;
      sum += f1;
    }
    return sum / static_cast<double>(gold.size());
  };
  return matcher;
}

PRF OieTuplePrf(std::span<const OpenTuple> pred,
                std::span<const OpenTuple> gold, const TupleMatcher& matcher) {
  struct Candidate {
    double score;
    std::size_t p;
    std::size_t g;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gold.size(); ++j) {
      if (auto score = matcher.match(pred[i], gold[j])) {
        candidates.push_back({*score, i, j});
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.score > b.score;
                   });
  std::vector<bool> pred_used(pred.size()), gold_used(gold.size());
  std::size_t tp = 0;
  for (const Candidate& c : candidates) {
    if (pred_used[c.p] || gold_used[c.g]) continue;
    pred_used[c.p] = gold_used[c.g] = true;
    ++tp;
  }
  return PRF::FromCounts(tp, pred.size() - tp, gold.size() - tp);
}

std::string_view ErrorCategoryName(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kCloseEntity:
      return "close_entity";
    case ErrorCategory::kTotallyMissing:
      return "totally_missing";
    case ErrorCategory::kWrongRelation:
      return "wrong_relation";
    case ErrorCategory::kDifferentFocus:
      return "different_focus";
  }
  return "unknown";
}

std::size_t ErrorTaxonomy::total() const {
  std::size_t sum = 0;
  for (std::size_t c : counts) sum += c;
  return sum;
}

ErrorTaxonomy& ErrorTaxonomy::operator+=(const ErrorTaxonomy& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

ErrorCategory CategorizeMissingRelation(
    const Triple& gold, std::span<const Triple> predicted,
    std::span<const std::string> predicted_entities) {
  constexpr double kCloseOverlap = 0.5;
  const std::string head = Key(gold.head);
  const std::string relation = Key(gold.relation);
  const std::string tail = Key(gold.tail);

  // An entity output that almost, but not exactly, covers a gold argument.
  auto near_only = [&](const std::string& entity) {
    bool near = false;
    for (const std::string& candidate : predicted_entities) {
      const std::string key = Key(candidate);
      if (key == entity) return false;
      if (TokenF1(key, entity) >= kCloseOverlap) near = true;
    }
    return near;
  };

  bool wrong_relation = false;
  bool different_focus = false;
  for (const Triple& p : predicted) {
    const bool same_head = Key(p.head) == head;
    const bool same_tail = Key(p.tail) == tail;
    const bool same_relation = Key(p.relation) == relation;
    if (same_relation &&
        (same_head ||
         (same_tail && TokenF1(Key(p.head), head) >= kCloseOverlap))) {
      return ErrorCategory::kCloseEntity;
    }
    if (same_head && same_tail && !same_relation) wrong_relation = true;
    if (same_relation && !same_head) different_focus = true;
  }
  if (near_only(head) || near_only(tail)) return ErrorCategory::kCloseEntity;
  if (wrong_relation) return ErrorCategory::kWrongRelation;
  if (different_focus) return ErrorCategory::kDifferentFocus;
  return ErrorCategory::kTotallyMissing;
}

ErrorTaxonomy CategorizeMissingRelations(
    std::span<const Triple> missing, std::span<const Triple> predicted,
    std::span<const std::string> predicted_entities) {
  ErrorTaxonomy taxonomy;
  for (const Triple& gold : missing) {
    ++taxonomy[CategorizeMissingRelation(gold, predicted, predicted_entities)];
  }
  return taxonomy;
}

}  // namespace structkit
