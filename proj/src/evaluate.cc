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

#include <algorithm>
#include <set>
#include <variant>

#include "structkit/codec.h"
#include "structkit/error.h"
#include "structkit/hash.h"
#include "structkit/triple.h"

namespace structkit {
namespace {

struct Accumulator {
  TaskReport report;
  CorefCounts coref;
  std::size_t correct = 0;  // dst turns or fp queries
  std::size_t total = 0;
};

bool UsesAlignment(TaskKind task) {
  switch (task) {
    case TaskKind::kNer:
    case TaskKind::kJointEntityRelation:
    case TaskKind::kRelationClassification:
    case TaskKind::kSrl:
    case TaskKind::kEventTrigger:
    case TaskKind::kEventArgument:
      return true;
    default:
      return false;
  }
}

std::string TripleKey(const Triple& t) {
  return NormalizeSurface(t.head) + '\x1f' + NormalizeSurface(t.relation) +
         '\x1f' + NormalizeSurface(t.tail);
}

std::vector<std::string> TripleKeys(std::span<const Triple> triples) {
  std::vector<std::string> keys;
  for (const Triple& t : triples) keys.push_back(TripleKey(t));
  return keys;
}

std::vector<Triple> GoldRelations(const EntityGold& gold,
                                  std::string_view text) {
  std::vector<Triple> out;
  for (const SpanRelation& r : gold.relations) {
    out.push_back({SpanText(text, gold.entities.at(r.head).span), r.type,
                   SpanText(text, gold.entities.at(r.tail).span)});
  }
  return out;
}

// Gold relations without a matching prediction, as a multiset difference.
std::vector<Triple> MissingRelations(std::span<const Triple> gold,
                                     std::span<const Triple> pred) {
  std::multiset<std::string> available;
  for (const Triple& t : pred) available.insert(TripleKey(t));
  std::vector<Triple> missing;
  for (const Triple& t : gold) {
    auto it = available.find(TripleKey(t));
    if (it == available.end()) {
      missing.push_back(t);
    } else {
      available.erase(it);
    }
  }
  return missing;
}

void AddPrf(TaskReport& report, const std::string& name, const PRF& prf) {
  auto [it, inserted] = report.metrics.try_emplace(name, prf);
  if (!inserted) it->second += prf;
}

class Scorer {
 public:
  explicit Scorer(const EvalOptions& options) : options_(options) {}

  void Score(const EncodedExample& example, const std::string& output) {
    const DecodeHints& h = example.hints;
    Accumulator& acc = Get(h);
    ++acc.report.examples;
    auto& drops = acc.report.drops;

    if (h.task == TaskKind::kFactualProbe) {
      ScoreFactualProbe(acc, h, output);
      return;
    }

    const std::string text =
        h.priming.empty() ? output : CompleteWithPriming(h.priming, output);
    ParseResult parsed = ParseTriples(text);
    drops["parse_skipped"] += parsed.diagnostics.skipped_fragments.size();
    drops["parse_recovered"] += parsed.diagnostics.recovered_count;
    std::vector<Triple> triples = std::move(parsed.triples);

    if (options_.alignment && h.zero_shot && UsesAlignment(h.task)) {
      std::vector<Triple> mapped;
      for (const Triple& t : triples) {
        if (auto m = ApplyAlignment(t, *options_.alignment)) {
          mapped.push_back(std::move(*m));
        } else {
          ++drops["unaligned"];
        }
      }
      triples = std::move(mapped);
    }

    const bool trim = DecodeConfigFor(h, options_).trim_to_first_triple;
    switch (h.task) {
      case TaskKind::kNer:
      case TaskKind::kSrl:
      case TaskKind::kEventTrigger:
      case TaskKind::kEventArgument:
        ScoreEntities(acc, h, triples);
        break;
      case TaskKind::kJointEntityRelation:
        if (h.family == Family::kEntity) {
          ScoreEntities(acc, h, triples);
        } else {
          ScoreJerRelations(acc, h, triples, trim);
        }
        break;
      case TaskKind::kRelationClassification: {
        const auto& gold = std::get<RcGold>(h.gold);
        const Triple expected{SpanText(h.text, gold.head), gold.relation,
                              SpanText(h.text, gold.tail)};
        RelationDecodeResult pred =
            DecodeRelationPrediction(triples, h.labels, trim);
        drops["relation"] += pred.dropped;
        AddPrf(acc.report, "relation_f1",
               MicroPrf(TripleKeys(pred.relations),
                        TripleKeys(std::span(&expected, 1))));
        break;
      }
      case TaskKind::kOie: {
        const auto pred = DecodeOpenTriples(triples, trim);
        AddPrf(acc.report, "oie_f1",
               OieTuplePrf(pred, std::get<OieGold>(h.gold).tuples,
                           options_.oie_matcher));
        break;
      }
      case TaskKind::kCoreference: {
        CorefDecodeResult pred = DecodeCoref(triples, h.text);
        drops["coref"] += pred.dropped;
        Clustering gold;
        for (const auto& cluster : std::get<CorefGold>(h.gold).clusters) {
          if (cluster.size() >= 2) gold.push_back(cluster);
        }
        acc.coref += CountCoref(pred.clusters, gold);
        break;
      }
      case TaskKind::kDialogueStateTracking: {
        const SlotState pred = DecodeDst(triples, h.slots);
        if (SameDialogueState(pred, std::get<DstGold>(h.gold).state)) {
          ++acc.correct;
        }
        ++acc.total;
        break;
      }
      case TaskKind::kIntentDetection: {
        std::vector<std::string> pred;
        if (auto intent = DecodeIntent(triples)) {
          pred.push_back(NormalizeSurface(*intent));
        } else {
          ++drops["no_intent"];
        }
        const std::string gold =
            NormalizeSurface(std::get<IntentGold>(h.gold).intent);
        AddPrf(acc.report, "intent_f1",
               MicroPrf(pred, std::span(&gold, 1)));
        break;
      }
      case TaskKind::kFactualProbe:
        break;
    }
  }

  EvalReport Finish() {
    EvalReport report;
    for (auto& [key, acc] : accumulators_) {
      TaskReport& r = acc.report;
      switch (r.task) {
        case TaskKind::kCoreference: {
          const CorefScores s = ScoreCoref(acc.coref);
          r.metrics["muc"] = s.muc;
          r.metrics["b_cubed"] = s.b_cubed;
          r.metrics["ceaf_phi4"] = s.ceaf_phi4;
          PRF avg;
          avg.precision = (s.muc.precision + s.b_cubed.precision +
                           s.ceaf_phi4.precision) / 3.0;
          avg.recall =
              (s.muc.recall + s.b_cubed.recall + s.ceaf_phi4.recall) / 3.0;
          avg.f1 = s.avg_f1;
          r.metrics["avg_f1"] = avg;
          break;
        }
        case TaskKind::kDialogueStateTracking:
          r.metrics["joint_goal_accuracy"] =
              PRF::FromAccuracy(acc.correct, acc.total);
          break;
        case TaskKind::kFactualProbe:
          r.metrics["p_at_1"] = PRF::FromAccuracy(acc.correct, acc.total);
          break;
        case TaskKind::kJointEntityRelation:
          r.metrics.try_emplace("entity_f1");
          r.metrics.try_emplace("relation_f1");
          if (!r.taxonomy) r.taxonomy.emplace();
          break;
        default:
          break;
      }
      report.tasks.emplace(key, std::move(r));
    }
    return report;
  }

 private:
  Accumulator& Get(const DecodeHints& h) {
    auto [it, inserted] =
        accumulators_.try_emplace(ReportKey(h.task, h.dataset_id));
    if (inserted) {
      it->second.report.task = h.task;
      it->second.report.dataset_id = h.dataset_id;
    }
    return it->second;
  }

  void ScoreEntities(Accumulator& acc, const DecodeHints& h,
                     std::span<const Triple> triples) {
    EntityDecodeResult pred =
        DecodeEntityPrediction(triples, h.text, h.labels, options_.grounding);
    acc.report.drops["label"] += pred.dropped_label;
    acc.report.drops["ungrounded"] += pred.dropped_ungrounded;
    const auto& gold = std::get<EntityGold>(h.gold).entities;
    const auto cl = TypedSpanPrf(pred.entities, gold, SpanMatch::kClassification);
    switch (h.task) {
      case TaskKind::kEventTrigger:
        AddPrf(acc.report, "trigger_id",
               TypedSpanPrf(pred.entities, gold, SpanMatch::kIdentification));
        AddPrf(acc.report, "trigger_cl", cl);
        break;
      case TaskKind::kEventArgument:
        AddPrf(acc.report, "argument_id",
               TypedSpanPrf(pred.entities, gold, SpanMatch::kIdentification));
        AddPrf(acc.report, "argument_cl", cl);
        break;
      case TaskKind::kSrl:
        AddPrf(acc.report, "argument_f1", cl);
        break;
      default:
        AddPrf(acc.report, "entity_f1", cl);
        break;
    }
    if (h.task == TaskKind::kJointEntityRelation) {
      auto& surfaces = predicted_entities_[h.record_key];
      for (const TypedSpan& e : pred.entities) {
        surfaces.push_back(SpanText(h.text, e.span));
      }
    }
  }

  void ScoreJerRelations(Accumulator& acc, const DecodeHints& h,
                         std::span<const Triple> triples, bool trim) {
    RelationDecodeResult pred =
        DecodeRelationPrediction(triples, h.labels, trim);
    acc.report.drops["relation"] += pred.dropped;
    const auto gold = GoldRelations(std::get<EntityGold>(h.gold), h.text);
    AddPrf(acc.report, "relation_f1",
           MicroPrf(TripleKeys(pred.relations), TripleKeys(gold)));
    const auto missing = MissingRelations(gold, pred.relations);
    const auto& entities = predicted_entities_[h.record_key];
    if (!acc.report.taxonomy) acc.report.taxonomy.emplace();
    *acc.report.taxonomy +=
        CategorizeMissingRelations(missing, pred.relations, entities);
  }

  void ScoreFactualProbe(Accumulator& acc, const DecodeHints& h,
                         const std::string& output) {
    const auto& gold = std::get<FactGold>(h.gold);
    ++acc.total;
    try {
      const std::string object =
          DecodeFactualProbe(output, {gold.subject, gold.relation});
      if (NormalizeSurface(object) == NormalizeSurface(gold.object)) {
        ++acc.correct;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMalformedCompletion) throw;
      ++acc.report.drops["malformed_completion"];
    }
  }

  const EvalOptions& options_;
  std::map<std::string, Accumulator> accumulators_;
  std::map<std::string, std::vector<std::string>> predicted_entities_;
};

Json PrfToJson(const PRF& prf) {
  return {{"precision", prf.precision}, {"recall", prf.recall},
          {"f1", prf.f1},               {"tp", prf.tp},
          {"fp", prf.fp},               {"fn", prf.fn}};
}

Json EvalConfig(const EvalOptions& options) {
  Json config = {
      {"grounding",
       {{"case_insensitive_fallback",
         options.grounding.case_insensitive_fallback}}},
      {"oie_matcher", options.oie_matcher.description},
      {"decode_overrides", options.decode_overrides}};
  if (options.alignment) {
    config["alignment"] = {
        {"dataset", options.alignment->dataset_id},
        {"sha256", Sha256Hex(SerializeAlignment(*options.alignment))}};
  } else {
    config["alignment"] = nullptr;
  }
  return config;
}

}  // namespace

DecodeConfig DecodeConfigFor(const DecodeHints& hints,
                             const EvalOptions& options) {
  DecodeConfig config = DefaultDecodeConfig(hints.task, hints.dataset_id,
                                            hints.family, *options.registry);
  if (!options.decode_overrides.empty()) {
    config = ApplyDecodeOverrides(config, options.decode_overrides);
  }
  return config;
}

std::string ReportKey(TaskKind task, std::string_view dataset_id) {
  return std::string(TaskKindName(task)) + "/" + std::string(dataset_id);
}

EvalReport Evaluate(std::span<const EncodedExample> examples,
                    std::span<const std::string> outputs,
                    const EvalOptions& options) {
  if (examples.size() != outputs.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(outputs.size()) + " outputs for " +
                    std::to_string(examples.size()) + " examples");
  }
  Scorer scorer(options);
  // Joint relation passes need the entity predictions of the same record,
  // so they are scored after everything else.
  auto is_jer_relation = [](const EncodedExample& e) {
    return e.hints.task == TaskKind::kJointEntityRelation &&
           e.hints.family == Family::kRelation;
  };
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (!is_jer_relation(examples[i])) scorer.Score(examples[i], outputs[i]);
  }
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (is_jer_relation(examples[i])) scorer.Score(examples[i], outputs[i]);
  }
  EvalReport report = scorer.Finish();
  report.config = EvalConfig(options);
  report.config_fingerprint = Sha256Hex(report.config.dump());
  return report;
}

Json ReportToJson(const EvalReport& report) {
  Json tasks = Json::object();
  for (const auto& [key, r] : report.tasks) {
    Json metrics = Json::object();
    for (const auto& [name, prf] : r.metrics) metrics[name] = PrfToJson(prf);
    Json entry = {{"task", TaskKindName(r.task)},
                  {"dataset", r.dataset_id},
                  {"examples", r.examples},
                  {"metrics", std::move(metrics)},
                  {"drops", r.drops}};
    if (r.taxonomy) {
      Json taxonomy = Json::object();
      for (ErrorCategory c :
           {ErrorCategory::kCloseEntity, ErrorCategory::kTotallyMissing,
            ErrorCategory::kWrongRelation, ErrorCategory::kDifferentFocus}) {
        taxonomy[std::string(ErrorCategoryName(c))] = (*r.taxonomy)[c];
      }
      entry["taxonomy"] = std::move(taxonomy);
    }
    tasks[key] = std::move(entry);
  }
  return {{"config", report.config},
          {"config_fingerprint", report.config_fingerprint},
          {"tasks", std::move(tasks)}};
}

std::vector<std::string> JoinGenerations(
    std::span<const EncodedExample> examples,
    std::span<const Generation> generations) {
  if (examples.size() != generations.size()) {
    throw Error(ErrorCode::kIdMismatch,
                std::to_string(generations.size()) + " generations for " +
                    std::to_string(examples.size()) + " examples");
  }
  std::vector<std::string> outputs;
  outputs.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (generations[i].id != examples[i].id) {
      throw Error(ErrorCode::kIdMismatch,
                  "position " + std::to_string(i) + ": generation id " +
                      generations[i].id + " does not match example id " +
                      examples[i].id);
    }
    outputs.push_back(generations[i].output);
  }
  return outputs;
}

std::vector<Generation> RunGeneration(std::span<const EncodedExample> examples,
                                      GenerationBackend& backend,
                                      const EvalOptions& options) {
  std::vector<GenerationRequest> requests;
  requests.reserve(examples.size());
  std::set<std::string> seen;
  for (const EncodedExample& e : examples) {
    if (!seen.insert(e.id).second) {
      throw Error(ErrorCode::kIdMismatch, "duplicate example id " + e.id);
    }
    requests.push_back(MakeRequest(e, DecodeConfigFor(e.hints, options)));
  }
  const auto responses = backend.GenerateBatch(requests);
  std::map<std::string, const GenerationResponse*> by_id;
  for (const GenerationResponse& r : responses) by_id[r.id] = &r;
  std::vector<Generation> out;
  out.reserve(examples.size());
  for (const EncodedExample& e : examples) {
    auto it = by_id.find(e.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kIdMismatch,
                  "backend returned no output for id " + e.id);
    }
    out.push_back({e.id, it->second->output});
  }
  return out;
}

}  // namespace structkit
