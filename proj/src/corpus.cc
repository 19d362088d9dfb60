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

#include "structkit/corpus.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "structkit/error.h"
#include "structkit/hash.h"
#include "structkit/triple.h"

namespace structkit {
namespace {

std::string_view StrategyName(MixStrategy strategy) {
  return strategy == MixStrategy::kConcatenate ? "concatenate"
                                               : "example-proportional";
}

std::uint64_t ComponentSeed(std::uint64_t seed, std::size_t component) {
  // splitmix64 finalizer over (seed, component).
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (component + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct TokenSpan {
  std::size_t start;
  std::size_t end;
};

std::vector<TokenSpan> WhitespaceTokens(std::string_view text) {
  std::vector<TokenSpan> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    if (i == text.size()) break;
    const std::size_t start = i;
    while (i < text.size() && !IsAsciiSpace(text[i])) ++i;
    tokens.push_back({start, i});
  }
  return tokens;
}

}  // namespace

double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

void SeededShuffle(std::vector<std::size_t>& values, std::mt19937_64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[UniformIndex(rng, i)]);
  }
}

LeakageResult FilterLeakage(std::span<const PretrainExample> pretrain,
                            const std::set<std::string>& test_texts) {
  std::set<std::string> normalized;
  for (const std::string& text : test_texts) {
    normalized.insert(NormalizeSurface(text));
  }
  LeakageResult result;
  for (const PretrainExample& example : pretrain) {
    if (normalized.contains(NormalizeSurface(example.text))) {
      ++result.removed;
    } else {
      result.kept.push_back(example);
    }
  }
  return result;
}

std::vector<TaskRecord> ChunkDocument(const TaskRecord& document,
                                      std::size_t max_tokens) {
  if (document.task != TaskKind::kCoreference) {
    throw Error(ErrorCode::kInvalidArgument,
                "only coreference documents are chunked");
  }
  if (max_tokens == 0) {
    throw Error(ErrorCode::kInvalidArgument, "chunk size must be positive");
  }
  const auto& gold = std::get<CorefGold>(document.gold);
  const auto tokens = WhitespaceTokens(document.text);
  if (tokens.empty()) return {document};

  std::vector<TaskRecord> chunks;
  for (std::size_t first = 0; first < tokens.size(); first += max_tokens) {
    const std::size_t last = std::min(first + max_tokens, tokens.size()) - 1;
    const std::size_t begin = tokens[first].start;
    const std::size_t end = tokens[last].end;
    TaskRecord chunk;
    chunk.task = document.task;
    chunk.dataset_id = document.dataset_id;
    chunk.text = document.text.substr(begin, end - begin);
    CorefGold chunk_gold;
    for (const auto& cluster : gold.clusters) {
      std::vector<Span> kept;
      for (const Span& mention : cluster) {
        if (mention.start >= begin && mention.end <= end) {
          kept.push_back({mention.start - begin, mention.end - begin});
        }
      }
      if (kept.size() >= 2) chunk_gold.clusters.push_back(std::move(kept));
    }
    chunk.gold = std::move(chunk_gold);
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

const PretrainFamilies& BuiltinPretrainFamilies() {
  static const PretrainFamilies kFamilies = {
      {"t-rex", {Family::kEntity, Family::kRelation}},
      {"tekgen", {Family::kEntity, Family::kRelation}},
      {"kelm", {Family::kEntity, Family::kRelation}},
      {"webnlg", {Family::kRelation}},
      {"conceptnet", {Family::kRelation}},
      {"opiec", {Family::kTriple}},
  };
  return kFamilies;
}

EncodedExample AttachPretrainingPrefix(const PretrainExample& example,
                                       Family family,
                                       const PretrainFamilies& families) {
  const std::string source =
      NormalizeSurface(example.source, CasePolicy::kLower);
  bool allowed = false;
  if (auto it = families.find(source); it != families.end()) {
    allowed = std::find(it->second.begin(), it->second.end(), family) !=
              it->second.end();
  } else {
    allowed = example.family == family;
  }
  if (!allowed) {
    throw Error(ErrorCode::kFamilyMismatch,
                "corpus \"" + example.source + "\" is not registered for " +
                    std::string(FamilyName(family)) + " prediction");
  }
  EncodedExample out;
  out.input = std::string(FamilyName(family)) + ": " + example.text;
  out.gold_output = SerializeTriples(example.triples);
  out.id = Sha256Hex(source + '\x1f' + example.text + '\x1f' +
                     std::string(FamilyName(family)))
               .substr(0, 16);
  // Pretraining examples belong to no downstream task; only the family and
  // text hints are meaningful.
  out.hints.family = family;
  out.hints.zero_shot = true;
  out.hints.text = example.text;
  return out;
}

void ValidateMixtureSpec(const MixtureSpec& spec) {
  if (spec.components.empty()) {
    throw Error(ErrorCode::kConfigError, "mixture has no components");
  }
  if (spec.cap == 0) {
    throw Error(ErrorCode::kConfigError, "mixing cap must be positive");
  }
  std::set<std::string> seen;
  for (const MixtureComponent& c : spec.components) {
    if (c.dataset_id.empty()) {
      throw Error(ErrorCode::kConfigError, "component without dataset id");
    }
    if (c.count == 0) {
      throw Error(ErrorCode::kConfigError,
                  "component " + c.dataset_id + " has no examples");
    }
    if (!seen.insert(c.dataset_id).second) {
      throw Error(ErrorCode::kConfigError,
                  "component " + c.dataset_id + " listed twice");
    }
  }
}

MixtureSpec MixtureSpecFromJson(const Json& json) {
  auto fail = [](const std::string& message) {
    throw Error(ErrorCode::kConfigError, "mixture spec: " + message);
  };
  if (!json.is_object()) fail("must be a JSON object");
  MixtureSpec spec;
  if (!json.contains("components") || !json["components"].is_array()) {
    fail("\"components\" must be an array");
  }
  for (const Json& c : json["components"]) {
    if (!c.is_object() || !c.contains("dataset") || !c["dataset"].is_string()) {
      fail("each component needs a string \"dataset\"");
    }
    MixtureComponent component;
    component.dataset_id = c["dataset"].get<std::string>();
    if (c.contains("count")) {
      if (!c["count"].is_number_unsigned()) fail("\"count\" must be positive");
      component.count = c["count"].get<std::size_t>();
    }
    if (c.contains("path")) {
      if (!c["path"].is_string()) fail("\"path\" must be a string");
      component.path = c["path"].get<std::string>();
    }
    spec.components.push_back(std::move(component));
  }
  const std::string strategy = json.value("strategy", "example-proportional");
  if (strategy == "example-proportional") {
    spec.strategy = MixStrategy::kExampleProportional;
  } else if (strategy == "concatenate") {
    spec.strategy = MixStrategy::kConcatenate;
  } else {
    fail("unknown strategy \"" + strategy + "\"");
  }
  if (json.contains("cap")) {
    if (!json["cap"].is_number_unsigned()) fail("\"cap\" must be positive");
    spec.cap = json["cap"].get<std::size_t>();
  }
  if (json.contains("seed")) {
    if (!json["seed"].is_number_unsigned()) fail("\"seed\" must be unsigned");
    spec.seed = json["seed"].get<std::uint64_t>();
  }
  if (json.contains("draws")) {
    if (!json["draws"].is_number_unsigned()) fail("\"draws\" must be unsigned");
    spec.draws = json["draws"].get<std::size_t>();
  }
  return spec;
}

Json MixtureSpecToJson(const MixtureSpec& spec) {
  Json components = Json::array();
  for (const MixtureComponent& c : spec.components) {
    Json entry = {{"dataset", c.dataset_id}, {"count", c.count}};
    if (!c.path.empty()) entry["path"] = c.path;
    components.push_back(std::move(entry));
  }
  Json out = {{"components", std::move(components)},
              {"strategy", StrategyName(spec.strategy)},
              {"cap", spec.cap},
              {"seed", spec.seed}};
  if (spec.draws) out["draws"] = *spec.draws;
  return out;
}

std::vector<double> MixingRates(const MixtureSpec& spec) {
  std::vector<double> rates;
  double total = 0.0;
  for (const MixtureComponent& c : spec.components) {
    rates.push_back(static_cast<double>(std::min(c.count, spec.cap)));
    total += rates.back();
  }
  for (double& r : rates) r = total > 0.0 ? r / total : 0.0;
  return rates;
}

std::vector<MixDraw> MixExamples(
    const MixtureSpec& spec,
    const std::map<std::string, std::size_t>& stream_sizes) {
  ValidateMixtureSpec(spec);
  std::vector<std::size_t> sizes;
  for (const MixtureComponent& c : spec.components) {
    auto it = stream_sizes.find(c.dataset_id);
    if (it == stream_sizes.end()) {
      throw Error(ErrorCode::kUnknownDataset,
                  "no example stream for dataset " + c.dataset_id);
    }
    if (it->second == 0) {
      throw Error(ErrorCode::kConfigError,
                  "example stream for " + c.dataset_id + " is empty");
    }
    sizes.push_back(it->second);
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<MixDraw> out;

  if (spec.strategy == MixStrategy::kConcatenate) {
    std::vector<MixDraw> all;
    for (std::size_t d = 0; d < sizes.size(); ++d) {
      for (std::size_t i = 0; i < sizes[d]; ++i) all.push_back({d, i});
    }
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), 0);
    SeededShuffle(order, rng);
    const std::size_t n = spec.draws.value_or(all.size());
    for (std::size_t k = 0; k < n; ++k) out.push_back(all[order[k % all.size()]]);
    return out;
  }

  std::vector<double> weights;
  std::size_t capped_total = 0;
  for (const MixtureComponent& c : spec.components) {
    const std::size_t w = std::min(c.count, spec.cap);
    weights.push_back(static_cast<double>(w));
    capped_total += w;
  }
  const double weight_sum = static_cast<double>(capped_total);

  std::vector<std::vector<std::size_t>> orders(sizes.size());
  for (std::size_t d = 0; d < sizes.size(); ++d) {
    orders[d].resize(sizes[d]);
    std::iota(orders[d].begin(), orders[d].end(), 0);
    std::mt19937_64 component_rng(ComponentSeed(spec.seed, d));
    SeededShuffle(orders[d], component_rng);
  }
  std::vector<std::size_t> cursor(sizes.size(), 0);

  const std::size_t n = spec.draws.value_or(capped_total);
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = UniformUnit(rng) * weight_sum;
    std::size_t d = 0;
    double cumulative = weights[0];
    while (u >= cumulative && d + 1 < weights.size()) {
      cumulative += weights[++d];
    }
    out.push_back({d, orders[d][cursor[d]++ % sizes[d]]});
  }
  return out;
}

}  // namespace structkit
