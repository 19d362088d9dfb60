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

// Corpus preparation: pretraining prefixes, test-set leakage removal,
// coreference document chunking and seeded multi-dataset mixing.

#ifndef STRUCTKIT_CORPUS_H_
#define STRUCTKIT_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "structkit/task.h"

namespace structkit {

struct LeakageResult {
  std::vector<PretrainExample> kept;
  std::size_t removed = 0;
};

// Drops every example whose normalized text equals a test sentence.
LeakageResult FilterLeakage(std::span<const PretrainExample> pretrain,
                            const std::set<std::string>& test_texts);

inline constexpr std::size_t kDefaultChunkTokens = 512;

// Splits a coreference document into consecutive chunks of at most
// `max_tokens` whitespace-delimited tokens. Mentions are rebased onto their
// chunk; mentions crossing a chunk boundary are dropped, and so are clusters
// left with fewer than two mentions in a chunk.
std::vector<TaskRecord> ChunkDocument(
    const TaskRecord& document, std::size_t max_tokens = kDefaultChunkTokens);

// Pretraining tasks each corpus supports, keyed by lowercased corpus name.
using PretrainFamilies = std::map<std::string, std::vector<Family>>;

const PretrainFamilies& BuiltinPretrainFamilies();

// input = "<family>: <text>", gold_output = serialized triples. Throws
// Error(kFamilyMismatch) if the corpus is not registered for `family`.
EncodedExample AttachPretrainingPrefix(
    const PretrainExample& example, Family family,
    const PretrainFamilies& families = BuiltinPretrainFamilies());

enum class MixStrategy { kConcatenate, kExampleProportional };

inline constexpr std::size_t kDefaultMixingCap = 10000;

struct MixtureComponent {
  std::string dataset_id;
  std::size_t count = 0;  // dataset size used for the mixing rate
  std::string path;       // JSON Lines file, for file-based runs
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;
  MixStrategy strategy = MixStrategy::kExampleProportional;
  std::size_t cap = kDefaultMixingCap;
  std::uint64_t seed = 0;
  // Number of examples to draw. Defaults to the sum of capped sizes
  // (proportional) or of all sizes (concatenate).
  std::optional<std::size_t> draws;
};

// Throws Error(kConfigError) on invalid specs.
void ValidateMixtureSpec(const MixtureSpec& spec);
MixtureSpec MixtureSpecFromJson(const Json& json);
Json MixtureSpecToJson(const MixtureSpec& spec);

struct MixDraw {
  std::size_t component = 0;  // index into spec.components
  std::size_t example = 0;    // index into that dataset's stream
};

// Example-proportional mixing samples component d with probability
// min(n_d, cap) / sum_i min(n_i, cap) and cycles through each dataset in a
// seeded shuffled order. Concatenation emits every example once in a seeded
// shuffled order. `stream_sizes` gives the available examples per dataset.
// Throws Error(kUnknownDataset) if a component has no stream.
std::vector<MixDraw> MixExamples(
    const MixtureSpec& spec,
    const std::map<std::string, std::size_t>& stream_sizes);

// Sampling probabilities of the proportional strategy, per component.
std::vector<double> MixingRates(const MixtureSpec& spec);

// Platform-independent helpers on top of std::mt19937_64.
double UniformUnit(std::mt19937_64& rng);  // [0, 1)
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n);  // [0, n)
void SeededShuffle(std::vector<std::size_t>& values, std::mt19937_64& rng);

}  // namespace structkit

#endif  // STRUCTKIT_CORPUS_H_
