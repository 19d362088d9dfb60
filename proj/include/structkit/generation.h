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

// Text-in/text-out generation backends and per-task decode settings.

#ifndef STRUCTKIT_GENERATION_H_
#define STRUCTKIT_GENERATION_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structkit/registry.h"
#include "structkit/task.h"
#include "structkit/triple.h"

namespace structkit {

inline constexpr std::size_t kDefaultMaxTargetLength = 512;

struct DecodeConfig {
  double length_penalty = 1.0;
  std::size_t min_target_length = 0;
  std::size_t max_target_length = kDefaultMaxTargetLength;
  bool trim_to_first_triple = false;

  bool operator==(const DecodeConfig&) const = default;
};

// Throws kInvalidArgument when a field is out of range.
void ValidateDecodeConfig(const DecodeConfig& config);

Json DecodeConfigToJson(const DecodeConfig& config);

// Applies the fields present in `overrides` on top of `base`. Unknown keys and
// wrongly typed values throw kConfigError.
DecodeConfig ApplyDecodeOverrides(DecodeConfig base, const Json& overrides);

// Decode settings for one (task, dataset, family) pass. JER runs two passes
// with different length penalties, hence the family argument.
DecodeConfig DefaultDecodeConfig(
    TaskKind task, std::string_view dataset_id, Family family,
    const DatasetRegistry& registry = DatasetRegistry::Builtin());

struct GenerationRequest {
  std::string id;
  std::string input;
  DecodeConfig config;
};

struct GenerationResponse {
  std::string id;
  std::string output;
  std::chrono::microseconds latency{0};
  std::string backend_id;
};

// The request input is the encoded input followed by any priming, so the
// backend continues the partial triple.
GenerationRequest MakeRequest(const EncodedExample& example,
                              const DecodeConfig& config);

class GenerationBackend {
 public:
  virtual ~GenerationBackend() = default;

  virtual std::string id() const = 0;
  virtual GenerationResponse Generate(const GenerationRequest& request) = 0;

  // Responses come back in request order. The default runs sequentially.
  virtual std::vector<GenerationResponse> GenerateBatch(
      std::span<const GenerationRequest> requests);
};

// Returns the gold output of the example whose id matches the request.
class OracleBackend : public GenerationBackend {
 public:
  OracleBackend() = default;
  explicit OracleBackend(std::span<const EncodedExample> examples);

  void Add(const EncodedExample& example);

  std::string id() const override { return "oracle"; }
  GenerationResponse Generate(const GenerationRequest& request) override;

 private:
  std::map<std::string, std::string> gold_;
};

inline constexpr const char* kBackendUrlEnv = "STRUCTKIT_BACKEND_URL";

struct HttpBackendOptions {
  std::string url;  // http://host:port[/prefix]
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{200};
  double backoff_multiplier = 2.0;
  std::chrono::milliseconds max_backoff{5000};
  std::chrono::milliseconds timeout{30000};
  std::size_t max_in_flight = 8;
  // Receives one line per retry and per final failure. May be empty.
  std::function<void(std::string_view)> log;
};

// Flag value if set, otherwise the environment variable. Throws kConfigError
// when neither is available.
std::string ResolveBackendUrl(const std::optional<std::string>& flag_url);

// POSTs to <url>/v1/generate. 5xx, 429, connection failures and timeouts are
// retried with exponential backoff; once attempts run out a timeout surfaces
// as kBackendTimeout and everything else as kBackendUnavailable. Other
// non-200 statuses fail immediately with kBackendUnavailable.
class HttpBackend : public GenerationBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options);

  std::string id() const override { return "http:" + options_.url; }
  GenerationResponse Generate(const GenerationRequest& request) override;

  // Runs up to max_in_flight requests concurrently. If any request fails the
  // first failure in request order is rethrown after all workers finish.
  std::vector<GenerationResponse> GenerateBatch(
      std::span<const GenerationRequest> requests) override;

  const HttpBackendOptions& options() const { return options_; }

 private:
  HttpBackendOptions options_;
  std::string base_;  // scheme://host:port
  std::string path_;  // prefix + /v1/generate
};

Json GenerationRequestToWire(const GenerationRequest& request);

// Prompts for the yes/no comparison protocol. Templates use the placeholders
// {text}, {head}, {relation} and {tail}.
enum class ProbeKind { kEntity, kRelation };

struct TrueFalseTemplate {
  std::string version;
  std::string entity;
  std::string relation;
};

const TrueFalseTemplate& DefaultTrueFalseTemplate();

// Reads {"version", "entity", "relation"}; throws kConfigError.
TrueFalseTemplate TrueFalseTemplateFromJson(const Json& json);

std::string BuildTrueFalsePrompt(
    const Triple& gold, ProbeKind kind, std::string_view text,
    const TrueFalseTemplate& tmpl = DefaultTrueFalseTemplate());

// True iff the first word of the answer, lowercased, is "yes".
bool ScoreTrueFalseAnswer(std::string_view answer);

}  // namespace structkit

#endif  // STRUCTKIT_GENERATION_H_
