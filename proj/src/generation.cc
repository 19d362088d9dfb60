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

#include "structkit/generation.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "httplib.h"
#include "structkit/error.h"

namespace structkit {
namespace {

using Clock = std::chrono::steady_clock;

std::string ReplaceAll(std::string s, std::string_view from,
                       std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

void Log(const HttpBackendOptions& options, const std::string& line) {
  if (options.log) options.log(line);
}

}  // namespace

void ValidateDecodeConfig(const DecodeConfig& config) {
  if (!(config.length_penalty >= 0.0 && config.length_penalty <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "length_penalty must lie in [0, 1]");
  }
  if (config.max_target_length == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_target_length must be positive");
  }
  if (config.min_target_length > config.max_target_length) {
    throw Error(ErrorCode::kInvalidArgument,
                "min_target_length exceeds max_target_length");
  }
}

Json DecodeConfigToJson(const DecodeConfig& config) {
  return {{"length_penalty", config.length_penalty},
          {"min_target_length", config.min_target_length},
          {"max_target_length", config.max_target_length},
          {"trim_to_first_triple", config.trim_to_first_triple}};
}

DecodeConfig ApplyDecodeOverrides(DecodeConfig base, const Json& overrides) {
  if (!overrides.is_object()) {
    throw Error(ErrorCode::kConfigError, "decode overrides must be an object");
  }
  for (const auto& [key, value] : overrides.items()) {
    if (key == "length_penalty" && value.is_number()) {
      base.length_penalty = value.get<double>();
    } else if (key == "min_target_length" && value.is_number_unsigned()) {
      base.min_target_length = value.get<std::size_t>();
    } else if (key == "max_target_length" && value.is_number_unsigned()) {
      base.max_target_length = value.get<std::size_t>();
    } else if (key == "trim_to_first_triple" && value.is_boolean()) {
      base.trim_to_first_triple = value.get<bool>();
    } else {
      throw Error(ErrorCode::kConfigError,
                  "bad decode override \"" + key + "\"");
    }
  }
  try {
    ValidateDecodeConfig(base);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  return base;
}

DecodeConfig DefaultDecodeConfig(TaskKind task, std::string_view dataset_id,
                                 Family family,
                                 const DatasetRegistry& registry) {
  registry.Get(task, dataset_id);
  DecodeConfig config;
  switch (task) {
    case TaskKind::kNer:
    case TaskKind::kSrl:
    case TaskKind::kEventTrigger:
    case TaskKind::kEventArgument:
    case TaskKind::kCoreference:
      config.length_penalty = 0.8;
      break;
    case TaskKind::kJointEntityRelation:
      config.length_penalty = family == Family::kRelation ? 0.3 : 0.8;
      break;
    case TaskKind::kOie:
      if (dataset_id == "oie2016") {
        config.length_penalty = 0.8;
      } else {
        config.length_penalty = 0.5;
        config.trim_to_first_triple = true;
      }
      break;
    case TaskKind::kRelationClassification:
      config.length_penalty = 0.5;
      break;
    case TaskKind::kFactualProbe:
    case TaskKind::kIntentDetection:
      config.trim_to_first_triple = true;
      break;
    case TaskKind::kDialogueStateTracking:
      break;
  }
  return config;
}

GenerationRequest MakeRequest(const EncodedExample& example,
                              const DecodeConfig& config) {
  GenerationRequest request;
  request.id = example.id;
  request.input = example.input;
  if (!example.hints.priming.empty()) {
    request.input += ' ';
    request.input += example.hints.priming;
  }
  request.config = config;
  return request;
}

std::vector<GenerationResponse> GenerationBackend::GenerateBatch(
    std::span<const GenerationRequest> requests) {
  std::vector<GenerationResponse> out;
  out.reserve(requests.size());
  for (const GenerationRequest& r : requests) out.push_back(Generate(r));
  return out;
}

OracleBackend::OracleBackend(std::span<const EncodedExample> examples) {
  for (const EncodedExample& e : examples) Add(e);
}

void OracleBackend::Add(const EncodedExample& example) {
  gold_.insert_or_assign(example.id, example.gold_output);
}

GenerationResponse OracleBackend::Generate(const GenerationRequest& request) {
  auto it = gold_.find(request.id);
  if (it == gold_.end()) {
    throw Error(ErrorCode::kBackendUnavailable,
                "oracle has no reference for id " + request.id);
  }
  return {request.id, it->second, std::chrono::microseconds(0), id()};
}

std::string ResolveBackendUrl(const std::optional<std::string>& flag_url) {
  if (flag_url && !flag_url->empty()) return *flag_url;
  if (const char* env = std::getenv(kBackendUrlEnv); env && *env) return env;
  throw Error(ErrorCode::kConfigError,
              std::string("no backend url; pass --backend-url or set ") +
                  kBackendUrlEnv);
}

HttpBackend::HttpBackend(HttpBackendOptions options)
    : options_(std::move(options)) {
  constexpr std::string_view kScheme = "http://";
  std::string url = options_.url;
  if (url.rfind(kScheme, 0) != 0) {
    throw Error(ErrorCode::kConfigError,
                "backend url must start with http://: " + url);
  }
  while (!url.empty() && url.back() == '/') url.pop_back();
  const std::size_t slash = url.find('/', kScheme.size());
  base_ = url.substr(0, slash);
  path_ = (slash == std::string::npos ? "" : url.substr(slash)) +
          "/v1/generate";
  if (base_.size() == kScheme.size()) {
    throw Error(ErrorCode::kConfigError, "backend url has no host: " + url);
  }
  if (options_.max_attempts < 1) {
    throw Error(ErrorCode::kConfigError, "max_attempts must be at least 1");
  }
  if (options_.max_in_flight == 0) {
    throw Error(ErrorCode::kConfigError, "max_in_flight must be positive");
  }
}

Json GenerationRequestToWire(const GenerationRequest& request) {
  return {{"input", request.input},
          {"length_penalty", request.config.length_penalty},
          {"min_target_length", request.config.min_target_length},
          {"max_target_length", request.config.max_target_length}};
}

GenerationResponse HttpBackend::Generate(const GenerationRequest& request) {
  const std::string body = GenerationRequestToWire(request).dump();
  httplib::Client client(base_);
  const auto timeout = options_.timeout;
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  auto backoff = options_.initial_backoff;
  std::string last_failure;
  bool last_timed_out = false;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    const auto start = Clock::now();
    auto result = client.Post(path_, body, "application/json");
    const auto elapsed = Clock::now() - start;

    bool retryable = false;
    if (!result) {
      const httplib::Error err = result.error();
      last_timed_out = err == httplib::Error::ConnectionTimeout ||
                       elapsed >= timeout;
      last_failure = last_timed_out ? "timed out"
                                    : "transport error: " +
                                          httplib::to_string(err);
      retryable = true;
    } else if (result->status == 200) {
      Json json = Json::parse(result->body, nullptr, false);
      if (json.is_discarded() || !json.is_object() ||
          !json.contains("output") || !json["output"].is_string()) {
        throw Error(ErrorCode::kBackendUnavailable,
                    "request " + request.id + ": malformed response body");
      }
      return {request.id, json["output"].get<std::string>(),
              std::chrono::duration_cast<std::chrono::microseconds>(elapsed),
              id()};
    } else {
      last_timed_out = false;
      last_failure = "HTTP status " + std::to_string(result->status);
      retryable = result->status >= 500 || result->status == 429;
    }

    if (!retryable) {
      throw Error(ErrorCode::kBackendUnavailable,
                  "request " + request.id + ": " + last_failure);
    }
    if (attempt < options_.max_attempts) {
      Log(options_, "request " + request.id + " attempt " +
                        std::to_string(attempt) + "/" +
                        std::to_string(options_.max_attempts) + " failed (" +
                        last_failure + "), retrying in " +
                        std::to_string(backoff.count()) + "ms");
      std::this_thread::sleep_for(backoff);
      backoff = std::min(
          options_.max_backoff,
          std::chrono::milliseconds(static_cast<long long>(
              std::llround(backoff.count() * options_.backoff_multiplier))));
    }
  }
  const std::string message = "request " + request.id + " failed after " +
                              std::to_string(options_.max_attempts) +
                              " attempts (timeout " +
                              std::to_string(timeout.count()) +
                              "ms): " + last_failure;
  Log(options_, message);
  throw Error(last_timed_out ? ErrorCode::kBackendTimeout
                             : ErrorCode::kBackendUnavailable,
              message);
}

std::vector<GenerationResponse> HttpBackend::GenerateBatch(
    std::span<const GenerationRequest> requests) {
  std::vector<GenerationResponse> out(requests.size());
  std::vector<std::exception_ptr> errors(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < requests.size(); i = next++) {
      try {
        out[i] = Generate(requests[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(options_.max_in_flight, requests.size());
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

const TrueFalseTemplate& DefaultTrueFalseTemplate() {
  static const TrueFalseTemplate kTemplate = {
      "tf-v1",
      "{text}\nQuestion: In the sentence above, is \"{head}\" a {tail}? "
      "Answer yes or no.\nAnswer:",
      "{text}\nQuestion: In the sentence above, is it true that \"{head}\" "
      "{relation} \"{tail}\"? Answer yes or no.\nAnswer:"};
  return kTemplate;
}

TrueFalseTemplate TrueFalseTemplateFromJson(const Json& json) {
  for (const char* key : {"version", "entity", "relation"}) {
    if (!json.is_object() || !json.contains(key) || !json[key].is_string()) {
      throw Error(ErrorCode::kConfigError,
                  std::string("prompt template needs string field ") + key);
    }
  }
  return {json["version"].get<std::string>(), json["entity"].get<std::string>(),
          json["relation"].get<std::string>()};
}

std::string BuildTrueFalsePrompt(const Triple& gold, ProbeKind kind,
                                 std::string_view text,
                                 const TrueFalseTemplate& tmpl) {
  std::string prompt =
      kind == ProbeKind::kEntity ? tmpl.entity : tmpl.relation;
  // {text} goes last so braces inside the sentence are left alone.
  prompt = ReplaceAll(std::move(prompt), "{head}", gold.head);
  prompt = ReplaceAll(std::move(prompt), "{relation}", gold.relation);
  prompt = ReplaceAll(std::move(prompt), "{tail}", gold.tail);
  return ReplaceAll(std::move(prompt), "{text}", text);
}

bool ScoreTrueFalseAnswer(std::string_view answer) {
  std::size_t i = 0;
  while (i < answer.size() &&
         !std::isalpha(static_cast<unsigned char>(answer[i]))) {
    ++i;
  }
  std::string word;
  while (i < answer.size() &&
         std::isalpha(static_cast<unsigned char>(answer[i]))) {
    word += static_cast<char>(
        std::tolower(static_cast<unsigned char>(answer[i++])));
  }
  return word == "yes";
}

}  // namespace structkit
