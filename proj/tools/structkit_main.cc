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

// structkit command-line tool. Run `structkit --help` for the command list.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "structkit/codec.h"
#include "structkit/corpus.h"
#include "structkit/error.h"
#include "structkit/evaluate.h"
#include "structkit/generation.h"
#include "structkit/ingest.h"
#include "structkit/io.h"
#include "structkit/manifest.h"
#include "structkit/registry.h"
#include "structkit/schema_align.h"
#include "structkit/task.h"

namespace {

namespace sk = structkit;
using sk::ErrorCode;
using sk::Json;

// Runs fn(i) for i in [0, n) on up to `threads` workers. The exception of
// the lowest failing index is rethrown.
template <typename Fn>
void ParallelFor(std::size_t n, std::size_t threads, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t count = std::max<std::size_t>(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Rethrows an error raised while handling line `line` of `path` with the
// location attached, like ForEachJsonLine does.
[[noreturn]] void RethrowAt(const sk::Error& e, const std::string& path,
                            std::size_t line) {
  if (e.code() == ErrorCode::kParseError ||
      e.code() == ErrorCode::kInvalidArgument) {
    throw sk::ParseError(path, line, e.what());
  }
  throw sk::Error(e.code(), path + ":" + std::to_string(line) + ": " + e.what());
}

Json ReadJsonFile(const std::string& path) {
  Json json = Json::parse(sk::ReadFile(path), nullptr, false);
  if (json.is_discarded()) {
    throw sk::Error(ErrorCode::kConfigError, path + ": invalid JSON");
  }
  return json;
}

// Inline JSON if the argument starts with '{', otherwise a file path.
Json JsonArgument(const std::string& value) {
  if (!value.empty() && value.front() == '{') {
    Json json = Json::parse(value, nullptr, false);
    if (json.is_discarded()) {
      throw sk::Error(ErrorCode::kConfigError, "invalid inline JSON");
    }
    return json;
  }
  return ReadJsonFile(value);
}

struct Context {
  std::string registry_path;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());

  sk::DatasetRegistry Registry() const {
    sk::DatasetRegistry registry = sk::DatasetRegistry::Builtin();
    if (!registry_path.empty()) {
      registry.Merge(sk::DatasetRegistry::FromFile(registry_path));
    }
    return registry;
  }
};

sk::RunManifest StartManifest(std::string command) {
  sk::RunManifest m;
  m.command = std::move(command);
  m.started_at = sk::UtcTimestamp();
  return m;
}

void Finish(sk::RunManifest& manifest, const std::string& output) {
  manifest.finished_at = sk::UtcTimestamp();
  sk::WriteManifest(manifest, output);
  std::cout << Json{{"command", manifest.command},
                    {"output", output},
                    {"fingerprint", manifest.Fingerprint()},
                    {"results", manifest.results}}
                   .dump()
            << "\n";
}

std::vector<sk::EncodedExample> ReadExamples(const std::string& path) {
  std::vector<sk::EncodedExample> out;
  sk::ForEachJsonLine(path, [&](const Json& json, std::size_t) {
    out.push_back(sk::ExampleFromJson(json));
  });
  return out;
}

// ---------------------------------------------------------------- convert

struct ConvertArgs {
  std::string input;
  std::string output;
  std::string task;
  std::string dataset;
  std::string mode = "multi-task";
  bool augment = false;
  std::size_t chunk_tokens = 0;
};

void RunConvert(const ConvertArgs& args, const Context& ctx) {
  sk::RunManifest manifest = StartManifest("convert");
  const sk::DatasetRegistry registry = ctx.Registry();
  sk::EncodeMode mode;
  mode.setting = args.mode == "zero-shot" ? sk::EncodeMode::Setting::kZeroShot
                                          : sk::EncodeMode::Setting::kMultiTask;
  mode.augmentation = args.augment;
  std::optional<sk::TaskKind> task;
  if (!args.task.empty()) task = sk::ParseTaskKind(args.task);

  struct Item {
    sk::TaskRecord record;
    std::size_t line;
  };
  std::vector<Item> items;
  sk::ForEachJsonLine(args.input, [&](const Json& json, std::size_t line) {
    sk::TaskRecord record = sk::RecordFromJson(json);
    if (task && record.task != *task) {
      throw sk::Error(ErrorCode::kInvalidArgument,
                      "record task " + std::string(TaskKindName(record.task)) +
                          " does not match --task " + args.task);
    }
    if (!args.dataset.empty() && record.dataset_id != args.dataset) {
      throw sk::Error(ErrorCode::kInvalidArgument,
                      "record dataset " + record.dataset_id +
                          " does not match --dataset " + args.dataset);
    }
    registry.Get(record.task, record.dataset_id);
    if (args.chunk_tokens > 0 && record.task == sk::TaskKind::kCoreference) {
      for (auto& chunk : sk::ChunkDocument(record, args.chunk_tokens)) {
        items.push_back({std::move(chunk), line});
      }
    } else {
      items.push_back({std::move(record), line});
    }
  });

  std::vector<std::vector<sk::EncodedExample>> encoded(items.size());
  ParallelFor(items.size(), ctx.threads, [&](std::size_t i) {
    try {
      encoded[i] = sk::EncodeRecord(
          items[i].record, mode, registry,
          sk::RecordKey(items[i].record.task, items[i].record.dataset_id, i));
    } catch (const sk::Error& e) {
      RethrowAt(e, args.input, items[i].line);
    }
  });

  std::string out;
  std::size_t count = 0;
  for (const auto& group : encoded) {
    for (const auto& example : group) {
      out += sk::ExampleToJson(example).dump();
      out += '\n';
      ++count;
    }
  }
  sk::WriteFileAtomic(args.output, out);

  manifest.settings = {{"task", args.task},       {"dataset", args.dataset},
                       {"mode", args.mode},       {"augment", args.augment},
                       {"chunk_tokens", args.chunk_tokens},
                       {"registry", ctx.registry_path}};
  manifest.inputs = {args.input};
  manifest.outputs = {args.output};
  manifest.results = {{"records", items.size()}, {"examples", count}};
  Finish(manifest, args.output);
}

// --------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string examples;
  std::string report;
  std::string generations;
  std::string backend;
  std::optional<std::string> backend_url;
  std::string alignment;
  std::string decode_config;
  std::string save_generations;
  bool case_fallback = false;
  int max_attempts = 4;
  long timeout_ms = 30000;
  long backoff_ms = 200;
  std::size_t max_in_flight = 8;
};

void RunEvaluate(const EvaluateArgs& args, const Context& ctx) {
  sk::RunManifest manifest = StartManifest("evaluate");
  const sk::DatasetRegistry registry = ctx.Registry();
  const auto examples = ReadExamples(args.examples);

  sk::EvalOptions options;
  options.registry = &registry;
  options.grounding.case_insensitive_fallback = args.case_fallback;
  if (!args.decode_config.empty()) {
    options.decode_overrides = JsonArgument(args.decode_config);
  }
  if (!args.alignment.empty()) {
    options.alignment = sk::LoadAlignment(args.alignment);
  }

  Json backend_settings = nullptr;
  std::vector<sk::Generation> generations;
  if (!args.generations.empty()) {
    sk::ForEachJsonLine(args.generations, [&](const Json& json, std::size_t) {
      if (!json.is_object() || !json.contains("id") ||
          !json.contains("output") || !json["id"].is_string() ||
          !json["output"].is_string()) {
        throw sk::Error(ErrorCode::kParseError,
                        "generation lines need string fields id and output");
      }
      generations.push_back(
          {json["id"].get<std::string>(), json["output"].get<std::string>()});
    });
    manifest.inputs.push_back(args.generations);
  } else if (args.backend == "oracle") {
    sk::OracleBackend backend(examples);
    generations = sk::RunGeneration(examples, backend, options);
    backend_settings = {{"backend", "oracle"}};
  } else if (args.backend == "http") {
    sk::HttpBackendOptions http;
    http.url = sk::ResolveBackendUrl(args.backend_url);
    http.max_attempts = args.max_attempts;
    http.timeout = std::chrono::milliseconds(args.timeout_ms);
    http.initial_backoff = std::chrono::milliseconds(args.backoff_ms);
    http.max_in_flight = args.max_in_flight;
    http.log = [](std::string_view line) {
      std::cerr << "structkit: " << line << "\n";
    };
    sk::HttpBackend backend(http);
    generations = sk::RunGeneration(examples, backend, options);
    backend_settings = {{"backend", "http"},
                        {"url", http.url},
                        {"max_attempts", http.max_attempts},
                        {"timeout_ms", args.timeout_ms},
                        {"backoff_ms", args.backoff_ms},
                        {"max_in_flight", http.max_in_flight}};
  } else {
    throw sk::Error(ErrorCode::kInvalidArgument,
                    "pass --generations or --backend oracle|http");
  }

  if (!args.save_generations.empty()) {
    std::string out;
    for (const auto& g : generations) {
      out += Json{{"id", g.id}, {"output", g.output}}.dump();
      out += '\n';
    }
    sk::WriteFileAtomic(args.save_generations, out);
    manifest.outputs.push_back(args.save_generations);
  }

  const auto outputs = sk::JoinGenerations(examples, generations);
  const sk::EvalReport report = sk::Evaluate(examples, outputs, options);
  sk::WriteFileAtomic(args.report, sk::ReportToJson(report).dump(2) + "\n");

  manifest.settings = {{"evaluation", report.config},
                       {"backend", backend_settings},
                       {"registry", ctx.registry_path}};
  manifest.inputs.insert(manifest.inputs.begin(), args.examples);
  if (!args.alignment.empty()) manifest.inputs.push_back(args.alignment);
  manifest.outputs.push_back(args.report);
  Json summary = Json::object();
  for (const auto& [key, r] : report.tasks) {
    for (const auto& [name, prf] : r.metrics) summary[key][name] = prf.f1;
  }
  manifest.results = {{"examples", examples.size()}, {"f1", summary}};
  Finish(manifest, args.report);
}

// -------------------------------------------------------------------- mix

struct MixArgs {
  std::string spec;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> draws;
};

void RunMix(const MixArgs& args, const Context&) {
  sk::RunManifest manifest = StartManifest("mix");
  sk::MixtureSpec spec = sk::MixtureSpecFromJson(ReadJsonFile(args.spec));
  if (args.seed) spec.seed = *args.seed;
  if (args.draws) spec.draws = *args.draws;

  const std::filesystem::path base =
      std::filesystem::path(args.spec).parent_path();
  std::vector<std::vector<std::string>> streams;
  std::map<std::string, std::size_t> sizes;
  for (sk::MixtureComponent& c : spec.components) {
    if (c.path.empty()) {
      throw sk::Error(ErrorCode::kConfigError,
                      "component " + c.dataset_id + " has no path");
    }
    std::filesystem::path path(c.path);
    if (path.is_relative()) path = base / path;
    std::vector<std::string> lines;
    sk::ForEachJsonLine(path.string(), [&](const Json& json, std::size_t) {
      lines.push_back(json.dump());
    });
    if (c.count == 0) c.count = lines.size();
    sizes[c.dataset_id] = lines.size();
    manifest.inputs.push_back(path.string());
    streams.push_back(std::move(lines));
  }

  const auto draws = sk::MixExamples(spec, sizes);
  std::string out;
  std::vector<std::size_t> per_component(spec.components.size(), 0);
  for (const sk::MixDraw& d : draws) {
    out += streams[d.component][d.example];
    out += '\n';
    ++per_component[d.component];
  }
  sk::WriteFileAtomic(args.output, out);

  manifest.settings = sk::MixtureSpecToJson(spec);
  manifest.seed = spec.seed;
  manifest.inputs.insert(manifest.inputs.begin(), args.spec);
  manifest.outputs = {args.output};
  Json counts = Json::object();
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    counts[spec.components[i].dataset_id] = per_component[i];
  }
  manifest.results = {{"draws", draws.size()}, {"per_dataset", counts}};
  Finish(manifest, args.output);
}

// ------------------------------------------------------------------ align

struct AlignBuildArgs {
  std::string pretrain;
  std::string downstream;
  std::string task;
  std::string dataset;
  std::string output;
};

void RunAlignBuild(const AlignBuildArgs& args, const Context& ctx) {
  sk::RunManifest manifest = StartManifest("align build");
  const sk::DatasetRegistry registry = ctx.Registry();
  const sk::TaskKind task = sk::ParseTaskKind(args.task);
  const sk::DatasetInfo& info = registry.Get(task, args.dataset);

  std::vector<sk::PretrainExample> pretrain;
  sk::ForEachJsonLine(args.pretrain, [&](const Json& json, std::size_t) {
    pretrain.push_back(sk::PretrainFromJson(json));
  });
  std::vector<sk::TaskRecord> records;
  sk::ForEachJsonLine(args.downstream, [&](const Json& json, std::size_t) {
    sk::TaskRecord r = sk::RecordFromJson(json);
    if (r.task == task && r.dataset_id == args.dataset) {
      records.push_back(std::move(r));
    }
  });
  const sk::SchemaAlignment alignment =
      sk::BuildCooccurrenceAlignment(pretrain, records, info);
  sk::ValidateAlignment(alignment, info);
  sk::SaveAlignment(alignment, args.output);

  manifest.settings = {{"task", args.task},
                       {"dataset", args.dataset},
                       {"registry", ctx.registry_path}};
  manifest.inputs = {args.pretrain, args.downstream};
  manifest.outputs = {args.output};
  manifest.results = {{"entity_entries", alignment.entity_type_map.size()},
                      {"relation_entries", alignment.relation_map.size()}};
  Finish(manifest, args.output);
}

struct AlignMergeArgs {
  std::vector<std::string> layers;
  std::string output;
  std::string task;
  std::string dataset;
};

void RunAlignMerge(const AlignMergeArgs& args, const Context& ctx) {
  sk::RunManifest manifest = StartManifest("align merge");
  std::vector<sk::SchemaAlignment> layers;
  for (const std::string& path : args.layers) {
    layers.push_back(sk::LoadAlignment(path));
  }
  sk::SchemaAlignment merged = sk::MergeAlignments(layers);
  if (!args.dataset.empty()) merged.dataset_id = args.dataset;
  if (!args.task.empty()) {
    const sk::DatasetRegistry registry = ctx.Registry();
    sk::ValidateAlignment(
        merged, registry.Get(sk::ParseTaskKind(args.task), merged.dataset_id));
  }
  sk::SaveAlignment(merged, args.output);

  manifest.settings = {{"task", args.task}, {"dataset", args.dataset}};
  manifest.inputs = args.layers;
  manifest.outputs = {args.output};
  std::size_t curated = 0;
  for (auto kind : {sk::AlignKind::kEntity, sk::AlignKind::kRelation}) {
    for (const auto& [src, entry] : merged.Map(kind)) curated += entry.curated;
  }
  manifest.results = {{"entries", merged.size()}, {"curated", curated}};
  Finish(manifest, args.output);
}

// ----------------------------------------------------------------- ingest

struct IngestArgs {
  std::string format;
  std::string input;
  std::string output;
  std::string dataset;
};

void RunIngest(const IngestArgs& args, const Context&) {
  sk::RunManifest manifest = StartManifest("ingest " + args.format);
  const sk::LabelMap labels = sk::BuiltinLabelMap(args.dataset);
  std::vector<sk::TaskRecord> records;
  if (args.format == "conll") {
    records = sk::IngestConllNer(sk::ReadFile(args.input), args.dataset,
                                 labels, args.input);
  } else {
    try {
      records = sk::IngestSpertJson(ReadJsonFile(args.input), args.dataset,
                                    labels);
    } catch (const sk::Error& e) {
      throw sk::Error(e.code(), args.input + ": " + e.what());
    }
  }
  std::string out;
  for (const auto& r : records) {
    sk::ValidateRecord(r);
    out += sk::RecordToJson(r).dump();
    out += '\n';
  }
  sk::WriteFileAtomic(args.output, out);

  manifest.settings = {{"format", args.format}, {"dataset", args.dataset}};
  manifest.inputs = {args.input};
  manifest.outputs = {args.output};
  manifest.results = {{"records", records.size()}};
  Finish(manifest, args.output);
}

// --------------------------------------------------------------- pretrain

struct PretrainArgs {
  std::string input;
  std::string output;
  std::string family = "all";
  std::vector<std::string> exclude;
};

void RunPretrain(const PretrainArgs& args, const Context&) {
  sk::RunManifest manifest = StartManifest("pretrain");
  std::vector<sk::PretrainExample> corpus;
  sk::ForEachJsonLine(args.input, [&](const Json& json, std::size_t) {
    corpus.push_back(sk::PretrainFromJson(json));
  });
  std::set<std::string> test_texts;
  for (const std::string& path : args.exclude) {
    sk::ForEachJsonLine(path, [&](const Json& json, std::size_t) {
      test_texts.insert(sk::RecordFromJson(json).text);
    });
  }
  const sk::LeakageResult filtered = sk::FilterLeakage(corpus, test_texts);

  const auto& families = sk::BuiltinPretrainFamilies();
  std::string out;
  std::size_t count = 0;
  for (const sk::PretrainExample& example : filtered.kept) {
    std::vector<sk::Family> wanted;
    if (args.family != "all") {
      wanted = {sk::ParseFamily(args.family)};
    } else if (auto it = families.find(
                   sk::NormalizeSurface(example.source, sk::CasePolicy::kLower));
               it != families.end()) {
      wanted = it->second;
    } else if (example.family) {
      wanted = {*example.family};
    } else {
      throw sk::Error(ErrorCode::kFamilyMismatch,
                      "corpus \"" + example.source +
                          "\" has no registered families");
    }
    for (sk::Family f : wanted) {
      out += sk::ExampleToJson(sk::AttachPretrainingPrefix(example, f)).dump();
      out += '\n';
      ++count;
    }
  }
  sk::WriteFileAtomic(args.output, out);

  manifest.settings = {{"family", args.family}};
  manifest.inputs = {args.input};
  manifest.inputs.insert(manifest.inputs.end(), args.exclude.begin(),
                         args.exclude.end());
  manifest.outputs = {args.output};
  manifest.results = {{"kept", filtered.kept.size()},
                      {"removed_for_leakage", filtered.removed},
                      {"examples", count}};
  Finish(manifest, args.output);
}

int ReportError(std::string_view code, const std::string& message, int exit) {
  std::cerr << Json{{"error", {{"code", code}, {"message", message}}}}.dump()
            << "\n";
  return exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text-to-triple structure prediction toolkit"};
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--registry", ctx.registry_path,
                 "JSON dataset registry merged over the built-in one");
  app.add_option("--threads", ctx.threads, "worker threads")
      ->check(CLI::PositiveNumber);

  ConvertArgs convert;
  auto* c = app.add_subcommand("convert", "encode task records as examples");
  c->add_option("input", convert.input, "task records (JSONL)")->required();
  c->add_option("output", convert.output, "encoded examples (JSONL)")
      ->required();
  c->add_option("--task", convert.task, "require this task for every record");
  c->add_option("--dataset", convert.dataset,
                "require this dataset for every record");
  c->add_option("--mode", convert.mode, "zero-shot or multi-task")
      ->check(CLI::IsMember({"zero-shot", "multi-task"}));
  c->add_flag("--augment", convert.augment,
              "wrap entity mentions in brackets (multi-task only)");
  c->add_option("--chunk-tokens", convert.chunk_tokens,
                "split coreference documents into windows of N tokens");
  c->callback([&] { RunConvert(convert, ctx); });

  EvaluateArgs evaluate;
  auto* e = app.add_subcommand("evaluate", "score generations");
  e->add_option("examples", evaluate.examples, "encoded examples (JSONL)")
      ->required();
  e->add_option("--report", evaluate.report, "report path (JSON)")->required();
  auto* gen = e->add_option("--generations", evaluate.generations,
                            "generations (JSONL of {id, output})");
  e->add_option("--backend", evaluate.backend, "oracle or http")
      ->check(CLI::IsMember({"oracle", "http"}))
      ->excludes(gen);
  e->add_option("--backend-url", evaluate.backend_url,
                std::string("generation endpoint; defaults to $") +
                    sk::kBackendUrlEnv);
  e->add_option("--alignment", evaluate.alignment,
                "schema alignment applied to zero-shot outputs");
  e->add_option("--decode-config", evaluate.decode_config,
                "decode overrides: inline JSON or a JSON file");
  e->add_option("--save-generations", evaluate.save_generations,
                "write backend outputs here");
  e->add_flag("--case-fallback", evaluate.case_fallback,
              "ground mentions case-insensitively when exact matching fails");
  e->add_option("--max-attempts", evaluate.max_attempts)
      ->check(CLI::PositiveNumber);
  e->add_option("--timeout-ms", evaluate.timeout_ms)
      ->check(CLI::PositiveNumber);
  e->add_option("--backoff-ms", evaluate.backoff_ms)
      ->check(CLI::NonNegativeNumber);
  e->add_option("--max-in-flight", evaluate.max_in_flight)
      ->check(CLI::PositiveNumber);
  e->callback([&] { RunEvaluate(evaluate, ctx); });

  MixArgs mix;
  auto* m = app.add_subcommand("mix", "sample a multi-dataset mixture");
  m->add_option("spec", mix.spec, "mixture spec (JSON)")->required();
  m->add_option("output", mix.output, "mixed examples (JSONL)")->required();
  m->add_option("--seed", mix.seed, "overrides the spec seed");
  m->add_option("--draws", mix.draws, "overrides the number of draws");
  m->callback([&] { RunMix(mix, ctx); });

  auto* a = app.add_subcommand("align", "schema alignment files");
  a->require_subcommand(1);
  AlignBuildArgs build;
  auto* ab = a->add_subcommand("build", "compute an alignment by PMI");
  ab->add_option("--pretrain", build.pretrain, "pretraining corpus (JSONL)")
      ->required();
  ab->add_option("--downstream", build.downstream, "task records (JSONL)")
      ->required();
  ab->add_option("--task", build.task)->required();
  ab->add_option("--dataset", build.dataset)->required();
  ab->add_option("output", build.output)->required();
  ab->callback([&] { RunAlignBuild(build, ctx); });
  AlignMergeArgs merge;
  auto* am = a->add_subcommand("merge", "merge alignment layers in order");
  am->add_option("layers", merge.layers, "alignment files, later wins")
      ->required();
  am->add_option("--out", merge.output)->required();
  am->add_option("--task", merge.task, "validate against this task");
  am->add_option("--dataset", merge.dataset, "dataset id of the result");
  am->callback([&] { RunAlignMerge(merge, ctx); });

  IngestArgs ingest;
  auto* in = app.add_subcommand("ingest", "convert upstream formats");
  in->add_option("format", ingest.format, "conll or spert")
      ->required()
      ->check(CLI::IsMember({"conll", "spert"}));
  in->add_option("input", ingest.input)->required();
  in->add_option("output", ingest.output)->required();
  in->add_option("--dataset", ingest.dataset)->required();
  in->callback([&] { RunIngest(ingest, ctx); });

  PretrainArgs pretrain;
  auto* p = app.add_subcommand(
      "pretrain", "prefix a pretraining corpus, removing test sentences");
  p->add_option("input", pretrain.input, "pretraining corpus (JSONL)")
      ->required();
  p->add_option("output", pretrain.output, "encoded examples (JSONL)")
      ->required();
  p->add_option("--family", pretrain.family, "entity, relation, triple or all")
      ->check(CLI::IsMember({"entity", "relation", "triple", "all"}));
  p->add_option("--exclude", pretrain.exclude,
                "task records whose sentences must not appear");
  p->callback([&] { RunPretrain(pretrain, ctx); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    return ReportError(sk::ErrorCodeName(ErrorCode::kInvalidArgument),
                       err.what(), 2);
  } catch (const sk::Error& err) {
    return ReportError(sk::ErrorCodeName(err.code()), err.what(), 1);
  } catch (const Json::exception& err) {
    return ReportError(sk::ErrorCodeName(ErrorCode::kParseError), err.what(),
                       1);
  } catch (const std::exception& err) {
    return ReportError("Internal", err.what(), 1);
  }
  return 0;
}
