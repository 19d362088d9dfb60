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

// Run manifests written next to every command output.

#ifndef STRUCTKIT_MANIFEST_H_
#define STRUCTKIT_MANIFEST_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace structkit {

struct RunManifest {
  std::string command;
  // Every effective setting after flag, environment and default resolution.
  nlohmann::json settings = nlohmann::json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  // Summary counts of the run; not part of the fingerprint.
  nlohmann::json results = nlohmann::json::object();

  // sha256 over command, settings, paths and seed. Timestamps are excluded.
  std::string Fingerprint() const;

  // Also records the sha256 of every readable input file.
  nlohmann::json ToJson() const;
};

// Current UTC time as 2026-01-31T12:00:00Z.
std::string UtcTimestamp();

std::string ManifestPath(const std::string& output_path);

// Atomically writes ManifestPath(output_path).
void WriteManifest(const RunManifest& manifest, const std::string& output_path);

}  // namespace structkit

#endif  // STRUCTKIT_MANIFEST_H_
