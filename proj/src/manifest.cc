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

#include "structkit/manifest.h"

#include <chrono>
#include <ctime>

#include "structkit/error.h"
#include "structkit/hash.h"
#include "structkit/io.h"

namespace structkit {
namespace {

nlohmann::json FingerprintFields(const RunManifest& m) {
  return {{"command", m.command},
          {"settings", m.settings},
          {"inputs", m.inputs},
          {"outputs", m.outputs},
          {"seed", m.seed}};
}

}  // namespace

std::string RunManifest::Fingerprint() const {
  return Sha256Hex(FingerprintFields(*this).dump());
}

nlohmann::json RunManifest::ToJson() const {
  nlohmann::json out = FingerprintFields(*this);
  nlohmann::json hashes = nlohmann::json::object();
  for (const std::string& path : inputs) {
    try {
      hashes[path] = Sha256Hex(ReadFile(path));
    } catch (const Error&) {
      hashes[path] = nullptr;
    }
  }
  out["input_sha256"] = std::move(hashes);
  out["fingerprint"] = Fingerprint();
  out["started_at"] = started_at;
  out["finished_at"] = finished_at;
  out["results"] = results;
  return out;
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::string ManifestPath(const std::string& output_path) {
  return output_path + ".manifest.json";
}

void WriteManifest(const RunManifest& manifest,
                   const std::string& output_path) {
  WriteFileAtomic(ManifestPath(output_path), manifest.ToJson().dump(2) + "\n");
}

}  // namespace structkit
