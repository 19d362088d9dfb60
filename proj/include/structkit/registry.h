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

#ifndef STRUCTKIT_REGISTRY_H_
#define STRUCTKIT_REGISTRY_H_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structkit/task.h"

namespace structkit {

// Everything the codec needs to know about one downstream dataset.
struct DatasetInfo {
  TaskKind task = TaskKind::kNer;
  std::string id;
  // Multi-task input tag, written before the ':' separator, e.g.
  // "ee ace2005 trg".
  std::string tag;
  // Empty vocabularies are open: any label is accepted.
  std::vector<std::string> entity_labels;
  std::vector<std::string> relation_labels;
  std::vector<std::string> intent_labels;
  std::vector<std::string> slots;
};

// Dataset registry keyed by (task, dataset id). Built once, then read-only;
// new datasets register through JSON rather than code.
class DatasetRegistry {
 public:
  DatasetRegistry() = default;

  // The datasets of the original evaluation suite.
  static const DatasetRegistry& Builtin();

  // Throws Error(kConfigError) on malformed entries.
  static DatasetRegistry FromJson(const Json& json);
  static DatasetRegistry FromFile(const std::string& path);

  // Later registrations replace earlier ones with the same key.
  void Register(DatasetInfo info);
  void Merge(const DatasetRegistry& other);

  // Throws Error(kUnknownDataset).
  const DatasetInfo& Get(TaskKind task, std::string_view dataset_id) const;
  bool Contains(TaskKind task, std::string_view dataset_id) const;

  std::vector<const DatasetInfo*> All() const;

  Json ToJson() const;

 private:
  std::map<std::pair<TaskKind, std::string>, DatasetInfo> datasets_;
};

}  // namespace structkit

#endif  // STRUCTKIT_REGISTRY_H_
