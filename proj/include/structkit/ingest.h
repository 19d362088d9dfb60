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

// Converters from common upstream annotation formats into TaskRecords.
// Tokens are joined with single spaces to form the record text.

#ifndef STRUCTKIT_INGEST_H_
#define STRUCTKIT_INGEST_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "structkit/task.h"

namespace structkit {

// Upstream label -> natural-language label. Labels missing from a map are
// lowercased with '_' and '-' turned into spaces.
struct LabelMap {
  std::map<std::string, std::string> entity;
  std::map<std::string, std::string> relation;
};

// Maps for conll03, conll04 and ade; empty maps for anything else.
LabelMap BuiltinLabelMap(std::string_view dataset_id);

std::string MapLabel(const std::map<std::string, std::string>& map,
                     std::string_view label);

// CoNLL column format: one token per line with the tag in the last column,
// blank lines between sentences, -DOCSTART- lines ignored. Accepts IOB1,
// IOB2 and BIOES tags. Throws ParseError naming `file` and the line.
std::vector<TaskRecord> IngestConllNer(std::string_view content,
                                       std::string_view dataset_id,
                                       const LabelMap& labels,
                                       const std::string& file = "<conll>");

// JSON array of {"tokens", "entities": [{"type", "start", "end"}],
// "relations": [{"type", "head", "tail"}]} with token offsets, end
// exclusive. Throws Error(kParseError).
std::vector<TaskRecord> IngestSpertJson(const Json& json,
                                        std::string_view dataset_id,
                                        const LabelMap& labels);

}  // namespace structkit

#endif  // STRUCTKIT_INGEST_H_
