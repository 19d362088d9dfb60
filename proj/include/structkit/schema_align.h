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

// Alignment between the open labels a structure-pretrained model emits
// ("human", "located in the administrative territorial entity") and the
// closed label vocabulary of one downstream dataset.
//
// File format, one entry per line, tab separated:
//
//   kind  source_label  target_label  score  curated
//
// where kind is "entity" or "relation" and curated is 0 or 1. Lines
// starting with '#' are comments; "# dataset<TAB><id>" names the dataset.

#ifndef STRUCTKIT_SCHEMA_ALIGN_H_
#define STRUCTKIT_SCHEMA_ALIGN_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structkit/registry.h"
#include "structkit/task.h"
#include "structkit/triple.h"

namespace structkit {

enum class AlignKind { kEntity, kRelation };

std::string_view AlignKindName(AlignKind kind);

struct AlignmentEntry {
  std::string target;
  double score = 0.0;  // PMI for computed entries
  bool curated = false;

  bool operator==(const AlignmentEntry&) const = default;
};

struct SchemaAlignment {
  std::string dataset_id;
  // Keys are normalized source labels.
  std::map<std::string, AlignmentEntry> entity_type_map;
  std::map<std::string, AlignmentEntry> relation_map;

  std::map<std::string, AlignmentEntry>& Map(AlignKind kind) {
    return kind == AlignKind::kEntity ? entity_type_map : relation_map;
  }
  const std::map<std::string, AlignmentEntry>& Map(AlignKind kind) const {
    return kind == AlignKind::kEntity ? entity_type_map : relation_map;
  }
  std::size_t size() const {
    return entity_type_map.size() + relation_map.size();
  }
  bool operator==(const SchemaAlignment&) const = default;
};

// Pointwise mutual information with add-one smoothing over the contingency
// table of (pretraining label, downstream label) co-occurrences. An entity
// co-occurrence is a pretraining "instance of" triple whose head equals a
// gold mention surface; a relation co-occurrence is a pretraining triple
// whose (head, tail) equals a gold relation's argument surfaces.
//
// Each source label maps to its highest-scoring co-occurring target; ties
// go to the higher joint count, then to the lexicographically smaller
// label. Targets outside a closed vocabulary of `info` are ignored.
//
// Throws Error(kEmptyCorpus) if either side has no usable example.
SchemaAlignment BuildCooccurrenceAlignment(
    std::span<const PretrainExample> pretrain,
    std::span<const TaskRecord> downstream, const DatasetInfo& info);

// Maps the type of an "instance of" triple or the relation of any other
// triple. Labels that are already targets of the alignment pass through.
// Returns nullopt when the label has no mapping.
std::optional<Triple> ApplyAlignment(const Triple& triple,
                                     const SchemaAlignment& alignment);

// Per source label: the last curated entry wins, otherwise the last
// computed one.
SchemaAlignment MergeAlignments(std::span<const SchemaAlignment> layers);

// Throws Error(kConfigError) if a target is outside a closed vocabulary.
void ValidateAlignment(const SchemaAlignment& alignment,
                       const DatasetInfo& info);

std::string SerializeAlignment(const SchemaAlignment& alignment);
// Throws ParseError naming `file` and the offending line.
SchemaAlignment ParseAlignment(std::string_view content,
                               const std::string& file = "<alignment>");

SchemaAlignment LoadAlignment(const std::string& path);
void SaveAlignment(const SchemaAlignment& alignment, const std::string& path);

}  // namespace structkit

#endif  // STRUCTKIT_SCHEMA_ALIGN_H_
