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

#include "structkit/registry.h"

#include <fstream>
#include <sstream>

#include "structkit/error.h"

namespace structkit {
namespace {

// Label names follow the natural-language type names used in the output
// format ("location", "organization based in", ...). Datasets whose full
// vocabulary is not listed here stay open.
constexpr const char* kBuiltinRegistry = R"json([
  {"task": "oie", "id": "oie2016", "tag": "oie oie2016"},
  {"task": "oie", "id": "web", "tag": "oie web"},
  {"task": "oie", "id": "nyt", "tag": "oie nyt"},
  {"task": "oie", "id": "penn", "tag": "oie penn"},

  {"task": "rc", "id": "tacred", "tag": "rc tacred"},
  {"task": "rc", "id": "fewrel", "tag": "rc fewrel"},

  {"task": "fp", "id": "google-re", "tag": "fp google-re",
   "relation_labels": ["place of birth", "place of death", "date of birth"]},
  {"task": "fp", "id": "t-rex", "tag": "fp t-rex"},

  {"task": "jer", "id": "conll04", "tag": "jer conll04",
   "entity_labels": ["location", "organization", "person", "other"],
   "relation_labels": ["organization based in", "located in", "live in",
                       "work for", "kill"]},
  {"task": "jer", "id": "ade", "tag": "jer ade",
   "entity_labels": ["disease", "drug"],
   "relation_labels": ["effect"]},
  {"task": "jer", "id": "nyt", "tag": "jer nyt"},
  {"task": "jer", "id": "ace2005", "tag": "jer ace2005"},

  {"task": "ner", "id": "conll03", "tag": "ner conll03",
   "entity_labels": ["location", "person", "organization", "miscellaneous"]},
  {"task": "ner", "id": "ontonotes", "tag": "ner ontonotes"},
  {"task": "ner", "id": "genia", "tag": "ner genia",
   "entity_labels": ["protein", "DNA", "RNA", "cell line", "cell type"]},
  {"task": "ner", "id": "ace2005", "tag": "ner ace2005"},

  {"task": "srl", "id": "conll05", "tag": "srl conll05"},
  {"task": "srl", "id": "conll05-brown", "tag": "srl conll05"},
  {"task": "srl", "id": "conll12", "tag": "srl conll12"},

  {"task": "ee_trg", "id": "ace2005", "tag": "ee ace2005 trg"},
  {"task": "ee_arg", "id": "ace2005", "tag": "ee ace2005 arg"},

  {"task": "cr", "id": "conll12", "tag": "cr conll12"},

  {"task": "dst", "id": "multiwoz", "tag": "dst multiwoz",
   "slots": ["attraction area", "attraction name", "attraction type",
             "hotel area", "hotel book day", "hotel book people",
             "hotel book stay", "hotel internet", "hotel name",
             "hotel parking", "hotel price range", "hotel stars",
             "hotel type", "restaurant area", "restaurant book day",
             "restaurant book people", "restaurant book time",
             "restaurant food", "restaurant name", "restaurant price range",
             "taxi arrive by", "taxi departure", "taxi destination",
             "taxi leave at", "train arrive by", "train book people",
             "train day", "train departure", "train destination",
             "train leave at"]},

  {"task": "id", "id": "atis", "tag": "id atis"},
  {"task": "id", "id": "snips", "tag": "id snips",
   "intent_labels": ["add to playlist", "book restaurant", "get weather",
                     "play music", "rate book", "search creative work",
                     "search screening event"]}
])json";

std::vector<std::string> StringList(const Json& entry, const char* key) {
  if (!entry.contains(key)) return {};
  const Json& value = entry.at(key);
  if (!value.is_array()) {
    throw Error(ErrorCode::kConfigError,
                std::string("registry field \"") + key + "\" must be an array");
  }
  std::vector<std::string> out;
  for (const Json& item : value) {
    if (!item.is_string()) {
      throw Error(ErrorCode::kConfigError,
                  std::string("registry field \"") + key +
                      "\" must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

const DatasetRegistry& DatasetRegistry::Builtin() {
  static const DatasetRegistry kBuiltin =
      FromJson(Json::parse(kBuiltinRegistry));
  return kBuiltin;
}

DatasetRegistry DatasetRegistry::FromJson(const Json& json) {
  if (!json.is_array()) {
    throw Error(ErrorCode::kConfigError, "a registry must be a JSON array");
  }
  DatasetRegistry registry;
  for (const Json& entry : json) {
    if (!entry.is_object() || !entry.contains("task") ||
        !entry.contains("id") || !entry.contains("tag") ||
        !entry["task"].is_string() || !entry["id"].is_string() ||
        !entry["tag"].is_string()) {
      throw Error(ErrorCode::kConfigError,
                  "registry entries need string fields task, id and tag");
    }
    DatasetInfo info;
    try {
      info.task = ParseTaskKind(entry["task"].get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigError, e.what());
    }
    info.id = entry["id"].get<std::string>();
    info.tag = entry["tag"].get<std::string>();
    if (info.id.empty() || info.tag.empty()) {
      throw Error(ErrorCode::kConfigError, "empty dataset id or tag");
    }
    info.entity_labels = StringList(entry, "entity_labels");
    info.relation_labels = StringList(entry, "relation_labels");
    info.intent_labels = StringList(entry, "intent_labels");
    info.slots = StringList(entry, "slots");
    registry.Register(std::move(info));
  }
  return registry;
}

DatasetRegistry DatasetRegistry::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json json = Json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
  if (json.is_discarded()) {
    throw Error(ErrorCode::kConfigError, path + ": invalid JSON");
  }
  return FromJson(json);
}

void DatasetRegistry::Register(DatasetInfo info) {
  auto key = std::make_pair(info.task, info.id);
  datasets_.insert_or_assign(std::move(key), std::move(info));
}

void DatasetRegistry::Merge(const DatasetRegistry& other) {
  for (const auto& [key, info] : other.datasets_) Register(info);
}

const DatasetInfo& DatasetRegistry::Get(TaskKind task,
                                        std::string_view dataset_id) const {
  auto it = datasets_.find({task, std::string(dataset_id)});
  if (it == datasets_.end()) {
    throw Error(ErrorCode::kUnknownDataset,
                "no dataset \"" + std::string(dataset_id) +
                    "\" registered for task " +
                    std::string(TaskKindName(task)));
  }
  return it->second;
}

bool DatasetRegistry::Contains(TaskKind task,
                               std::string_view dataset_id) const {
  return datasets_.contains({task, std::string(dataset_id)});
}

std::vector<const DatasetInfo*> DatasetRegistry::All() const {
  std::vector<const DatasetInfo*> out;
  for (const auto& [key, info] : datasets_) out.push_back(&info);
  return out;
}

Json DatasetRegistry::ToJson() const {
  Json out = Json::array();
  for (const auto& [key, info] : datasets_) {
    Json entry = {{"task", TaskKindName(info.task)},
                  {"id", info.id},
                  {"tag", info.tag}};
    if (!info.entity_labels.empty()) entry["entity_labels"] = info.entity_labels;
    if (!info.relation_labels.empty()) {
      entry["relation_labels"] = info.relation_labels;
    }
    if (!info.intent_labels.empty()) entry["intent_labels"] = info.intent_labels;
    if (!info.slots.empty()) entry["slots"] = info.slots;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace structkit
