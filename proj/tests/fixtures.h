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

// Synthetic task corpora shared by the unit and acceptance tests.

#ifndef STRUCTKIT_TESTS_FIXTURES_H_
#define STRUCTKIT_TESTS_FIXTURES_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "structkit/task.h"

namespace structkit::testing {

inline constexpr std::size_t kFixtureRecords = 24;

// Every task kind with the dataset its fixture uses.
const std::vector<std::pair<TaskKind, std::string>>& FixtureDatasets();

// kFixtureRecords records for `task`, deterministic.
std::vector<TaskRecord> FixtureRecords(TaskKind task);

// Text with the span of every "{key}" placeholder of `tmpl`.
struct Filled {
  std::string text;
  std::map<std::string, Span> spans;
};
Filled Fill(std::string_view tmpl,
            const std::map<std::string, std::string>& values);

// Name pools without shared substrings across pools.
const std::vector<std::string>& Persons();
const std::vector<std::string>& Cities();
const std::vector<std::string>& Organizations();

}  // namespace structkit::testing

#endif  // STRUCTKIT_TESTS_FIXTURES_H_
