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

#ifndef STRUCTKIT_IO_H_
#define STRUCTKIT_IO_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace structkit {

// Throws Error(kIoError).
std::string ReadFile(const std::string& path);

// Writes to a temporary sibling file, then renames it over `path`, so
// readers never observe a partial file. Throws Error(kIoError).
void WriteFileAtomic(const std::string& path, std::string_view content);

// Calls `visit` for every non-blank line of a JSON Lines file with its
// 1-based line number. Invalid JSON, and kParseError or kInvalidArgument
// errors thrown by `visit`, become ParseError(path, line); other errors keep
// their code and gain the location in their message.
void ForEachJsonLine(
    const std::string& path,
    const std::function<void(const nlohmann::json&, std::size_t)>& visit);

std::string ToJsonLines(const std::vector<nlohmann::json>& rows);

}  // namespace structkit

#endif  // STRUCTKIT_IO_H_
