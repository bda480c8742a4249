/*
 * Copyright (c) 2026, The webtab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "webtab/evaluation.hpp"
#include "webtab/extract.hpp"
#include "webtab/preprocess.hpp"
#include "webtab/vectorize.hpp"

// Record formats of the staged files. Every reader throws DataError with the
// file name and line number on malformed input.
namespace webtab::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view bytes);

// Compact, UTF-8 preserving, invalid sequences replaced.
std::string dump(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);

// Calls fn for each non-blank line parsed as JSON.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&)>& fn);

RawPage page_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RawPage& page);

nlohmann::json to_json(const ExtractedTable& table);
ExtractedTable table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PageText& text);
PageText page_text_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CellGrid& grid);
CellGrid grid_from_json(const nlohmann::json& j);
// Just the token matrix, as embedded in the clusters-for-labeling file.
nlohmann::json grid_tokens_json(const CellGrid& grid);

nlohmann::json to_json(const TableVector& vector);
TableVector table_vector_from_json(const nlohmann::json& j);

// {"table_id": ..., "type": ...} lines. unknown_allowed=false for
// groundtruth files.
Labeling read_labeling(const std::filesystem::path& path, bool unknown_allowed);
std::string labeling_jsonl(const Labeling& labels);

template <class T>
std::vector<T> read_records(const std::filesystem::path& path, T (*convert)(const nlohmann::json&)) {
  std::vector<T> out;
  for_each_jsonl(path, [&](const nlohmann::json& j) { out.push_back(convert(j)); });
  return out;
}

template <class Range>
std::string to_jsonl(const Range& records) {
  std::string out;
  for (const auto& r : records) {
    out += dump(to_json(r));
    out += '\n';
  }
  return out;
}

}  // namespace webtab::io
