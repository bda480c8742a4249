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

#include "webtab/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "webtab/error.hpp"

namespace webtab::io {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string dump(const nlohmann::json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  try {
    return nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

RawPage page_from_json(const nlohmann::json& j) {
  return {j.at("page_id").get<std::string>(), j.value("url", std::string{}),
          j.at("html").get<std::string>()};
}

nlohmann::json to_json(const RawPage& page) {
  return {{"page_id", page.page_id}, {"url", page.url}, {"html", page.html}};
}

nlohmann::json to_json(const ExtractedTable& t) {
  return {{"table_id", t.table_id},
          {"page_id", t.page_id},
          {"html", t.html_fragment},
          {"rows", t.row_count},
          {"cols", t.col_count}};
}

ExtractedTable table_from_json(const nlohmann::json& j) {
  return {j.at("table_id").get<std::string>(), j.at("page_id").get<std::string>(),
          j.at("html").get<std::string>(), j.at("rows").get<std::size_t>(),
          j.at("cols").get<std::size_t>()};
}

nlohmann::json to_json(const PageText& t) { return {{"page_id", t.page_id}, {"text", t.text}}; }

PageText page_text_from_json(const nlohmann::json& j) {
  return {j.at("page_id").get<std::string>(), j.at("text").get<std::string>()};
}

nlohmann::json grid_tokens_json(const CellGrid& grid) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.n_rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < grid.n_cols; ++j) row.push_back(grid.at(i, j).tokens);
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const CellGrid& grid) {
  nlohmann::json mask = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.n_rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < grid.n_cols; ++j) row.push_back(grid.at(i, j).is_header);
    mask.push_back(std::move(row));
  }
  return {{"table_id", grid.table_id},
          {"rows", grid.n_rows},
          {"cols", grid.n_cols},
          {"cells", grid_tokens_json(grid)},
          {"header_mask", std::move(mask)}};
}

CellGrid grid_from_json(const nlohmann::json& j) {
  CellGrid grid;
  grid.table_id = j.at("table_id").get<std::string>();
  grid.n_rows = j.at("rows").get<std::size_t>();
  grid.n_cols = j.at("cols").get<std::size_t>();
  const auto& cells = j.at("cells");
  const auto& mask = j.at("header_mask");
  if (cells.size() != grid.n_rows || mask.size() != grid.n_rows) {
    throw DataError("grid " + grid.table_id + ": row count mismatch");
  }
  for (std::size_t i = 0; i < grid.n_rows; ++i) {
    if (cells[i].size() != grid.n_cols || mask[i].size() != grid.n_cols) {
      throw DataError("grid " + grid.table_id + ": row " + std::to_string(i) + " is not " +
                      std::to_string(grid.n_cols) + " wide");
    }
    for (std::size_t c = 0; c < grid.n_cols; ++c) {
      grid.cells.push_back({cells[i][c].get<std::vector<std::string>>(), mask[i][c].get<bool>()});
    }
  }
  return grid;
}

nlohmann::json to_json(const TableVector& v) { return {{"table_id", v.table_id}, {"vec", v.values}}; }

TableVector table_vector_from_json(const nlohmann::json& j) {
  return {j.at("table_id").get<std::string>(), j.at("vec").get<std::vector<double>>()};
}

Labeling read_labeling(const std::filesystem::path& path, bool unknown_allowed) {
  Labeling labels;
  for_each_jsonl(path, [&](const nlohmann::json& j) {
    const auto id = j.at("table_id").get<std::string>();
    const auto raw = j.at("type").get<std::string>();
    auto type = parse_table_type(raw);
    if (!type || (!unknown_allowed && *type == TableType::unknown)) {
      throw DataError("invalid table type '" + raw + "' for " + id);
    }
    if (!labels.emplace(id, *type).second) throw DataError("duplicate table_id " + id);
  });
  return labels;
}

std::string labeling_jsonl(const Labeling& labels) {
  std::string out;
  for (const auto& [id, type] : labels) {
    out += dump({{"table_id", id}, {"type", to_string(type)}});
    out += '\n';
  }
  return out;
}

}  // namespace webtab::io
