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

#include "webtab/preprocess.hpp"

#include <algorithm>
#include <map>

#include "webtab/error.hpp"
#include "webtab/text.hpp"

namespace webtab {
namespace {

const html::Node* first_table(const html::Node& root) {
  const html::Node* found = nullptr;
  html::walk_elements(root, [&](const html::Node& n) {
    if (found != nullptr) return false;
    if (n.is("table")) {
      found = &n;
      return false;
    }
    return true;
  });
  return found;
}

bool has_link(const html::Node& cell) {
  bool found = false;
  html::walk_elements(cell, [&](const html::Node& n) {
    if (n.is("a") && n.attribute("href") != nullptr) found = true;
    return !found;
  });
  return found;
}

Cell make_cell(const html::Node& node, const PreprocessOptions& opts) {
  Cell cell;
  cell.is_header = node.is("th");
  const std::string rendered = html::rendered_text(node);
  for (std::string& tok : text::split_whitespace(text::to_lower_ascii(rendered))) {
    cell.tokens.push_back(opts.regularize_digits ? regularize_token(tok) : std::move(tok));
  }
  if (opts.semantic_typer) {
    for (std::string& label : opts.semantic_typer(rendered)) {
      if (!label.empty()) cell.tokens.push_back(std::move(label));
    }
  }
  cell.tokens.emplace_back(cell.is_header ? kTH : kTD);
  if (has_link(node)) cell.tokens.emplace_back(kHREF);
  if (html::has_descendant(node, "img")) cell.tokens.emplace_back(kIMG);
  return cell;
}

}  // namespace

bool is_meta_keyword(std::string_view token) {
  return std::find(kMetaKeywords.begin(), kMetaKeywords.end(), token) != kMetaKeywords.end();
}

bool Cell::empty() const {
  return std::all_of(tokens.begin(), tokens.end(),
                     [](const std::string& t) { return is_meta_keyword(t); });
}

CellGrid transpose(const CellGrid& grid) {
  CellGrid out;
  out.table_id = grid.table_id;
  out.n_rows = grid.n_cols;
  out.n_cols = grid.n_rows;
  out.cells.resize(grid.cells.size());
  for (std::size_t i = 0; i < grid.n_rows; ++i) {
    for (std::size_t j = 0; j < grid.n_cols; ++j) out.at(j, i) = grid.at(i, j);
  }
  return out;
}

std::string regularize_token(std::string_view token) {
  std::string out(token);
  for (char& c : out) {
    if (c >= '0' && c <= '9') c = 'X';
  }
  return out;
}

CellGrid normalize_table(const ExtractedTable& table, const PreprocessOptions& opts) {
  const html::Document doc = html::parse(table.html_fragment);
  const html::Node* node = doc.ok ? first_table(*doc.root) : nullptr;
  if (node == nullptr) throw DataError("empty table");
  const TableLayout layout = layout_table(*node);
  if (layout.rows == 0 || layout.cols == 0) throw DataError("empty table");

  CellGrid grid;
  grid.table_id = table.table_id;
  grid.n_rows = layout.rows;
  grid.n_cols = layout.cols;
  grid.cells.reserve(layout.rows * layout.cols);

  Cell padding;
  padding.tokens.emplace_back(kTD);
  std::map<const html::Node*, Cell> converted;
  for (const auto& row : layout.slots) {
    for (std::size_t j = 0; j < layout.cols; ++j) {
      const html::Node* src = j < row.size() ? row[j] : nullptr;
      if (src == nullptr) {
        grid.cells.push_back(padding);
        continue;
      }
      auto it = converted.find(src);
      if (it == converted.end()) it = converted.emplace(src, make_cell(*src, opts)).first;
      grid.cells.push_back(it->second);
    }
  }
  return grid;
}

}  // namespace webtab
