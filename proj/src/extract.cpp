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

#include "webtab/extract.hpp"

#include <charconv>

#include "webtab/error.hpp"

namespace webtab {
namespace {

std::size_t span_attribute(const html::Node& cell, const char* name, std::size_t fallback,
                           std::size_t max) {
  const std::string* raw = cell.attribute(name);
  if (raw == nullptr) return fallback;
  std::string_view s = *raw;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec == std::errc::result_out_of_range) return max;
  if (ec != std::errc{} || ptr == s.data()) return fallback;
  return std::min(value, max);
}

std::vector<const html::Node*> table_rows(const html::Node& table) {
  std::vector<const html::Node*> rows;
  for (const auto& child : table.children) {
    if (child->is("tr")) {
      rows.push_back(child.get());
    } else if (child->is("thead") || child->is("tbody") || child->is("tfoot")) {
      for (const auto& gc : child->children) {
        if (gc->is("tr")) rows.push_back(gc.get());
      }
    }
  }
  return rows;
}

}  // namespace

std::string make_table_id(const std::string& page_id, std::size_t index) {
  return page_id + "#" + std::to_string(index);
}

TableLayout layout_table(const html::Node& table) {
  const std::vector<const html::Node*> rows = table_rows(table);
  TableLayout layout;
  layout.rows = rows.size();
  layout.slots.resize(rows.size());

  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t cursor = 0;
    for (const auto& child : rows[r]->children) {
      if (!child->is("td") && !child->is("th")) continue;
      auto& row = layout.slots[r];
      while (cursor < row.size() && row[cursor] != nullptr) ++cursor;
      const std::size_t colspan = std::max<std::size_t>(
          1, span_attribute(*child, "colspan", 1, kMaxColspan));
      std::size_t rowspan = span_attribute(*child, "rowspan", 1, kMaxRowspan);
      if (rowspan == 0 || r + rowspan > rows.size()) rowspan = rows.size() - r;
      for (std::size_t dr = 0; dr < rowspan; ++dr) {
        auto& target = layout.slots[r + dr];
        if (target.size() < cursor + colspan) target.resize(cursor + colspan, nullptr);
        for (std::size_t dc = 0; dc < colspan; ++dc) {
          if (target[cursor + dc] == nullptr) target[cursor + dc] = child.get();
        }
      }
      cursor += colspan;
    }
  }
  for (const auto& row : layout.slots) layout.cols = std::max(layout.cols, row.size());
  return layout;
}

ExtractResult extract_tables(const RawPage& page, std::size_t min_rows, std::size_t min_cols) {
  if (min_rows == 0 || min_cols == 0) {
    throw UsageError("min_rows and min_cols must be at least 1");
  }
  ExtractResult result;
  const html::Document doc = html::parse(page.html);
  if (!doc.ok) {
    for (const auto& msg : doc.diagnostics) {
      result.diagnostics.push_back({"extract", page.page_id, msg});
    }
    return result;
  }

  std::size_t index = 0;
  html::walk_elements(*doc.root, [&](const html::Node& node) {
    if (!node.is("table")) return true;
    const std::size_t this_index = index++;
    if (html::has_descendant(node, "table")) return true;
    const TableLayout layout = layout_table(node);
    if (layout.rows >= min_rows && layout.cols >= min_cols) {
      result.tables.push_back({make_table_id(page.page_id, this_index), page.page_id,
                               html::outer_html(node), layout.rows, layout.cols});
    }
    return false;
  });
  return result;
}

PageText extract_page_text(const RawPage& page) {
  const html::Document doc = html::parse(page.html);
  if (!doc.ok) return {page.page_id, ""};
  return {page.page_id,
          html::rendered_text(*doc.root, {.skip_tables = true, .skip_head = true})};
}

}  // namespace webtab
