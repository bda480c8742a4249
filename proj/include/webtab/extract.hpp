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

#include <cstddef>
#include <string>
#include <vector>

#include "webtab/diagnostic.hpp"
#include "webtab/html.hpp"

namespace webtab {

struct RawPage {
  std::string page_id;
  std::string url;
  std::string html;
};

struct ExtractedTable {
  std::string table_id;  // page_id + "#" + zero-based index among all tables of the page
  std::string page_id;
  std::string html_fragment;  // serialized table element
  std::size_t row_count = 0;
  std::size_t col_count = 0;
};

struct PageText {
  std::string page_id;
  std::string text;
};

struct ExtractResult {
  std::vector<ExtractedTable> tables;
  std::vector<Diagnostic> diagnostics;
};

inline constexpr std::size_t kDefaultMinRows = 2;
inline constexpr std::size_t kDefaultMinCols = 2;

std::string make_table_id(const std::string& page_id, std::size_t index);

// Leaf tables (no nested table element) in document order, keeping those
// whose unrolled grid has at least min_rows rows and min_cols columns.
// Throws UsageError if either threshold is zero.
ExtractResult extract_tables(const RawPage& page, std::size_t min_rows = kDefaultMinRows,
                             std::size_t min_cols = kDefaultMinCols);

// Visible page text outside every table, head, script and style element.
PageText extract_page_text(const RawPage& page);

// Cell placement of one table after colspan/rowspan unrolling. Rows may be
// ragged; a null slot is a position no cell covers.
struct TableLayout {
  std::size_t rows = 0;
  std::size_t cols = 0;  // widest row
  std::vector<std::vector<const html::Node*>> slots;
};

inline constexpr std::size_t kMaxColspan = 1000;
inline constexpr std::size_t kMaxRowspan = 65534;

// Rows are the table's own tr elements (directly or via thead/tbody/tfoot)
// in source order. rowspan=0 and overlong rowspans extend to the last row.
TableLayout layout_table(const html::Node& table);

}  // namespace webtab
