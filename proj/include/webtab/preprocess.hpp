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

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "webtab/extract.hpp"

namespace webtab {

inline constexpr std::string_view kTH = "TH";
inline constexpr std::string_view kTD = "TD";
inline constexpr std::string_view kHREF = "HREF";
inline constexpr std::string_view kIMG = "IMG";
inline constexpr std::array<std::string_view, 4> kMetaKeywords = {kTH, kTD, kHREF, kIMG};

bool is_meta_keyword(std::string_view token);

struct Cell {
  // Lowercased content tokens, then semantic labels, then meta keywords.
  std::vector<std::string> tokens;
  bool is_header = false;

  // True when the cell carries nothing but meta keywords.
  bool empty() const;
};

// Rectangular, row-major.
struct CellGrid {
  std::string table_id;
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<Cell> cells;

  Cell& at(std::size_t i, std::size_t j) { return cells[i * n_cols + j]; }
  const Cell& at(std::size_t i, std::size_t j) const { return cells[i * n_cols + j]; }
};

CellGrid transpose(const CellGrid& grid);

// Cell text (as rendered, before lowercasing) -> label tokens.
using SemanticTyper = std::function<std::vector<std::string>(std::string_view)>;

enum class PadPolicy { empty_cell };

struct PreprocessOptions {
  bool regularize_digits = true;
  SemanticTyper semantic_typer;  // empty: no labels
  PadPolicy pad_token_policy = PadPolicy::empty_cell;
};

// Every ASCII digit becomes 'X'.
std::string regularize_token(std::string_view token);

// Throws DataError("empty table") when the fragment holds no table or the
// table has no cells.
CellGrid normalize_table(const ExtractedTable& table, const PreprocessOptions& opts = {});

}  // namespace webtab
