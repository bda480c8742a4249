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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "webtab/extract.hpp"
#include "webtab/preprocess.hpp"

namespace webtab {

using Sentence = std::vector<std::string>;

struct ContextConfig {
  bool use_surrounding = false;  // T
  bool use_cell = true;          // C
  bool use_header = false;       // H
  bool use_adjacent = false;     // A
  std::size_t adjacency_window = 1;
  std::size_t pair_sample_cap = 50;
  std::uint64_t rng_seed = 0;
  bool regularize_digits = true;  // applied to page text

  // Throws UsageError if no context is enabled or a size is zero.
  void validate() const;
};

// Parses letters from {t,c,h,a} (case-insensitive, optional commas), e.g.
// "c,h" or "CHA". Throws UsageError on anything else.
void set_contexts(ContextConfig& cfg, std::string_view kinds);
// Canonical "TCHA" subset string, e.g. "CH".
std::string contexts_string(const ContextConfig& cfg);

// One sentence per non-empty cell, row-major.
std::vector<Sentence> cell_sentences(const CellGrid& grid);

// Pairs each non-header, non-empty cell with the first cell of its row and
// of its column when that cell is a th. Pair order: data token, header token.
std::vector<Sentence> header_sentences(const CellGrid& grid, const ContextConfig& cfg);

// Pairs each non-empty cell with the cells 1..w steps to its right and below.
std::vector<Sentence> adjacent_sentences(const CellGrid& grid, const ContextConfig& cfg);

// Splits on . ! ? and newlines, lowercases, tokenizes on whitespace.
std::vector<Sentence> surrounding_sentences(const PageText& page, bool regularize_digits = true);

// Per grid (in order): C, then H, then A. Page-text sentences last.
std::vector<Sentence> build_corpus(std::span<const CellGrid> grids,
                                   std::span<const PageText> page_texts,
                                   const ContextConfig& cfg);

void write_corpus(std::ostream& out, std::span<const Sentence> corpus);
std::vector<Sentence> read_corpus(std::istream& in);

}  // namespace webtab
