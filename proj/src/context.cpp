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

#include "webtab/context.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include "webtab/error.hpp"
#include "webtab/rng.hpp"
#include "webtab/text.hpp"

namespace webtab {
namespace {

// Deterministic per-pair stream so sampling does not depend on the order in
// which tables are processed.
Rng pair_rng(const ContextConfig& cfg, const std::string& table_id, char kind, std::size_t a,
             std::size_t b, std::size_t c, std::size_t d) {
  std::uint64_t h = fnv1a64(table_id);
  h = mix_seed(h, static_cast<std::uint64_t>(kind));
  for (std::size_t v : {a, b, c, d}) h = mix_seed(h, v);
  return Rng(mix_seed(cfg.rng_seed, h));
}

// Appends the cross product data x context, or a uniform sample of cap
// pairs (without replacement, emitted in cross-product order).
void cross_product(const Cell& data, const Cell& context, std::size_t cap, Rng& rng,
                   std::vector<Sentence>& out) {
  const std::size_t n = data.tokens.size();
  const std::size_t m = context.tokens.size();
  const std::size_t total = n * m;
  if (total == 0) return;
  if (total <= cap) {
    for (const auto& a : data.tokens) {
      for (const auto& b : context.tokens) out.push_back({a, b});
    }
    return;
  }
  std::vector<std::size_t> index(total);
  std::iota(index.begin(), index.end(), 0);
  for (std::size_t i = 0; i < cap; ++i) {
    std::swap(index[i], index[i + rng.below(total - i)]);
  }
  index.resize(cap);
  std::sort(index.begin(), index.end());
  for (std::size_t k : index) out.push_back({data.tokens[k / m], context.tokens[k % m]});
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?' || c == '\n'; }

}  // namespace

void ContextConfig::validate() const {
  if (!(use_surrounding || use_cell || use_header || use_adjacent)) {
    throw UsageError("at least one context (t, c, h, a) must be enabled");
  }
  if (adjacency_window == 0) throw UsageError("adjacency window must be >= 1");
  if (pair_sample_cap == 0) throw UsageError("pair sample cap must be >= 1");
}

void set_contexts(ContextConfig& cfg, std::string_view kinds) {
  cfg.use_surrounding = cfg.use_cell = cfg.use_header = cfg.use_adjacent = false;
  for (char c : kinds) {
    switch (c) {
      case 't': case 'T': cfg.use_surrounding = true; break;
      case 'c': case 'C': cfg.use_cell = true; break;
      case 'h': case 'H': cfg.use_header = true; break;
      case 'a': case 'A': cfg.use_adjacent = true; break;
      case ',': case ' ': break;
      default: throw UsageError("unknown context '" + std::string(1, c) + "' in \"" +
                                std::string(kinds) + "\"");
    }
  }
  if (!(cfg.use_surrounding || cfg.use_cell || cfg.use_header || cfg.use_adjacent)) {
    throw UsageError("empty context set");
  }
}

std::string contexts_string(const ContextConfig& cfg) {
  std::string s;
  if (cfg.use_surrounding) s += 'T';
  if (cfg.use_cell) s += 'C';
  if (cfg.use_header) s += 'H';
  if (cfg.use_adjacent) s += 'A';
  return s;
}

std::vector<Sentence> cell_sentences(const CellGrid& grid) {
  std::vector<Sentence> out;
  for (const Cell& cell : grid.cells) {
    if (!cell.empty()) out.push_back(cell.tokens);
  }
  return out;
}

std::vector<Sentence> header_sentences(const CellGrid& grid, const ContextConfig& cfg) {
  std::vector<Sentence> out;
  for (std::size_t i = 0; i < grid.n_rows; ++i) {
    for (std::size_t j = 0; j < grid.n_cols; ++j) {
      const Cell& cell = grid.at(i, j);
      if (cell.is_header || cell.empty()) continue;
      if (j >= 1) {
        const Cell& row_header = grid.at(i, 0);
        if (row_header.is_header) {
          Rng rng = pair_rng(cfg, grid.table_id, 'r', i, j, i, 0);
          cross_product(cell, row_header, cfg.pair_sample_cap, rng, out);
        }
      }
      if (i >= 1) {
        const Cell& col_header = grid.at(0, j);
        if (col_header.is_header) {
          Rng rng = pair_rng(cfg, grid.table_id, 'c', i, j, 0, j);
          cross_product(cell, col_header, cfg.pair_sample_cap, rng, out);
        }
      }
    }
  }
  return out;
}

std::vector<Sentence> adjacent_sentences(const CellGrid& grid, const ContextConfig& cfg) {
  std::vector<Sentence> out;
  const std::size_t w = cfg.adjacency_window;
  for (std::size_t i = 0; i < grid.n_rows; ++i) {
    for (std::size_t j = 0; j < grid.n_cols; ++j) {
      const Cell& cell = grid.at(i, j);
      if (cell.empty()) continue;
      for (std::size_t p = 1; p <= w; ++p) {
        if (j + p < grid.n_cols && !grid.at(i, j + p).empty()) {
          Rng rng = pair_rng(cfg, grid.table_id, 'a', i, j, i, j + p);
          cross_product(cell, grid.at(i, j + p), cfg.pair_sample_cap, rng, out);
        }
        if (i + p < grid.n_rows && !grid.at(i + p, j).empty()) {
          Rng rng = pair_rng(cfg, grid.table_id, 'a', i, j, i + p, j);
          cross_product(cell, grid.at(i + p, j), cfg.pair_sample_cap, rng, out);
        }
      }
    }
  }
  return out;
}

std::vector<Sentence> surrounding_sentences(const PageText& page, bool regularize_digits) {
  std::vector<Sentence> out;
  const std::string lowered = text::to_lower_ascii(page.text);
  std::size_t start = 0;
  for (std::size_t i = 0; i <= lowered.size(); ++i) {
    if (i < lowered.size() && !is_terminator(lowered[i])) continue;
    Sentence s = text::split_whitespace(std::string_view(lowered).substr(start, i - start));
    if (regularize_digits) {
      for (auto& tok : s) tok = regularize_token(tok);
    }
    if (!s.empty()) out.push_back(std::move(s));
    start = i + 1;
  }
  return out;
}

std::vector<Sentence> build_corpus(std::span<const CellGrid> grids,
                                   std::span<const PageText> page_texts,
                                   const ContextConfig& cfg) {
  cfg.validate();
  std::vector<Sentence> corpus;
  auto append = [&corpus](std::vector<Sentence>&& part) {
    std::move(part.begin(), part.end(), std::back_inserter(corpus));
  };
  for (const CellGrid& grid : grids) {
    if (cfg.use_cell) append(cell_sentences(grid));
    if (cfg.use_header) append(header_sentences(grid, cfg));
    if (cfg.use_adjacent) append(adjacent_sentences(grid, cfg));
  }
  if (cfg.use_surrounding) {
    for (const PageText& page : page_texts) {
      append(surrounding_sentences(page, cfg.regularize_digits));
    }
  }
  return corpus;
}

void write_corpus(std::ostream& out, std::span<const Sentence> corpus) {
  for (const Sentence& s : corpus) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k > 0) out << ' ';
      out << s[k];
    }
    out << '\n';
  }
}

std::vector<Sentence> read_corpus(std::istream& in) {
  std::vector<Sentence> corpus;
  std::string line;
  while (std::getline(in, line)) {
    Sentence s = text::split_whitespace(line);
    if (!s.empty()) corpus.push_back(std::move(s));
  }
  return corpus;
}

}  // namespace webtab
