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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "webtab/context.hpp"
#include "webtab/error.hpp"

using namespace webtab;

namespace {

using Tokens = std::vector<std::string>;

CellGrid grid(std::size_t rows, std::size_t cols, std::vector<Tokens> cells,
              std::vector<bool> header = {}) {
  CellGrid g;
  g.table_id = "t#0";
  g.n_rows = rows;
  g.n_cols = cols;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    Cell c;
    c.tokens = cells[k];
    c.is_header = k < header.size() && header[k];
    g.cells.push_back(c);
  }
  return g;
}

std::multiset<Tokens> as_set(const std::vector<Sentence>& s) { return {s.begin(), s.end()}; }

ContextConfig cfg_with(std::string_view contexts) {
  ContextConfig c;
  set_contexts(c, contexts);
  return c;
}

}  // namespace

TEST(CellSentences, OnePerNonEmptyCell) {
  const auto g = grid(2, 2, {{"a"}, {"b"}, {"c"}, {"d"}});
  EXPECT_EQ(cell_sentences(g), (std::vector<Sentence>{{"a"}, {"b"}, {"c"}, {"d"}}));
  EXPECT_EQ(cell_sentences(grid(1, 1, {{"name", "TH"}})), (std::vector<Sentence>{{"name", "TH"}}));
  const auto padded = grid(1, 2, {{"x", "TD"}, {"TD"}});
  EXPECT_EQ(cell_sentences(padded), (std::vector<Sentence>{{"x", "TD"}}));
}

TEST(HeaderSentences, CrossProductWithColumnHeader) {
  const auto g = grid(2, 1, {{"age", "TH"}, {"XX", "TD"}}, {true, false});
  const auto s = header_sentences(g, cfg_with("H"));
  EXPECT_EQ(as_set(s), (std::multiset<Tokens>{{"XX", "age"}, {"TD", "age"}, {"XX", "TH"}, {"TD", "TH"}}));
  for (const auto& p : s) EXPECT_EQ(p.size(), 2u);
}

TEST(HeaderSentences, RowAndColumnHeaders) {
  // corner | h1 | h2
  // r1     | a  | b
  const auto g = grid(2, 3, {{"corner", "TH"}, {"h1", "TH"}, {"h2", "TH"}, {"r1", "TH"}, {"a"}, {"b"}},
                      {true, true, true, true, false, false});
  const auto s = header_sentences(g, cfg_with("H"));
  EXPECT_EQ(as_set(s), (std::multiset<Tokens>{{"a", "r1"}, {"a", "TH"}, {"a", "h1"}, {"a", "TH"},
                                               {"b", "r1"}, {"b", "TH"}, {"b", "h2"}, {"b", "TH"}}));
}

TEST(HeaderSentences, NoThNoSentences) {
  const auto g = grid(2, 2, {{"a", "TD"}, {"b", "TD"}, {"c", "TD"}, {"d", "TD"}});
  EXPECT_TRUE(header_sentences(g, cfg_with("H")).empty());
}

TEST(HeaderSentences, SampledToCap) {
  Tokens head, data;
  for (int k = 0; k < 10; ++k) {
    head.push_back("h" + std::to_string(k));
    data.push_back("d" + std::to_string(k));
  }
  const auto g = grid(2, 1, {head, data}, {true, false});
  ContextConfig c = cfg_with("H");
  const auto s = header_sentences(g, c);
  EXPECT_EQ(s.size(), 50u);
  EXPECT_EQ(std::set<Tokens>(s.begin(), s.end()).size(), 50u) << "sampling is without replacement";
  EXPECT_EQ(header_sentences(g, c), s);
  c.rng_seed = 99;
  EXPECT_NE(header_sentences(g, c), s);
  c.pair_sample_cap = 100;
  EXPECT_EQ(header_sentences(g, c).size(), 100u);
}

TEST(AdjacentSentences, Examples) {
  ContextConfig c = cfg_with("A");
  EXPECT_EQ(adjacent_sentences(grid(1, 2, {{"a"}, {"b"}}), c), (std::vector<Sentence>{{"a", "b"}}));
  EXPECT_EQ(as_set(adjacent_sentences(grid(2, 2, {{"a"}, {"b"}, {"c"}, {"d"}}), c)),
            (std::multiset<Tokens>{{"a", "b"}, {"c", "d"}, {"a", "c"}, {"b", "d"}}));
  c.adjacency_window = 2;
  EXPECT_EQ(as_set(adjacent_sentences(grid(1, 3, {{"1"}, {"2"}, {"3"}}), c)),
            (std::multiset<Tokens>{{"1", "2"}, {"2", "3"}, {"1", "3"}}));
}

TEST(AdjacentSentences, EveryUnorderedPairOnce) {
  ContextConfig c = cfg_with("A");
  c.adjacency_window = 2;
  std::vector<Tokens> cells;
  for (int k = 0; k < 12; ++k) cells.push_back({"c" + std::to_string(k)});
  const auto s = adjacent_sentences(grid(3, 4, cells), c);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& p : s) {
    ASSERT_EQ(p.size(), 2u);
    EXPECT_TRUE(seen.insert(std::minmax(p[0], p[1])).second);
  }
  // Horizontal pairs: 3 rows * (3 + 2); vertical: 4 cols * (2 + 1).
  EXPECT_EQ(seen.size(), 27u);
}

TEST(SurroundingSentences, Examples) {
  EXPECT_EQ(surrounding_sentences({"p", "Call now. Great deal!"}),
            (std::vector<Sentence>{{"call", "now"}, {"great", "deal"}}));
  EXPECT_TRUE(surrounding_sentences({"p", ""}).empty());
  EXPECT_EQ(surrounding_sentences({"p", "Posted 04/25/2016"}),
            (std::vector<Sentence>{{"posted", "XX/XX/XXXX"}}));
  EXPECT_EQ(surrounding_sentences({"p", "a?b\nc!!"}), (std::vector<Sentence>{{"a"}, {"b"}, {"c"}}));
}

TEST(BuildCorpus, Composition) {
  const auto g = grid(2, 2, {{"h1", "TH"}, {"h2", "TH"}, {"a", "TD"}, {"b", "TD"}},
                      {true, true, false, false});
  const std::vector<CellGrid> grids = {g, g};
  const std::vector<PageText> texts = {{"p", "Some text. More."}};
  EXPECT_EQ(build_corpus(grids, texts, cfg_with("C")).size(), 8u);
  const auto ch = build_corpus(grids, texts, cfg_with("CH"));
  const auto h = header_sentences(g, cfg_with("CH"));
  EXPECT_EQ(ch.size(), 8u + 2 * h.size());
  const auto all = build_corpus(grids, texts, cfg_with("TCHA"));
  EXPECT_EQ(all.back(), (Sentence{"more"}));
  EXPECT_TRUE(build_corpus(grids, {}, cfg_with("T")).empty());
}

TEST(BuildCorpus, Deterministic) {
  Tokens many;
  for (int k = 0; k < 12; ++k) many.push_back("t" + std::to_string(k));
  const auto g = grid(2, 2, {many, many, many, many}, {true, true, true, false});
  const std::vector<CellGrid> grids = {g};
  ContextConfig c = cfg_with("CHA");
  c.rng_seed = 7;
  EXPECT_EQ(build_corpus(grids, {}, c), build_corpus(grids, {}, c));
}

TEST(ContextConfig, Validation) {
  ContextConfig c;
  EXPECT_THROW(set_contexts(c, ""), UsageError);
  EXPECT_THROW(set_contexts(c, "cx"), UsageError);
  set_contexts(c, "c,h,a,t");
  EXPECT_EQ(contexts_string(c), "TCHA");
  c.adjacency_window = 0;
  EXPECT_THROW(c.validate(), UsageError);
}

TEST(CorpusFile, RoundTrip) {
  const std::vector<Sentence> corpus = {{"a", "b"}, {"XX-XX", "TH"}, {"z"}};
  std::stringstream buf;
  write_corpus(buf, corpus);
  EXPECT_EQ(buf.str(), "a b\nXX-XX TH\nz\n");
  EXPECT_EQ(read_corpus(buf), corpus);
}
