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

#include <cctype>

#include "preprocess_fixtures.hpp"
#include "webtab/error.hpp"
#include "webtab/preprocess.hpp"
#include "webtab/rng.hpp"

using namespace webtab;

namespace {

ExtractedTable table(std::string html) {
  ExtractedTable t;
  t.table_id = "p#0";
  t.page_id = "p";
  t.html_fragment = std::move(html);
  return t;
}

fixtures::Grid tokens_of(const CellGrid& g) {
  fixtures::Grid out(g.n_rows);
  for (std::size_t i = 0; i < g.n_rows; ++i)
    for (std::size_t j = 0; j < g.n_cols; ++j) out[i].push_back(g.at(i, j).tokens);
  return out;
}

}  // namespace

TEST(Regularize, Examples) {
  EXPECT_EQ(regularize_token("04-25-2016"), "XX-XX-XXXX");
  EXPECT_EQ(regularize_token("abc"), "abc");
  EXPECT_EQ(regularize_token("32c-42-28"), "XXc-XX-XX");
}

TEST(Regularize, Idempotent) {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    for (std::size_t k = rng.below(12); k > 0; --k) s += static_cast<char>(32 + rng.below(95));
    const std::string once = regularize_token(s);
    EXPECT_EQ(regularize_token(once), once);
    for (char c : once) EXPECT_FALSE(c >= '0' && c <= '9');
  }
}

TEST(Normalize, SpecExamples) {
  auto g = normalize_table(table("<table><tr><th>Name</th></tr></table>"));
  EXPECT_EQ(g.at(0, 0).tokens, (std::vector<std::string>{"name", "TH"}));
  EXPECT_TRUE(g.at(0, 0).is_header);

  g = normalize_table(table("<table><tr><td colspan=2>price</td></tr></table>"));
  ASSERT_EQ(g.n_cols, 2u);
  EXPECT_EQ(g.at(0, 0).tokens, (std::vector<std::string>{"price", "TD"}));
  EXPECT_EQ(g.at(0, 1).tokens, (std::vector<std::string>{"price", "TD"}));

  g = normalize_table(table("<table><tr><td><a href='x'>more</a></td></tr></table>"));
  EXPECT_EQ(g.at(0, 0).tokens, (std::vector<std::string>{"more", "TD", "HREF"}));
}

class Fixture : public ::testing::TestWithParam<fixtures::PreprocessFixture> {};

TEST_P(Fixture, MatchesExpectedGrid) {
  const auto& f = GetParam();
  const CellGrid g = normalize_table(table(f.html));
  EXPECT_EQ(tokens_of(g), f.expected);
}

INSTANTIATE_TEST_SUITE_P(Handwritten, Fixture, ::testing::ValuesIn(fixtures::preprocess_fixtures()),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Normalize, EmptyTableIsError) {
  EXPECT_THROW(normalize_table(table("<table></table>")), DataError);
  EXPECT_THROW(normalize_table(table("<p>no table</p>")), DataError);
}

TEST(Normalize, DigitsKeptWhenDisabled) {
  PreprocessOptions opts;
  opts.regularize_digits = false;
  const auto g = normalize_table(table("<table><tr><td>A1</td></tr></table>"), opts);
  EXPECT_EQ(g.at(0, 0).tokens, (std::vector<std::string>{"a1", "TD"}));
}

TEST(Normalize, SemanticLabelsPrecedeMetaKeywords) {
  PreprocessOptions opts;
  opts.semantic_typer = [](std::string_view text) {
    return text.find('@') != std::string_view::npos ? std::vector<std::string>{"EMAIL"}
                                                     : std::vector<std::string>{};
  };
  const auto g = normalize_table(table("<table><tr><td><a href=m>a@b.c</a></td><td>x</td></tr></table>"), opts);
  EXPECT_EQ(g.at(0, 0).tokens, (std::vector<std::string>{"a@b.c", "EMAIL", "TD", "HREF"}));
  EXPECT_EQ(g.at(0, 1).tokens, (std::vector<std::string>{"x", "TD"}));
}

TEST(Normalize, PaddingCellsAreEmpty) {
  const auto g = normalize_table(table("<table><tr><td>a</td><td>b</td></tr><tr><td>c</td></tr></table>"));
  EXPECT_TRUE(g.at(1, 1).empty());
  EXPECT_FALSE(g.at(1, 1).is_header);
  EXPECT_FALSE(g.at(1, 0).empty());
}

// Random span layouts: grids stay rectangular, every cell has exactly one of
// TH/TD after its content, and content tokens are lowercase apart from X.
TEST(Normalize, RandomSpanLayoutsProperties) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::string html = "<table>";
    const std::size_t rows = 1 + rng.below(5);
    std::vector<std::string> sources;
    for (std::size_t i = 0; i < rows; ++i) {
      html += "<tr>";
      for (std::size_t j = 1 + rng.below(4); j > 0; --j) {
        const bool th = rng.below(3) == 0;
        const std::string text = "Tok" + std::to_string(rng.below(100)) + " w" + std::to_string(rng.below(5));
        sources.push_back(text);
        html += std::string(th ? "<th" : "<td") + " colspan=" + std::to_string(1 + rng.below(3)) +
                " rowspan=" + std::to_string(1 + rng.below(3)) + ">" + text + (th ? "</th>" : "</td>");
      }
      html += "</tr>";
    }
    html += "</table>";
    const CellGrid g = normalize_table(table(html));
    ASSERT_EQ(g.cells.size(), g.n_rows * g.n_cols);
    for (const Cell& c : g.cells) {
      std::size_t th = 0, td = 0;
      bool meta_seen = false;
      for (const auto& t : c.tokens) {
        if (is_meta_keyword(t)) {
          meta_seen = true;
          th += t == "TH";
          td += t == "TD";
          continue;
        }
        EXPECT_FALSE(meta_seen) << "content after meta keyword";
        for (char ch : t) EXPECT_FALSE(std::isupper(static_cast<unsigned char>(ch)) && ch != 'X');
      }
      EXPECT_EQ(th + td, 1u);
      EXPECT_EQ(th == 1, c.is_header);
    }
  }
}

TEST(Grid, TransposeSwapsIndices) {
  const auto g = normalize_table(table("<table><tr><td>a</td><td>b</td><td>c</td></tr>"
                                       "<tr><td>d</td><td>e</td><td>f</td></tr></table>"));
  const auto t = transpose(g);
  ASSERT_EQ(t.n_rows, 3u);
  ASSERT_EQ(t.n_cols, 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(t.at(j, i).tokens, g.at(i, j).tokens);
}
