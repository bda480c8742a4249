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

#include <set>

#include "webtab/error.hpp"
#include "webtab/extract.hpp"

using namespace webtab;

namespace {

RawPage page(std::string html, std::string id = "p") { return {std::move(id), "http://x/", std::move(html)}; }

std::string grid_html(std::size_t rows, std::size_t cols) {
  std::string s = "<table>";
  for (std::size_t i = 0; i < rows; ++i) {
    s += "<tr>";
    for (std::size_t j = 0; j < cols; ++j) s += "<td>" + std::to_string(i * cols + j) + "</td>";
    s += "</tr>";
  }
  return s + "</table>";
}

}  // namespace

TEST(Extract, OnlyLeafTableFromNestedLayout) {
  const auto r = extract_tables(page("<table><tr><td>" + grid_html(3, 3) + "</td><td>side</td></tr>"
                                     "<tr><td>a</td><td>b</td></tr></table>"));
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_EQ(r.tables[0].table_id, "p#1");
  EXPECT_EQ(r.tables[0].row_count, 3u);
  EXPECT_EQ(r.tables[0].col_count, 3u);
}

TEST(Extract, SingleRowTablePruned) {
  EXPECT_TRUE(extract_tables(page(grid_html(1, 5))).tables.empty());
  EXPECT_TRUE(extract_tables(page(grid_html(5, 1))).tables.empty());
}

TEST(Extract, TwoByTwoKept) {
  const auto r = extract_tables(page(grid_html(2, 2)));
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_EQ(r.tables[0].table_id, "p#0");
  EXPECT_EQ(r.tables[0].page_id, "p");
}

TEST(Extract, ThresholdsConfigurable) {
  EXPECT_EQ(extract_tables(page(grid_html(1, 5)), 1, 2).tables.size(), 1u);
  EXPECT_TRUE(extract_tables(page(grid_html(2, 2)), 3, 2).tables.empty());
  EXPECT_THROW(extract_tables(page(grid_html(2, 2)), 0, 2), UsageError);
  EXPECT_THROW(extract_tables(page(grid_html(2, 2)), 2, 0), UsageError);
}

TEST(Extract, SpansCountTowardDimensions) {
  // One physical column, but the colspan makes the grid two wide.
  const auto r = extract_tables(page("<table><tr><td colspan=2>a</td></tr><tr><td>b</td></tr></table>"));
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_EQ(r.tables[0].col_count, 2u);
  // A rowspan stretches a single row to two.
  const auto s = extract_tables(page("<table><tr><td rowspan=2>a</td><td>b</td></tr></table>"));
  EXPECT_TRUE(s.tables.empty());
}

TEST(Extract, RaggedRowsUseWidestRow) {
  const auto r = extract_tables(page("<table><tr><td>a</td></tr><tr><td>b</td><td>c</td><td>d</td></tr></table>"));
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_EQ(r.tables[0].col_count, 3u);
  EXPECT_EQ(r.tables[0].row_count, 2u);
}

TEST(Extract, IdsIndexAllTablesInDocumentOrder) {
  const auto r = extract_tables(page(grid_html(1, 1) + grid_html(2, 2) + grid_html(3, 2)));
  ASSERT_EQ(r.tables.size(), 2u);
  EXPECT_EQ(r.tables[0].table_id, "p#1");
  EXPECT_EQ(r.tables[1].table_id, "p#2");
}

TEST(Extract, FragmentsAreLeafTables) {
  const auto r = extract_tables(page("<table><tr><td>" + grid_html(2, 2) + grid_html(2, 3) +
                                     "</td></tr></table>"));
  ASSERT_EQ(r.tables.size(), 2u);
  for (const auto& t : r.tables) {
    auto doc = html::parse(t.html_fragment);
    std::size_t tables = 0;
    html::walk_elements(*doc.root, [&](const html::Node& e) {
      tables += e.is("table");
      return true;
    });
    EXPECT_EQ(tables, 1u);
  }
}

TEST(Extract, UnparseableDocumentYieldsDiagnostic) {
  const auto r = extract_tables(page(std::string("<table>\0</table>", 16)));
  EXPECT_TRUE(r.tables.empty());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].subject, "p");
}

TEST(Extract, StableAcrossReruns) {
  const RawPage p = page(grid_html(2, 2) + grid_html(3, 3));
  const auto a = extract_tables(p), b = extract_tables(p);
  ASSERT_EQ(a.tables.size(), b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) {
    EXPECT_EQ(a.tables[i].table_id, b.tables[i].table_id);
    EXPECT_EQ(a.tables[i].html_fragment, b.tables[i].html_fragment);
  }
}

TEST(PageText, Examples) {
  EXPECT_EQ(extract_page_text(page("<p>hello</p>" + grid_html(2, 2))).text, "hello");
  EXPECT_EQ(extract_page_text(page("<body>" + grid_html(2, 2) + "</body>")).text, "");
  EXPECT_EQ(extract_page_text(page("<p>Call now.</p>" + grid_html(2, 2) + "<p>Great deal!</p>")).text,
            "Call now. Great deal!");
}

TEST(PageText, ExcludesHeadScriptAndTables) {
  const auto t = extract_page_text(page(
      "<html><head><title>Title</title><style>p{}</style></head><body><script>var a;</script>"
      "<div>keep <b>this</b></div><table><tr><td>cellonly</td></tr></table></body></html>"));
  EXPECT_EQ(t.text, "keep this");
}

TEST(PageText, SharesNoTokenWithCellsUnlessOutside) {
  const RawPage p = page("<p>alpha shared</p><table><tr><td>beta</td><td>shared</td></tr>"
                         "<tr><td>gamma</td><td>delta</td></tr></table>");
  const std::string text = extract_page_text(p).text;
  EXPECT_EQ(text.find("beta"), std::string::npos);
  EXPECT_EQ(text.find("gamma"), std::string::npos);
  EXPECT_NE(text.find("shared"), std::string::npos);
}

TEST(Layout, RowspanZeroAndOverlongExtendToLastRow) {
  auto doc = html::parse("<table><tr><td rowspan=0>a</td><td>b</td></tr><tr><td>c</td></tr>"
                         "<tr><td rowspan=9>d</td></tr></table>");
  const html::Node* table = nullptr;
  html::walk_elements(*doc.root, [&](const html::Node& e) {
    if (e.is("table")) table = &e;
    return true;
  });
  ASSERT_NE(table, nullptr);
  const TableLayout l = layout_table(*table);
  EXPECT_EQ(l.rows, 3u);
  EXPECT_EQ(l.cols, 2u);
  EXPECT_EQ(l.slots[2][0], l.slots[0][0]);
  EXPECT_EQ(l.slots[1][0], l.slots[0][0]);
}
