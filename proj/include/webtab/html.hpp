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

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// A small tolerant HTML tree builder. It follows the browser recovery rules
// that matter for table extraction (implied cell/row ends, implicit rows,
// raw-text elements, foster-parented table text) and ignores the rest of
// the HTML5 insertion-mode machinery.
namespace webtab::html {

struct Node {
  enum class Kind { document, element, text };

  Kind kind = Kind::element;
  std::string tag;  // lowercase; elements only
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // decoded; text nodes only
  std::vector<std::unique_ptr<Node>> children;
  Node* parent = nullptr;

  bool is(std::string_view name) const { return kind == Kind::element && tag == name; }
  const std::string* attribute(std::string_view name) const;
};

struct Document {
  std::unique_ptr<Node> root;
  bool ok = true;
  std::vector<std::string> diagnostics;
};

inline constexpr std::size_t kMaxDepth = 512;

// Never throws. Input is decoded as UTF-8 with lossy replacement. A document
// is rejected (ok == false, empty root) when it contains NUL bytes or nests
// deeper than kMaxDepth.
Document parse(std::string_view html);

bool is_void_element(std::string_view tag);

// Serializes the subtree rooted at node. Reparsing the output reproduces the
// same element structure.
std::string outer_html(const Node& node);

struct TextOptions {
  bool skip_tables = false;
  bool skip_head = false;
};

// Text a browser would render for the subtree: script/style/template content
// dropped, block boundaries and <br> become spaces, whitespace collapsed.
std::string rendered_text(const Node& node, TextOptions opts = {});

// Preorder walk over element nodes. Returning false from the visitor skips
// that element's children.
void walk_elements(const Node& node, const std::function<bool(const Node&)>& visit);

bool has_descendant(const Node& node, std::string_view tag);

}  // namespace webtab::html
