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

#include "webtab/html.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "webtab/text.hpp"

namespace webtab::html {
namespace {

using Set = std::unordered_set<std::string_view>;

const Set& void_elements() {
  static const Set s = {"area", "base", "br", "col", "embed", "hr", "img", "input",
                        "link", "meta", "param", "source", "track", "wbr", "keygen"};
  return s;
}

// Content parsed verbatim up to the matching end tag.
const Set& raw_text_elements() {
  static const Set s = {"script", "style", "xmp", "iframe", "noembed", "noframes",
                        "noscript", "plaintext"};
  return s;
}

// Verbatim except for character references.
const Set& rcdata_elements() {
  static const Set s = {"title", "textarea"};
  return s;
}

const Set& closes_p() {
  static const Set s = {"address", "article", "aside", "blockquote", "center", "details",
                        "dialog", "dir", "div", "dl", "fieldset", "figcaption", "figure",
                        "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header",
                        "hgroup", "hr", "li", "main", "menu", "nav", "ol", "p", "pre",
                        "section", "summary", "table", "ul", "dd", "dt"};
  return s;
}

const Set& head_content() {
  static const Set s = {"title", "meta", "link", "script", "style", "base", "noscript",
                        "template"};
  return s;
}

const Set& table_context() {
  static const Set s = {"table", "tbody", "thead", "tfoot", "tr"};
  return s;
}

const Set& block_elements() {
  static const Set s = {
      "address", "article", "aside",  "blockquote", "body",    "caption", "center",
      "dd",      "details", "dialog", "dir",        "div",     "dl",      "dt",
      "fieldset", "figcaption", "figure", "footer", "form",   "h1",      "h2",
      "h3",      "h4",      "h5",     "h6",         "header",  "hgroup",  "hr",
      "html",    "li",      "main",   "menu",       "nav",     "ol",      "option",
      "p",       "pre",     "section", "summary",   "table",   "tbody",   "td",
      "tfoot",   "th",      "thead",  "title",      "tr",      "ul",      "select"};
  return s;
}

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> m = {
      {"amp", U'&'},     {"lt", U'<'},       {"gt", U'>'},      {"quot", U'"'},
      {"apos", U'\''},   {"nbsp", 0xA0},     {"copy", 0xA9},    {"reg", 0xAE},
      {"trade", 0x2122}, {"ndash", 0x2013},  {"mdash", 0x2014}, {"hellip", 0x2026},
      {"laquo", 0xAB},   {"raquo", 0xBB},    {"lsquo", 0x2018}, {"rsquo", 0x2019},
      {"ldquo", 0x201C}, {"rdquo", 0x201D},  {"bull", 0x2022},  {"middot", 0xB7},
      {"deg", 0xB0},     {"plusmn", 0xB1},   {"times", 0xD7},   {"divide", 0xF7},
      {"euro", 0x20AC},  {"pound", 0xA3},    {"yen", 0xA5},     {"cent", 0xA2},
      {"sect", 0xA7},    {"para", 0xB6},     {"frac12", 0xBD},  {"frac14", 0xBC},
      {"frac34", 0xBE},  {"sup2", 0xB2},     {"sup3", 0xB3},    {"eacute", 0xE9},
      {"egrave", 0xE8},  {"aacute", 0xE1},   {"agrave", 0xE0},  {"oacute", 0xF3},
      {"uacute", 0xFA},  {"iacute", 0xED},   {"ntilde", 0xF1},  {"uuml", 0xFC},
      {"ouml", 0xF6},    {"auml", 0xE4},     {"ccedil", 0xE7},  {"szlig", 0xDF},
      {"ensp", 0x2002},  {"emsp", 0x2003},   {"thinsp", 0x2009}, {"shy", 0xAD},
      {"larr", 0x2190},  {"rarr", 0x2192},   {"uarr", 0x2191},  {"darr", 0x2193},
  };
  return m;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_alnum(char c) { return is_alpha(c) || (c >= '0' && c <= '9'); }

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out += s[i++];
      continue;
    }
    std::size_t j = i + 1;
    if (j < s.size() && s[j] == '#') {
      ++j;
      bool hex = j < s.size() && (s[j] == 'x' || s[j] == 'X');
      if (hex) ++j;
      std::size_t start = j;
      std::uint64_t cp = 0;
      while (j < s.size() && j - start < 8) {
        char c = s[j];
        int digit = -1;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (hex && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        if (digit < 0) break;
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint64_t>(digit);
        ++j;
      }
      if (j == start) {
        out += s[i++];
        continue;
      }
      if (j < s.size() && s[j] == ';') ++j;
      if (cp == 0) cp = 0xFFFD;
      text::append_utf8(out, static_cast<char32_t>(std::min<std::uint64_t>(cp, 0x110000)));
      i = j;
      continue;
    }
    std::size_t start = j;
    while (j < s.size() && is_alnum(s[j]) && j - start < 10) ++j;
    std::string_view name = s.substr(start, j - start);
    bool terminated = j < s.size() && s[j] == ';';
    auto it = named_entities().find(name);
    const bool legacy = name == "amp" || name == "lt" || name == "gt" || name == "quot" ||
                        name == "nbsp";
    if (it != named_entities().end() && (terminated || legacy)) {
      text::append_utf8(out, it->second);
      i = terminated ? j + 1 : j;
    } else {
      out += s[i++];
    }
  }
  return out;
}

bool iequals_prefix(std::string_view haystack, std::size_t pos, std::string_view needle) {
  if (pos + needle.size() > haystack.size()) return false;
  for (std::size_t k = 0; k < needle.size(); ++k) {
    char a = haystack[pos + k];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
    if (a != needle[k]) return false;
  }
  return true;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(Document& doc) : doc_(doc) {
    doc_.root = std::make_unique<Node>();
    doc_.root->kind = Node::Kind::document;
    stack_.push_back(doc_.root.get());
  }

  bool failed() const { return failed_; }

  void text(std::string decoded) {
    if (decoded.empty()) return;
    Node* cur = current();
    if (cur->kind == Node::Kind::element && table_context().count(cur->tag)) {
      const bool blank = std::all_of(decoded.begin(), decoded.end(), is_space);
      if (blank) return;
      foster_text(std::move(decoded));
      return;
    }
    if (!cur->children.empty() && cur->children.back()->kind == Node::Kind::text) {
      cur->children.back()->text += decoded;
      return;
    }
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::text;
    node->text = std::move(decoded);
    append(std::move(node));
  }

  // Returns the inserted element (nullptr for ignored tags).
  Node* start_tag(std::string tag, std::vector<std::pair<std::string, std::string>> attrs) {
    if (tag == "html" || tag == "body" || tag == "head") {
      if (tag == "body") close_if_open("head");
      if (is_open(tag)) return nullptr;
    } else if (current()->is("head") && !head_content().count(tag)) {
      pop_through("head");
    }

    if (tag == "td" || tag == "th") {
      close_in_table_scope({"td", "th"});
      Node* cur = current();
      if (cur->is("table") || cur->is("tbody") || cur->is("thead") || cur->is("tfoot")) {
        push_element("tr", {});
      }
    } else if (tag == "tr") {
      close_in_table_scope({"td", "th", "tr"});
    } else if (tag == "tbody" || tag == "thead" || tag == "tfoot") {
      close_in_table_scope({"td", "th", "tr", "tbody", "thead", "tfoot"});
    } else if (tag == "table") {
      Node* cur = current();
      if (cur->kind == Node::Kind::element && table_context().count(cur->tag)) {
        pop_through("table");
      }
    } else if (tag == "li") {
      close_in_scope("li", {"ul", "ol", "table", "td", "th"});
    } else if (tag == "dt" || tag == "dd") {
      close_in_scope("dt", {"dl", "table", "td", "th"});
      close_in_scope("dd", {"dl", "table", "td", "th"});
    } else if (tag == "option") {
      close_in_scope("option", {"select", "table", "td", "th"});
    } else if (tag == "a") {
      close_in_scope("a", {"table", "td", "th"});
    }
    if (closes_p().count(tag)) close_in_scope("p", {"table", "td", "th", "button"});

    if (void_elements().count(tag)) {
      auto node = make_element(std::move(tag), std::move(attrs));
      Node* raw = node.get();
      append(std::move(node));
      return raw;
    }
    return push_element(std::move(tag), std::move(attrs));
  }

  void end_tag(std::string_view tag) {
    if (tag == "html" || tag == "body" || void_elements().count(tag)) return;
    static const Set structural = {"td", "th", "tr", "tbody", "thead", "tfoot", "caption"};
    static const Set cell_boundary = {"td", "th", "table", "caption"};
    for (std::size_t k = stack_.size(); k-- > 1;) {
      Node* n = stack_[k];
      if (n->tag == tag) {
        stack_.resize(k);
        return;
      }
      if (tag == "table") continue;
      if (structural.count(tag)) {
        if (n->tag == "table") return;
      } else if (cell_boundary.count(n->tag)) {
        return;
      }
    }
  }

 private:
  Node* current() { return stack_.back(); }

  static std::unique_ptr<Node> make_element(
      std::string tag, std::vector<std::pair<std::string, std::string>> attrs) {
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::element;
    node->tag = std::move(tag);
    node->attributes = std::move(attrs);
    return node;
  }

  void append(std::unique_ptr<Node> node) {
    node->parent = current();
    current()->children.push_back(std::move(node));
  }

  Node* push_element(std::string tag, std::vector<std::pair<std::string, std::string>> attrs) {
    if (stack_.size() > kMaxDepth) {
      if (!failed_) doc_.diagnostics.push_back("nesting deeper than " + std::to_string(kMaxDepth));
      failed_ = true;
      return nullptr;
    }
    auto node = make_element(std::move(tag), std::move(attrs));
    Node* raw = node.get();
    append(std::move(node));
    stack_.push_back(raw);
    return raw;
  }

  bool is_open(std::string_view tag) const {
    return std::any_of(stack_.begin(), stack_.end(), [&](const Node* n) { return n->tag == tag; });
  }

  void close_if_open(std::string_view tag) {
    if (is_open(tag)) pop_through(tag);
  }

  void pop_through(std::string_view tag) {
    for (std::size_t k = stack_.size(); k-- > 1;) {
      if (stack_[k]->tag == tag) {
        stack_.resize(k);
        return;
      }
    }
  }

  void close_in_scope(std::string_view tag, std::initializer_list<std::string_view> boundary) {
    for (std::size_t k = stack_.size(); k-- > 1;) {
      const std::string& t = stack_[k]->tag;
      if (t == tag) {
        stack_.resize(k);
        return;
      }
      if (std::find(boundary.begin(), boundary.end(), t) != boundary.end()) return;
    }
  }

  // Pops the innermost open element among `tags` if it is inside the
  // current table.
  void close_in_table_scope(std::initializer_list<std::string_view> tags) {
    for (std::size_t k = stack_.size(); k-- > 1;) {
      const std::string& t = stack_[k]->tag;
      if (t == "table") return;
      if (std::find(tags.begin(), tags.end(), t) != tags.end()) {
        stack_.resize(k);
        return;
      }
    }
  }

  void foster_text(std::string decoded) {
    for (std::size_t k = stack_.size(); k-- > 1;) {
      Node* table = stack_[k];
      if (!table->is("table")) continue;
      Node* parent = table->parent;
      auto pos = std::find_if(parent->children.begin(), parent->children.end(),
                              [&](const auto& c) { return c.get() == table; });
      if (pos != parent->children.begin() && (*(pos - 1))->kind == Node::Kind::text) {
        (*(pos - 1))->text += decoded;
        return;
      }
      auto node = std::make_unique<Node>();
      node->kind = Node::Kind::text;
      node->text = std::move(decoded);
      node->parent = parent;
      parent->children.insert(pos, std::move(node));
      return;
    }
  }

  Document& doc_;
  std::vector<Node*> stack_;
  bool failed_ = false;
};

class Tokenizer {
 public:
  Tokenizer(std::string_view src, TreeBuilder& builder) : src_(src), builder_(builder) {}

  void run() {
    while (pos_ < src_.size() && !builder_.failed()) {
      if (src_[pos_] == '<' && try_markup()) continue;
      ++pos_;
    }
    if (!builder_.failed()) flush_text(src_.size());
  }

 private:
  // On success the pending tag has been emitted and pos_ advanced.
  bool try_markup() {
    const std::size_t lt = pos_;
    if (src_.compare(lt, 4, "<!--") == 0) {
      flush_text(lt);
      std::size_t end = src_.find("-->", lt + 4);
      pos_ = end == std::string_view::npos ? src_.size() : end + 3;
      text_from_ = pos_;
      return true;
    }
    if (lt + 1 < src_.size() && (src_[lt + 1] == '!' || src_[lt + 1] == '?')) {
      flush_text(lt);
      std::size_t end = src_.find('>', lt + 2);
      pos_ = end == std::string_view::npos ? src_.size() : end + 1;
      text_from_ = pos_;
      return true;
    }
    if (lt + 2 < src_.size() && src_[lt + 1] == '/' && is_alpha(src_[lt + 2])) {
      flush_text(lt);
      std::size_t i = lt + 2;
      std::size_t name_start = i;
      while (i < src_.size() && !is_space(src_[i]) && src_[i] != '>' && src_[i] != '/') ++i;
      std::string name = text::to_lower_ascii(src_.substr(name_start, i - name_start));
      std::size_t end = src_.find('>', i);
      pos_ = end == std::string_view::npos ? src_.size() : end + 1;
      text_from_ = pos_;
      builder_.end_tag(name);
      return true;
    }
    if (lt + 1 < src_.size() && is_alpha(src_[lt + 1])) {
      flush_text(lt);
      start_tag(lt + 1);
      return true;
    }
    return false;
  }

  void start_tag(std::size_t i) {
    std::size_t name_start = i;
    while (i < src_.size() && !is_space(src_[i]) && src_[i] != '>' && src_[i] != '/') ++i;
    std::string name = text::to_lower_ascii(src_.substr(name_start, i - name_start));
    std::vector<std::pair<std::string, std::string>> attrs;
    while (i < src_.size()) {
      while (i < src_.size() && (is_space(src_[i]) || src_[i] == '/')) ++i;
      if (i >= src_.size() || src_[i] == '>') break;
      std::size_t an = i;
      while (i < src_.size() && !is_space(src_[i]) && src_[i] != '=' && src_[i] != '>' &&
             !(src_[i] == '/' && i > an)) {
        ++i;
      }
      std::string attr_name = text::to_lower_ascii(src_.substr(an, i - an));
      while (i < src_.size() && is_space(src_[i])) ++i;
      std::string value;
      if (i < src_.size() && src_[i] == '=') {
        ++i;
        while (i < src_.size() && is_space(src_[i])) ++i;
        if (i < src_.size() && (src_[i] == '"' || src_[i] == '\'')) {
          const char q = src_[i++];
          std::size_t vend = src_.find(q, i);
          if (vend == std::string_view::npos) vend = src_.size();
          value = decode_entities(src_.substr(i, vend - i));
          i = vend == src_.size() ? vend : vend + 1;
        } else {
          std::size_t vs = i;
          while (i < src_.size() && !is_space(src_[i]) && src_[i] != '>') ++i;
          value = decode_entities(src_.substr(vs, i - vs));
        }
      }
      const bool dup = std::any_of(attrs.begin(), attrs.end(),
                                   [&](const auto& a) { return a.first == attr_name; });
      if (!attr_name.empty() && !dup) attrs.emplace_back(std::move(attr_name), std::move(value));
    }
    pos_ = i < src_.size() ? i + 1 : src_.size();
    text_from_ = pos_;

    Node* el = builder_.start_tag(name, std::move(attrs));
    const bool raw = raw_text_elements().count(name) > 0;
    const bool rcdata = rcdata_elements().count(name) > 0;
    if (raw || rcdata) {
      const std::string close = "</" + name;
      std::size_t end = pos_;
      while (true) {
        end = src_.find("</", end);
        if (end == std::string_view::npos || iequals_prefix(src_, end, close)) break;
        end += 2;
      }
      if (end == std::string_view::npos) end = src_.size();
      std::string_view body = src_.substr(pos_, end - pos_);
      if (el != nullptr && !body.empty()) {
        builder_.text(rcdata ? decode_entities(body) : std::string(body));
      }
      if (end < src_.size()) {
        std::size_t gt = src_.find('>', end);
        pos_ = gt == std::string_view::npos ? src_.size() : gt + 1;
      } else {
        pos_ = src_.size();
      }
      if (el != nullptr) builder_.end_tag(name);
      text_from_ = pos_;
    }
  }

  void flush_text(std::size_t upto) {
    if (upto > text_from_) builder_.text(decode_entities(src_.substr(text_from_, upto - text_from_)));
    text_from_ = upto;
  }

  std::string_view src_;
  TreeBuilder& builder_;
  std::size_t pos_ = 0;
  std::size_t text_from_ = 0;
};

void escape_into(std::string& out, std::string_view s, bool attribute) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
        } else {
          out += c;
        }
        break;
      default: out += c;
    }
  }
}

void serialize(const Node& node, std::string& out) {
  switch (node.kind) {
    case Node::Kind::text: {
      const Node* p = node.parent;
      if (p != nullptr && raw_text_elements().count(p->tag)) {
        out += node.text;
      } else {
        escape_into(out, node.text, false);
      }
      return;
    }
    case Node::Kind::document:
      for (const auto& c : node.children) serialize(*c, out);
      return;
    case Node::Kind::element:
      out += '<';
      out += node.tag;
      for (const auto& [name, value] : node.attributes) {
        out += ' ';
        out += name;
        out += "=\"";
        escape_into(out, value, true);
        out += '"';
      }
      out += '>';
      if (void_elements().count(node.tag)) return;
      for (const auto& c : node.children) serialize(*c, out);
      out += "</";
      out += node.tag;
      out += '>';
      return;
  }
}

void collect_text(const Node& node, const TextOptions& opts, std::string& out) {
  if (node.kind == Node::Kind::text) {
    out += node.text;
    return;
  }
  if (node.kind == Node::Kind::element) {
    if (raw_text_elements().count(node.tag) || node.tag == "template") return;
    if (opts.skip_tables && node.tag == "table") return;
    if (opts.skip_head && node.tag == "head") return;
    if (node.tag == "br") {
      out += '\n';
      return;
    }
  }
  const bool block = node.kind == Node::Kind::element && block_elements().count(node.tag) > 0;
  if (block) out += ' ';
  for (const auto& c : node.children) collect_text(*c, opts, out);
  if (block) out += ' ';
}

}  // namespace

const std::string* Node::attribute(std::string_view name) const {
  for (const auto& [k, v] : attributes) {
    if (k == name) return &v;
  }
  return nullptr;
}

bool is_void_element(std::string_view tag) { return void_elements().count(tag) > 0; }

Document parse(std::string_view html) {
  Document doc;
  if (html.find('\0') != std::string_view::npos) {
    doc.root = std::make_unique<Node>();
    doc.root->kind = Node::Kind::document;
    doc.ok = false;
    doc.diagnostics.push_back("document contains NUL bytes; not HTML text");
    return doc;
  }
  const std::string clean = text::sanitize_utf8(html);
  TreeBuilder builder(doc);
  Tokenizer(clean, builder).run();
  if (builder.failed()) {
    doc.ok = false;
    doc.root->children.clear();
  }
  return doc;
}

std::string outer_html(const Node& node) {
  std::string out;
  serialize(node, out);
  return out;
}

std::string rendered_text(const Node& node, TextOptions opts) {
  std::string raw;
  collect_text(node, opts, raw);
  return text::collapse_whitespace(raw);
}

void walk_elements(const Node& node, const std::function<bool(const Node&)>& visit) {
  for (const auto& c : node.children) {
    if (c->kind != Node::Kind::element) continue;
    if (visit(*c)) walk_elements(*c, visit);
  }
}

bool has_descendant(const Node& node, std::string_view tag) {
  bool found = false;
  walk_elements(node, [&](const Node& n) {
    if (found) return false;
    if (n.tag == tag) found = true;
    return !found;
  });
  return found;
}

}  // namespace webtab::html
