/*
 * Copyright 2026 The FormForge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "formforge/html.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>

#include "formforge/text.hpp"

namespace formforge::html {
namespace {

constexpr std::array kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr", "keygen"};

// Content of these elements is read verbatim up to the matching end tag.
constexpr std::array kRawTextElements = {
    "script", "style", "xmp", "iframe", "noembed", "noframes",
    "noscript", "textarea", "title"};

constexpr std::array kClosesParagraph = {
    "address", "article", "aside", "blockquote", "center", "details",
    "dialog", "dir", "div", "dl", "fieldset", "figcaption", "figure",
    "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header",
    "hgroup", "hr", "li", "dd", "dt", "main", "menu", "nav", "ol", "p",
    "pre", "section", "summary", "table", "ul"};

constexpr std::array kScopeBoundaries = {
    "applet", "caption", "html", "table", "td", "th", "marquee",
    "object", "template", "button", "svg", "math"};

template <std::size_t N>
bool contains(const std::array<const char*, N>& set, std::string_view tag) {
  return std::any_of(set.begin(), set.end(),
                     [&](const char* s) { return tag == s; });
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool istarts_with(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (text::ascii_lower(text[pos + i]) != prefix[i]) return false;
  }
  return true;
}

struct Tag {
  std::string name;
  std::vector<Attribute> attributes;
  bool self_closing = false;
};

}  // namespace

Node::Node(NodeKind kind, std::string tag_or_text) : kind_(kind) {
  if (kind == NodeKind::kElement) {
    tag_ = std::move(tag_or_text);
  } else {
    text_ = std::move(tag_or_text);
  }
}

std::optional<std::string_view> Node::attr(std::string_view name) const {
  for (const auto& [key, value] : attributes_) {
    if (key == name) return std::string_view(value);
  }
  return std::nullopt;
}

std::size_t Node::depth() const noexcept {
  std::size_t d = 0;
  for (const Node* p = parent_; p != nullptr; p = p->parent_) ++d;
  return d;
}

Node* Node::append(std::unique_ptr<Node> child) {
  child->parent_ = this;
  children_.push_back(std::move(child));
  return children_.back().get();
}

// Tokenizer and tree construction in one pass. The recovery rules are a
// pragmatic subset of the HTML5 tree builder: void elements never take
// children, a handful of start tags implicitly close open siblings (p, li,
// option, table rows and cells), unmatched end tags are dropped and
// everything still open at end of input is closed.
class TreeBuilder {
 public:
  TreeBuilder(std::string_view src, Node& root) : src_(src) { stack_.push_back(&root); }

  void run() {
    std::size_t text_start = pos_;
    auto flush_text = [&](std::size_t end) {
      if (end > text_start) {
        current()->append(std::make_unique<Node>(
            NodeKind::kText, std::string(src_.substr(text_start, end - text_start))));
      }
    };
    while (pos_ < src_.size()) {
      if (src_[pos_] != '<') {
        ++pos_;
        continue;
      }
      const std::size_t lt = pos_;
      if (src_.compare(pos_, 4, "<!--") == 0) {
        flush_text(lt);
        read_comment();
      } else if (pos_ + 1 < src_.size() && (src_[pos_ + 1] == '!' || src_[pos_ + 1] == '?')) {
        flush_text(lt);
        read_declaration();
      } else if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        if (pos_ + 2 < src_.size() && is_alpha(src_[pos_ + 2])) {
          flush_text(lt);
          pos_ += 2;
          handle_end_tag(read_tag_name());
          skip_past('>');
        } else if (pos_ + 2 < src_.size() && src_[pos_ + 2] == '>') {
          flush_text(lt);
          pos_ += 3;
        } else if (pos_ + 2 < src_.size()) {
          // "</" followed by a non-letter is a bogus comment.
          flush_text(lt);
          pos_ += 2;
          const std::size_t end = src_.find('>', pos_);
          const std::size_t stop = end == std::string_view::npos ? src_.size() : end;
          current()->append(std::make_unique<Node>(
              NodeKind::kComment, std::string(src_.substr(pos_, stop - pos_))));
          pos_ = end == std::string_view::npos ? src_.size() : end + 1;
        } else {
          ++pos_;
          continue;
        }
      } else if (pos_ + 1 < src_.size() && is_alpha(src_[pos_ + 1])) {
        flush_text(lt);
        ++pos_;
        handle_start_tag(read_start_tag());
      } else {
        ++pos_;
        continue;
      }
      text_start = pos_;
    }
    flush_text(src_.size());
  }

 private:
  Node* current() const { return stack_.back(); }

  void read_comment() {
    pos_ += 4;
    const std::size_t end = src_.find("-->", pos_);
    const std::size_t stop = end == std::string_view::npos ? src_.size() : end;
    current()->append(std::make_unique<Node>(
        NodeKind::kComment, std::string(src_.substr(pos_, stop - pos_))));
    pos_ = end == std::string_view::npos ? src_.size() : end + 3;
  }

  void read_declaration() {
    const bool doctype = istarts_with(src_, pos_, "<!doctype");
    pos_ += 2;
    const std::size_t start = pos_;
    skip_past('>');
    std::size_t stop = pos_;
    if (stop > start && src_[stop - 1] == '>') --stop;
    std::string body(src_.substr(start, stop - start));
    if (doctype) {
      current()->append(std::make_unique<Node>(NodeKind::kDoctype, std::move(body)));
    } else {
      // <?xml ...> and <![CDATA[ ...]]> become comments, as in HTML.
      current()->append(std::make_unique<Node>(NodeKind::kComment, std::move(body)));
    }
  }

  void skip_past(char c) {
    const std::size_t end = src_.find(c, pos_);
    pos_ = end == std::string_view::npos ? src_.size() : end + 1;
  }

  std::string read_tag_name() {
    std::string name;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '/' && src_[pos_] != '>') {
      name.push_back(text::ascii_lower(src_[pos_]));
      ++pos_;
    }
    return name;
  }

  Tag read_start_tag() {
    Tag tag;
    tag.name = read_tag_name();
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (is_space(c)) {
        ++pos_;
        continue;
      }
      if (c == '>') {
        ++pos_;
        return tag;
      }
      if (c == '/') {
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '>') {
          tag.self_closing = true;
          ++pos_;
          return tag;
        }
        continue;
      }
      std::string name;
      name.push_back(text::ascii_lower(c));
      ++pos_;
      while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '/' &&
             src_[pos_] != '>' && src_[pos_] != '=') {
        name.push_back(text::ascii_lower(src_[pos_]));
        ++pos_;
      }
      std::size_t look = pos_;
      while (look < src_.size() && is_space(src_[look])) ++look;
      std::string value;
      if (look < src_.size() && src_[look] == '=') {
        pos_ = look + 1;
        while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
          const char quote = src_[pos_++];
          const std::size_t end = src_.find(quote, pos_);
          const std::size_t stop = end == std::string_view::npos ? src_.size() : end;
          value = decode_entities(src_.substr(pos_, stop - pos_));
          pos_ = end == std::string_view::npos ? src_.size() : end + 1;
        } else {
          const std::size_t start = pos_;
          while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>') ++pos_;
          value = decode_entities(src_.substr(start, pos_ - start));
        }
      }
      const bool duplicate = std::any_of(tag.attributes.begin(), tag.attributes.end(),
                                         [&](const Attribute& a) { return a.first == name; });
      if (!duplicate) tag.attributes.emplace_back(std::move(name), std::move(value));
    }
    return tag;  // truncated by end of input; still emitted
  }

  // Index in the stack of the nearest open `tag`, searching down to the
  // first scope boundary. Returns 0 (the document) when not in scope.
  std::size_t find_in_scope(std::string_view tag, bool list_scope = false, bool table_scope = false) const {
    for (std::size_t i = stack_.size() - 1; i > 0; --i) {
      const std::string& open = stack_[i]->tag();
      if (open == tag) return i;
      if (table_scope) {
        if (open == "table" || open == "template") return 0;
        continue;
      }
      if (contains(kScopeBoundaries, open)) return 0;
      if (list_scope && (open == "ol" || open == "ul")) return 0;
    }
    return 0;
  }

  void pop_through(std::size_t index) {
    if (index > 0) stack_.resize(index);
  }

  bool in_foreign_content() const {
    return std::any_of(stack_.begin() + 1, stack_.end(), [](const Node* n) {
      return n->tag() == "svg" || n->tag() == "math";
    });
  }

  void handle_start_tag(Tag tag) {
    const std::string& name = tag.name;
    if (contains(kClosesParagraph, name)) pop_through(find_in_scope("p"));
    if (name == "li") {
      pop_through(find_in_scope("li", /*list_scope=*/true));
    } else if (name == "dd" || name == "dt") {
      pop_through(std::max(find_in_scope("dd"), find_in_scope("dt")));
    } else if (name == "option" || name == "optgroup") {
      if (current()->tag() == "option") stack_.pop_back();
      if (name == "optgroup" && current()->tag() == "optgroup") stack_.pop_back();
    } else if (name == "tr") {
      pop_through(find_in_scope("tr", false, /*table_scope=*/true));
    } else if (name == "td" || name == "th") {
      pop_through(std::max(find_in_scope("td", false, true), find_in_scope("th", false, true)));
    } else if (name == "thead" || name == "tbody" || name == "tfoot") {
      for (const char* t : {"thead", "tbody", "tfoot"}) pop_through(find_in_scope(t, false, true));
    } else if (name.size() == 2 && name[0] == 'h' && name[1] >= '1' && name[1] <= '6') {
      const std::string& cur = current()->tag();
      if (cur.size() == 2 && cur[0] == 'h' && cur[1] >= '1' && cur[1] <= '6') stack_.pop_back();
    } else if (name == "button") {
      pop_through(find_in_scope("button"));
    } else if (name == "form") {
      // Nested forms are dropped; their content joins the open form.
      const bool form_open = std::any_of(stack_.begin() + 1, stack_.end(),
                                         [](const Node* n) { return n->tag() == "form"; });
      if (form_open) return;
    }

    auto element = std::make_unique<Node>(NodeKind::kElement, name);
    element->attributes_ = std::move(tag.attributes);
    Node* inserted = current()->append(std::move(element));

    if (is_void_element(name)) return;
    if (contains(kRawTextElements, name)) {
      read_raw_text(*inserted);
      return;
    }
    if (name == "plaintext") {
      if (pos_ < src_.size()) {
        inserted->append(std::make_unique<Node>(NodeKind::kText, std::string(src_.substr(pos_))));
      }
      pos_ = src_.size();
      return;
    }
    if (tag.self_closing && (in_foreign_content() || name == "svg" || name == "math")) return;
    stack_.push_back(inserted);
  }

  void read_raw_text(Node& element) {
    const std::string closing = "</" + element.tag();
    std::size_t search = pos_;
    std::size_t end = std::string_view::npos;
    while (search < src_.size()) {
      const std::size_t lt = src_.find('<', search);
      if (lt == std::string_view::npos) break;
      if (istarts_with(src_, lt, closing)) {
        const std::size_t after = lt + closing.size();
        if (after >= src_.size() || is_space(src_[after]) || src_[after] == '>' || src_[after] == '/') {
          end = lt;
          break;
        }
      }
      search = lt + 1;
    }
    const std::size_t stop = end == std::string_view::npos ? src_.size() : end;
    if (stop > pos_) {
      element.append(std::make_unique<Node>(NodeKind::kText, std::string(src_.substr(pos_, stop - pos_))));
    }
    pos_ = stop;
    if (end != std::string_view::npos) skip_past('>');
  }

  void handle_end_tag(const std::string& name) {
    if (name.empty() || is_void_element(name)) return;
    for (std::size_t i = stack_.size() - 1; i > 0; --i) {
      if (stack_[i]->tag() == name) {
        stack_.resize(i);
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Node*> stack_;
};

Document Document::parse(std::string_view source) {
  Document doc;
  doc.source_ = std::string(source);
  doc.root_ = std::make_unique<Node>(NodeKind::kDocument, std::string());
  TreeBuilder builder(doc.source_, *doc.root_);
  builder.run();
  return doc;
}

std::vector<const Node*> Document::elements() const {
  std::vector<const Node*> out;
  for_each_element(*root_, [&](const Node& n) { out.push_back(&n); });
  return out;
}

void for_each_element(const Node& node, const std::function<void(const Node&)>& visit) {
  // Iterative pre-order walk; real-world pages nest deep enough that
  // recursion depth is worth avoiding.
  std::vector<std::pair<const Node*, std::size_t>> stack{{&node, 0}};
  while (!stack.empty()) {
    auto& [parent, next] = stack.back();
    if (next == parent->children().size()) {
      stack.pop_back();
      continue;
    }
    const Node* child = parent->children()[next++].get();
    if (child->is_element()) {
      visit(*child);
      stack.emplace_back(child, 0);
    }
  }
}

bool is_void_element(std::string_view tag) { return contains(kVoidElements, tag); }

namespace {

void serialize_into(const Node& node, std::string& out) {
  switch (node.kind()) {
    case NodeKind::kText:
      out += node.text();
      return;
    case NodeKind::kComment:
      out += "<!--";
      out += node.text();
      out += "-->";
      return;
    case NodeKind::kDoctype:
      out += "<!";
      out += node.text();
      out += ">";
      return;
    case NodeKind::kDocument:
      for (const auto& child : node.children()) serialize_into(*child, out);
      return;
    case NodeKind::kElement:
      break;
  }
  out += '<';
  out += node.tag();
  for (const auto& [name, value] : node.attributes()) {
    out += ' ';
    out += name;
    out += "=\"";
    out += escape_attribute(value);
    out += '"';
  }
  out += '>';
  if (is_void_element(node.tag())) return;
  for (const auto& child : node.children()) serialize_into(*child, out);
  out += "</";
  out += node.tag();
  out += '>';
}

struct NamedEntity {
  std::string_view name;
  std::string_view utf8;
};

constexpr std::array<NamedEntity, 14> kNamedEntities = {{
    {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"},
    {"nbsp", "\xC2\xA0"}, {"copy", "\xC2\xA9"}, {"reg", "\xC2\xAE"},
    {"hellip", "\xE2\x80\xA6"}, {"mdash", "\xE2\x80\x94"}, {"ndash", "\xE2\x80\x93"},
    {"laquo", "\xC2\xAB"}, {"raquo", "\xC2\xBB"}, {"zwnj", "\xE2\x80\x8C"},
}};

}  // namespace

std::string serialize(const Node& node) {
  std::string out;
  serialize_into(node, out);
  return out;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    const std::string_view ref = text.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (ref.size() > 1 && ref[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = ref[1] == 'x' || ref[1] == 'X';
      const std::string_view digits = ref.substr(hex ? 2 : 1);
      const auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
        if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
        text::append_utf8(out, cp);
        decoded = true;
      }
    } else {
      for (const auto& entity : kNamedEntities) {
        if (entity.name == ref) {
          out += entity.utf8;
          decoded = true;
          break;
        }
      }
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

std::string escape_attribute(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (const char c : value) {
    if (c == '&') {
      out += "&amp;";
    } else if (c == '"') {
      out += "&quot;";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace formforge::html
