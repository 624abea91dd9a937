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

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace formforge::html {

enum class NodeKind { kDocument, kElement, kText, kComment, kDoctype };

using Attribute = std::pair<std::string, std::string>;

/// One node of the parsed tree. Element tag and attribute names are
/// lower-cased; attribute values have character references decoded. Text,
/// comment and doctype nodes keep their source bytes untouched.
class Node {
 public:
  Node(NodeKind kind, std::string tag_or_text);

  NodeKind kind() const noexcept { return kind_; }
  bool is_element() const noexcept { return kind_ == NodeKind::kElement; }
  bool is_element(std::string_view tag) const noexcept {
    return kind_ == NodeKind::kElement && tag_ == tag;
  }

  /// Lower-case tag name; empty for non-element nodes.
  const std::string& tag() const noexcept { return tag_; }
  /// Raw data of text, comment and doctype nodes.
  const std::string& text() const noexcept { return text_; }

  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }
  std::optional<std::string_view> attr(std::string_view name) const;
  bool has_attr(std::string_view name) const { return attr(name).has_value(); }

  const Node* parent() const noexcept { return parent_; }
  const std::vector<std::unique_ptr<Node>>& children() const noexcept { return children_; }

  /// Number of element ancestors plus the document node.
  std::size_t depth() const noexcept;

 private:
  friend class TreeBuilder;

  Node* append(std::unique_ptr<Node> child);

  NodeKind kind_;
  std::string tag_;
  std::string text_;
  std::vector<Attribute> attributes_;
  Node* parent_ = nullptr;
  std::vector<std::unique_ptr<Node>> children_;
};

/// A parsed HTML document. Immutable after construction, so a const
/// Document can be shared freely across threads.
class Document {
 public:
  /// Parses arbitrary text. Never fails: malformed markup is recovered,
  /// tags left open at end of input are closed, and a tag truncated by the
  /// end of input is still emitted with the attributes read so far.
  static Document parse(std::string_view source);

  Document(Document&&) noexcept = default;
  Document& operator=(Document&&) noexcept = default;

  const Node& root() const noexcept { return *root_; }
  const std::string& source() const noexcept { return source_; }

  /// All element nodes in pre-order (document order).
  std::vector<const Node*> elements() const;

 private:
  Document() = default;

  std::string source_;
  std::unique_ptr<Node> root_;
};

inline Document parse_document(std::string_view source) { return Document::parse(source); }

/// Outer HTML of a node. For the document node this is the concatenation
/// of its children.
std::string serialize(const Node& node);

/// Calls `visit` for every element below `node` (exclusive) in pre-order.
void for_each_element(const Node& node, const std::function<void(const Node&)>& visit);

bool is_void_element(std::string_view tag);

/// Decodes `&amp;`-style named references (common subset) and numeric
/// references. Unknown or unterminated references are kept verbatim.
std::string decode_entities(std::string_view text);

std::string escape_attribute(std::string_view value);

}  // namespace formforge::html
