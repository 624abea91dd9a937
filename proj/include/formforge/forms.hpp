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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formforge/html.hpp"

namespace formforge {

enum class FieldTag { kInput, kTextarea };

std::string_view to_string(FieldTag tag);

/// Attributes copied verbatim into FieldDescriptor::attributes.
inline constexpr std::array<std::string_view, 8> kConstraintAttributes = {
    "minlength", "maxlength", "pattern", "placeholder", "required", "min", "max", "step"};

/// A fillable field found in a document.
struct FieldDescriptor {
  FieldTag tag = FieldTag::kInput;
  /// Lower-cased `type` attribute; "text" when absent or empty, "textarea"
  /// for textarea elements.
  std::string input_type = "text";
  std::optional<std::string> name;
  std::optional<std::string> id;
  /// Resolves to exactly this element via resolve_selector().
  std::string selector;
  std::map<std::string, std::string> attributes;
  std::optional<std::size_t> form_index;

  /// id if present, else name, else the selector. This is the key that
  /// joins descriptors, suggestion records and plan entries.
  std::string effective_id() const;

  std::optional<std::string_view> attribute(std::string_view key) const;
  bool has_attribute(std::string_view key) const { return attribute(key).has_value(); }

  bool operator==(const FieldDescriptor&) const = default;
};

/// True when the static visibility rules exclude the element: input type
/// hidden, a `hidden` attribute, aria-hidden="true", or an inline style
/// with display:none or visibility:hidden on the element itself.
bool is_statically_hidden(const html::Node& element);

/// Every visible input and textarea in document order.
std::vector<FieldDescriptor> detect_fields(const html::Document& doc);

/// Resolves a selector emitted by detect_fields(). Supported forms are
/// `#ident` and a `>`-separated chain of `tag:nth-of-type(k)` steps from the
/// document root. Throws SelectorNotFound or SelectorAmbiguous.
const html::Node& resolve_selector(const html::Document& doc, std::string_view selector);

/// Positional selector for an element, independent of ids.
std::string positional_selector(const html::Node& element);

}  // namespace formforge
