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

#include "formforge/forms.hpp"

#include <charconv>
#include <unordered_map>

#include <fmt/format.h>

#include "formforge/errors.hpp"
#include "formforge/text.hpp"

namespace formforge {
namespace {

bool is_simple_ident(std::string_view s) {
  if (s.empty()) return false;
  const auto head_ok = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!head_ok(s.front())) return false;
  for (const char c : s) {
    if (!head_ok(c) && !(c >= '0' && c <= '9') && c != '-') return false;
  }
  return true;
}

std::string compact_lower(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out.push_back(text::ascii_lower(c));
  }
  return out;
}

struct Step {
  std::string tag;
  std::optional<std::size_t> nth;  // 1-based; nullopt means every match
};

std::optional<Step> parse_step(std::string_view step) {
  step = text::trim(step);
  if (step.empty()) return std::nullopt;
  Step out;
  const std::size_t colon = step.find(':');
  out.tag = text::to_lower(step.substr(0, colon));
  if (out.tag.empty()) return std::nullopt;
  if (colon == std::string_view::npos) return out;
  constexpr std::string_view kNth = ":nth-of-type(";
  if (step.substr(colon, kNth.size()) != kNth || step.back() != ')') return std::nullopt;
  const std::string_view digits = step.substr(colon + kNth.size(), step.size() - colon - kNth.size() - 1);
  std::size_t k = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || k == 0) return std::nullopt;
  out.nth = k;
  return out;
}

}  // namespace

std::string_view to_string(FieldTag tag) {
  return tag == FieldTag::kTextarea ? "textarea" : "input";
}

std::string FieldDescriptor::effective_id() const {
  if (id && !id->empty()) return *id;
  if (name && !name->empty()) return *name;
  return selector;
}

std::optional<std::string_view> FieldDescriptor::attribute(std::string_view key) const {
  const auto it = attributes.find(std::string(key));
  if (it == attributes.end()) return std::nullopt;
  return std::string_view(it->second);
}

bool is_statically_hidden(const html::Node& element) {
  if (element.is_element("input")) {
    if (const auto type = element.attr("type"); type && text::iequals(text::trim(*type), "hidden")) return true;
  }
  if (element.has_attr("hidden")) return true;
  if (const auto aria = element.attr("aria-hidden"); aria && text::iequals(text::trim(*aria), "true")) return true;
  if (const auto style = element.attr("style")) {
    const std::string css = compact_lower(*style);
    if (css.find("display:none") != std::string::npos || css.find("visibility:hidden") != std::string::npos) {
      return true;
    }
  }
  return false;
}

std::string positional_selector(const html::Node& element) {
  std::vector<std::string> steps;
  for (const html::Node* node = &element; node->parent() != nullptr; node = node->parent()) {
    std::size_t nth = 0;
    for (const auto& sibling : node->parent()->children()) {
      if (sibling->is_element(node->tag())) ++nth;
      if (sibling.get() == node) break;
    }
    steps.push_back(fmt::format("{}:nth-of-type({})", node->tag(), nth));
  }
  std::string out;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (!out.empty()) out += " > ";
    out += *it;
  }
  return out;
}

std::vector<FieldDescriptor> detect_fields(const html::Document& doc) {
  const std::vector<const html::Node*> elements = doc.elements();

  std::unordered_map<std::string, std::size_t> id_counts;
  for (const html::Node* e : elements) {
    if (const auto id = e->attr("id")) ++id_counts[std::string(*id)];
  }

  std::vector<FieldDescriptor> fields;
  std::size_t forms_seen = 0;
  std::unordered_map<const html::Node*, std::size_t> form_index;
  for (const html::Node* e : elements) {
    if (e->is_element("form")) form_index.emplace(e, forms_seen++);
    const bool is_input = e->is_element("input");
    if (!is_input && !e->is_element("textarea")) continue;
    if (is_statically_hidden(*e)) continue;

    FieldDescriptor field;
    field.tag = is_input ? FieldTag::kInput : FieldTag::kTextarea;
    if (is_input) {
      const auto type = e->attr("type");
      const std::string lowered = type ? text::to_lower(text::trim(*type)) : std::string();
      field.input_type = lowered.empty() ? "text" : lowered;
    } else {
      field.input_type = "textarea";
    }
    if (const auto name = e->attr("name")) field.name = std::string(*name);
    if (const auto id = e->attr("id")) field.id = std::string(*id);
    for (const std::string_view key : kConstraintAttributes) {
      if (const auto value = e->attr(key)) field.attributes.emplace(key, *value);
    }
    if (field.id && id_counts[*field.id] == 1 && is_simple_ident(*field.id)) {
      field.selector = "#" + *field.id;
    } else {
      field.selector = positional_selector(*e);
    }
    for (const html::Node* p = e->parent(); p != nullptr; p = p->parent()) {
      if (const auto it = form_index.find(p); it != form_index.end()) {
        field.form_index = it->second;
        break;
      }
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

const html::Node& resolve_selector(const html::Document& doc, std::string_view selector) {
  selector = text::trim(selector);
  std::vector<const html::Node*> matches;
  if (!selector.empty() && selector.front() == '#') {
    const std::string_view id = selector.substr(1);
    for (const html::Node* e : doc.elements()) {
      if (e->attr("id") == id) matches.push_back(e);
    }
  } else {
    std::vector<const html::Node*> frontier{&doc.root()};
    std::size_t start = 0;
    while (start <= selector.size() && !frontier.empty()) {
      const std::size_t gt = selector.find('>', start);
      const std::string_view raw =
          selector.substr(start, gt == std::string_view::npos ? std::string_view::npos : gt - start);
      const auto step = parse_step(raw);
      if (!step) throw SelectorNotFound(fmt::format("unsupported selector '{}'", selector));
      std::vector<const html::Node*> next;
      for (const html::Node* parent : frontier) {
        std::size_t nth = 0;
        for (const auto& child : parent->children()) {
          if (!child->is_element(step->tag)) continue;
          ++nth;
          if (!step->nth || *step->nth == nth) next.push_back(child.get());
        }
      }
      frontier = std::move(next);
      if (gt == std::string_view::npos) break;
      start = gt + 1;
    }
    matches = std::move(frontier);
  }
  if (matches.empty()) throw SelectorNotFound(fmt::format("no element matches '{}'", selector));
  if (matches.size() > 1) {
    throw SelectorAmbiguous(fmt::format("{} elements match '{}'", matches.size(), selector));
  }
  return *matches.front();
}

}  // namespace formforge
