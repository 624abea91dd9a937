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

#include "formforge/prompt.hpp"

#include <fstream>
#include <sstream>

#include "formforge/errors.hpp"
#include "formforge/text.hpp"

namespace formforge {
namespace {

constexpr std::string_view kStandardTemplate =
    "Act as an HTML parser.\n"
    "For the \"{effective_id}\" element, create a JSON object with keys: name, id, type, "
    "constraints, examples, and bad_examples.\n"
    "\n"
    "- name: The value of the 'name' attribute.\n"
    "- id: The value of the 'id' attribute (use name if id is absent).\n"
    "- type: Input type (e.g., text, password) or 'textarea'.\n"
    "- constraints: Validation rules extracted from attributes like minlength, maxlength, "
    "pattern, or placeholder, written in English as complete sentences.\n"
    "- examples: Five example values that satisfy these constraints and would be accepted "
    "by the field's validation.\n"
    "- bad_examples: Five example values that violate these constraints and would be "
    "rejected (for negative testing).\n"
    "\n"
    "Process only the element with id \"{effective_id}\".\n"
    "\n"
    "--- HTML context ---\n"
    "{context}";

}  // namespace

PromptTemplate::PromptTemplate(std::string body) : body_(std::move(body)) {
  if (body_.find(kContextSlot) == std::string::npos) {
    if (!body_.empty() && body_.back() != '\n') body_ += '\n';
    body_ += "\n";
    body_ += kContextDelimiter;
    body_ += kContextSlot;
  }
}

PromptTemplate PromptTemplate::standard() { return PromptTemplate(std::string(kStandardTemplate)); }

PromptTemplate PromptTemplate::from_string(std::string body) { return PromptTemplate(std::move(body)); }

PromptTemplate PromptTemplate::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read prompt template " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return PromptTemplate(buffer.str());
}

PromptSpec PromptTemplate::render(const FieldDescriptor& field, const ContextWindow& window,
                                  const Tokenizer& tokenizer) const {
  PromptSpec spec;
  spec.target_effective_id = field.effective_id();
  spec.context_html = window.html;

  // Substitute the id first so an id containing "{context}" is not
  // mistaken for the slot.
  const std::size_t slot = body_.find(kContextSlot);
  const std::string before = text::replace_all(body_.substr(0, slot), kIdSlot, spec.target_effective_id);
  const std::string after =
      text::replace_all(body_.substr(slot + kContextSlot.size()), kIdSlot, spec.target_effective_id);

  spec.instruction = before + after;
  spec.text = before + spec.context_html + after;
  spec.token_estimate = tokenizer.count(spec.instruction + spec.context_html);
  return spec;
}

PromptSpec build_prompt(const FieldDescriptor& field, const ContextWindow& window) {
  return PromptTemplate::standard().render(field, window);
}

}  // namespace formforge
