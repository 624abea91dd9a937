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

#include <filesystem>
#include <string>
#include <string_view>

#include "formforge/context.hpp"
#include "formforge/forms.hpp"

namespace formforge {

struct PromptSpec {
  /// The rendered template with the context slot left empty.
  std::string instruction;
  std::string target_effective_id;
  std::string context_html;
  /// count(instruction + context_html) under the tokenizer used to render.
  std::size_t token_estimate = 0;
  /// What is actually sent to the model: the template with both slots
  /// filled. Same bytes as instruction + context_html for the default
  /// template, since its context slot is last.
  std::string text;
};

/// A prompt template with `{effective_id}` and `{context}` placeholders.
/// A template without `{context}` gets the context appended after the
/// standard delimiter line.
class PromptTemplate {
 public:
  static constexpr std::string_view kIdSlot = "{effective_id}";
  static constexpr std::string_view kContextSlot = "{context}";
  static constexpr std::string_view kContextDelimiter = "--- HTML context ---\n";

  /// The built-in per-field instruction.
  static PromptTemplate standard();
  static PromptTemplate from_string(std::string body);
  /// Throws IoFailure when the file cannot be read.
  static PromptTemplate from_file(const std::filesystem::path& path);

  PromptSpec render(const FieldDescriptor& field, const ContextWindow& window,
                    const Tokenizer& tokenizer = HeuristicTokenizer()) const;

  const std::string& body() const noexcept { return body_; }

 private:
  explicit PromptTemplate(std::string body);

  std::string body_;
};

PromptSpec build_prompt(const FieldDescriptor& field, const ContextWindow& window);

}  // namespace formforge
