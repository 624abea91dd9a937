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

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "formforge/forms.hpp"
#include "formforge/html.hpp"

namespace formforge {

/// Token counter. Implementations must be deterministic and monotone under
/// concatenation: count(a + b) >= count(a).
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::size_t count(std::string_view text) const = 0;
  virtual std::string name() const = 0;
};

/// ceil(bytes / 4).
class HeuristicTokenizer final : public Tokenizer {
 public:
  std::size_t count(std::string_view text) const override { return (text.size() + 3) / 4; }
  std::string name() const override { return "heuristic"; }
};

std::size_t count_tokens(std::string_view text);

using TokenizerFactory = std::function<std::shared_ptr<const Tokenizer>()>;

/// Makes `plugin:<name>` resolvable by make_tokenizer(). Built-in plugins:
/// `bytes` (one token per byte) and `chars` (one per Unicode scalar value).
void register_tokenizer(const std::string& name, TokenizerFactory factory);
std::vector<std::string> registered_tokenizers();

/// Accepts "heuristic" or "plugin:<name>". Throws InvalidConfig otherwise.
std::shared_ptr<const Tokenizer> make_tokenizer(std::string_view spec);

struct TokenBudget {
  std::size_t limit = 128000;
  std::size_t headroom = 2000;

  /// Throws InvalidConfig unless limit > headroom.
  std::size_t effective() const;
};

struct ContextWindow {
  std::string html;
  std::size_t token_count = 0;
  /// Ancestor levels above the target included in `html`; 0 is the
  /// element alone. The document node counts as the topmost level.
  std::size_t ancestor_depth = 0;
  std::string target_selector;
};

/// Ascends from the field's element and returns the serialization of the
/// highest ancestor whose full subtree fits the effective budget. Throws
/// ElementTooLarge when the element itself does not fit.
ContextWindow extract_context(const html::Document& doc, const FieldDescriptor& field,
                              const TokenBudget& budget,
                              const Tokenizer& tokenizer = HeuristicTokenizer());

}  // namespace formforge
