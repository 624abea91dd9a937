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

#include "formforge/context.hpp"

#include <map>
#include <mutex>

#include <fmt/format.h>

#include "formforge/errors.hpp"
#include "formforge/text.hpp"

namespace formforge {
namespace {

class ByteTokenizer final : public Tokenizer {
 public:
  std::size_t count(std::string_view text) const override { return text.size(); }
  std::string name() const override { return "plugin:bytes"; }
};

class ScalarTokenizer final : public Tokenizer {
 public:
  std::size_t count(std::string_view text) const override { return text::scalar_length(text); }
  std::string name() const override { return "plugin:chars"; }
};

struct Registry {
  std::mutex mutex;
  std::map<std::string, TokenizerFactory> factories{
      {"bytes", [] { return std::make_shared<const ByteTokenizer>(); }},
      {"chars", [] { return std::make_shared<const ScalarTokenizer>(); }},
  };
};

Registry& registry() {
  static Registry instance;
  return instance;
}

}  // namespace

std::size_t count_tokens(std::string_view text) { return HeuristicTokenizer().count(text); }

void register_tokenizer(const std::string& name, TokenizerFactory factory) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  reg.factories[name] = std::move(factory);
}

std::vector<std::string> registered_tokenizers() {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  std::vector<std::string> names;
  for (const auto& [name, _] : reg.factories) names.push_back(name);
  return names;
}

std::shared_ptr<const Tokenizer> make_tokenizer(std::string_view spec) {
  if (spec.empty() || spec == "heuristic") return std::make_shared<const HeuristicTokenizer>();
  constexpr std::string_view kPrefix = "plugin:";
  if (spec.substr(0, kPrefix.size()) == kPrefix) {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    const auto it = reg.factories.find(std::string(spec.substr(kPrefix.size())));
    if (it != reg.factories.end()) return it->second();
    throw InvalidConfig(fmt::format("unknown tokenizer plugin '{}'", spec.substr(kPrefix.size())));
  }
  throw InvalidConfig(fmt::format("tokenizer must be 'heuristic' or 'plugin:<name>', got '{}'", spec));
}

std::size_t TokenBudget::effective() const {
  if (limit <= headroom) {
    throw InvalidConfig(fmt::format("token limit {} must exceed headroom {}", limit, headroom));
  }
  return limit - headroom;
}

ContextWindow extract_context(const html::Document& doc, const FieldDescriptor& field,
                              const TokenBudget& budget, const Tokenizer& tokenizer) {
  const std::size_t allowed = budget.effective();
  const html::Node& target = resolve_selector(doc, field.selector);

  ContextWindow window;
  window.target_selector = field.selector;
  window.html = html::serialize(target);
  window.token_count = tokenizer.count(window.html);
  if (window.token_count > allowed) {
    throw ElementTooLarge(fmt::format("field '{}' alone needs {} tokens, budget is {}",
                                      field.effective_id(), window.token_count, allowed));
  }

  // Every ancestor's serialization contains its child's, so with a
  // monotone tokenizer the first ancestor that overflows ends the ascent.
  std::size_t depth = 0;
  for (const html::Node* node = target.parent(); node != nullptr; node = node->parent()) {
    ++depth;
    std::string candidate = html::serialize(*node);
    const std::size_t tokens = tokenizer.count(candidate);
    if (tokens > allowed) break;
    window.html = std::move(candidate);
    window.token_count = tokens;
    window.ancestor_depth = depth;
  }
  return window;
}

}  // namespace formforge
