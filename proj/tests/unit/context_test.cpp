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

#include <gtest/gtest.h>

#include "formforge/errors.hpp"
#include "support/generators.hpp"

namespace formforge {
namespace {

// Independent ceil(bytes / 4).
std::size_t oracle_tokens(std::string_view s) { return s.size() / 4 + (s.size() % 4 != 0 ? 1 : 0); }

TEST(ContextTest, CountTokens) {
  EXPECT_EQ(count_tokens(""), 0u);
  EXPECT_EQ(count_tokens("abcd"), 1u);
  EXPECT_EQ(count_tokens("abcde"), 2u);
  EXPECT_EQ(count_tokens(std::string(1000, 'x')), 250u);
}

TEST(ContextTest, TokenizerRegistry) {
  EXPECT_EQ(make_tokenizer("heuristic")->count("abcdefgh"), 2u);
  EXPECT_EQ(make_tokenizer("plugin:bytes")->count("\xD8\xB3" "ab"), 4u);
  EXPECT_EQ(make_tokenizer("plugin:chars")->count("\xD8\xB3" "ab"), 3u);
  EXPECT_THROW(make_tokenizer("plugin:nope"), InvalidConfig);
  EXPECT_THROW(make_tokenizer("tiktoken"), InvalidConfig);

  struct Words final : Tokenizer {
    std::size_t count(std::string_view text) const override {
      return static_cast<std::size_t>(std::count(text.begin(), text.end(), ' ')) + (text.empty() ? 0 : 1);
    }
    std::string name() const override { return "words"; }
  };
  register_tokenizer("words", [] { return std::make_shared<Words>(); });
  EXPECT_EQ(make_tokenizer("plugin:words")->count("a b c"), 3u);
  const auto names = registered_tokenizers();
  EXPECT_NE(std::find(names.begin(), names.end(), "words"), names.end());
}

TEST(ContextTest, BudgetValidation) {
  EXPECT_EQ((TokenBudget{}.effective()), 126000u);
  EXPECT_THROW((TokenBudget{100, 100}.effective()), InvalidConfig);
  EXPECT_THROW((TokenBudget{0, 0}.effective()), InvalidConfig);
}

TEST(ContextTest, LargeBudgetTakesWholeDocument) {
  const std::string src = "<html><body><form><div><input name=\"a\"></div></form></body></html>";
  const html::Document doc = html::parse_document(src);
  const auto field = detect_fields(doc).front();
  const ContextWindow w = extract_context(doc, field, TokenBudget{});
  EXPECT_EQ(w.html, src);
  // input -> div -> form -> body -> html -> document
  EXPECT_EQ(w.ancestor_depth, 5u);
  EXPECT_EQ(w.token_count, oracle_tokens(src));
  EXPECT_EQ(w.target_selector, field.selector);
}

TEST(ContextTest, ParentDivWithLabelFitsButGrandparentDoesNot) {
  const std::string parent =
      R"(<div class="row"><label for="password">Password:</label>)"
      R"(<input type="password" name="password" id="password" minlength="8"></div>)";
  const std::string src = "<form><p>" + std::string(400, 'z') + "</p>" + parent + "</form>";
  const html::Document doc = html::parse_document(src);
  const auto fields = detect_fields(doc);
  const TokenBudget budget{oracle_tokens(parent) + 10, 10};
  const ContextWindow w = extract_context(doc, fields.front(), budget);
  EXPECT_EQ(w.html, parent);
  EXPECT_EQ(w.ancestor_depth, 1u);
  EXPECT_NE(w.html.find("Password:"), std::string::npos);
}

TEST(ContextTest, BudgetAdmittingExactlyThreeLevels) {
  // Five nested divs; each level adds padding so every ancestor is larger.
  std::vector<std::string> levels{R"(<input name="deep">)"};
  for (int k = 1; k <= 5; ++k) {
    levels.push_back("<div>" + std::string(static_cast<std::size_t>(20 * k), 'p') + levels.back() + "</div>");
  }
  const html::Document doc = html::parse_document(levels.back());
  const auto field = detect_fields(doc).front();
  // Oracle: the highest level whose token count fits is level 3.
  const TokenBudget budget{oracle_tokens(levels[3]) + 50, 50};
  ASSERT_GT(oracle_tokens(levels[4]), budget.effective());
  const ContextWindow w = extract_context(doc, field, budget);
  EXPECT_EQ(w.ancestor_depth, 3u);
  EXPECT_EQ(w.html, levels[3]);
}

TEST(ContextTest, ElementTooLarge) {
  const html::Document doc = html::parse_document(R"(<input name="a" placeholder=")" + std::string(100, 'x') + "\">");
  const auto field = detect_fields(doc).front();
  EXPECT_THROW(extract_context(doc, field, TokenBudget{20, 0}), ElementTooLarge);
}

TEST(ContextTest, CustomTokenizerChangesWindow) {
  const std::string src = "<div><span>ab</span><input name=a></div>";
  const html::Document doc = html::parse_document(src);
  const auto field = detect_fields(doc).front();
  const auto bytes = make_tokenizer("plugin:bytes");
  // `<input name="a">` is 16 bytes; the parent div is 41.
  const ContextWindow w = extract_context(doc, field, TokenBudget{16, 0}, *bytes);
  EXPECT_EQ(w.html, "<input name=\"a\">");
  EXPECT_EQ(w.token_count, 16u);
  EXPECT_EQ(extract_context(doc, field, TokenBudget{16, 0}).ancestor_depth, 2u);
}

// Budget safety, containment, maximality and monotonicity on random trees.
TEST(ContextTest, PropertyBudgetWindow) {
  testing::Gen g(99);
  for (int round = 0; round < 300; ++round) {
    const std::string src = testing::random_nested_document(g);
    const html::Document doc = html::parse_document(src);
    const auto fields = detect_fields(doc);
    ASSERT_FALSE(fields.empty());
    const auto& field = fields[g.range(0, fields.size() - 1)];
    const html::Node& target = resolve_selector(doc, field.selector);
    const std::string outer = html::serialize(target);

    std::size_t previous_depth = 0;
    std::string previous_html;
    std::size_t limit = oracle_tokens(outer) + g.range(0, 5);
    const std::size_t headroom = g.range(0, 3);
    for (int step = 0; step < 6; ++step, limit += g.range(1, oracle_tokens(src) / 3 + 1)) {
      const TokenBudget budget{limit + headroom, headroom};
      const ContextWindow w = extract_context(doc, field, budget);
      EXPECT_LE(w.token_count, limit);
      EXPECT_EQ(w.token_count, oracle_tokens(w.html));
      EXPECT_NE(w.html.find(outer), std::string::npos);
      // Maximality: the next ancestor up would overflow.
      const html::Node* root = &target;
      for (std::size_t k = 0; k < w.ancestor_depth; ++k) root = root->parent();
      EXPECT_EQ(html::serialize(*root), w.html);
      if (root->parent() != nullptr) EXPECT_GT(oracle_tokens(html::serialize(*root->parent())), limit);
      // Monotonicity under budget growth.
      EXPECT_GE(w.ancestor_depth, previous_depth);
      EXPECT_NE(w.html.find(previous_html), std::string::npos);
      previous_depth = w.ancestor_depth;
      previous_html = w.html;
    }
  }
}

}  // namespace
}  // namespace formforge
