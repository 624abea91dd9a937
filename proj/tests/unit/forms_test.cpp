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

#include <gtest/gtest.h>

#include "formforge/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace formforge {
namespace {

std::vector<FieldDescriptor> detect(std::string_view src) { return detect_fields(html::parse_document(src)); }

TEST(FormsTest, PasswordDescriptor) {
  const auto fields = detect(R"(<form><input type="password" name="password" id="password"></form>)");
  ASSERT_EQ(fields.size(), 1u);
  EXPECT_EQ(fields[0].tag, FieldTag::kInput);
  EXPECT_EQ(fields[0].input_type, "password");
  EXPECT_EQ(fields[0].name, "password");
  EXPECT_EQ(fields[0].id, "password");
  EXPECT_EQ(fields[0].selector, "#password");
  EXPECT_EQ(fields[0].form_index, 0u);
}

TEST(FormsTest, NoTargets) { EXPECT_TRUE(detect("<p>no form here</p><select><option>a</select>").empty()); }

TEST(FormsTest, SelectAndButtonExcluded) {
  const auto fields = detect(
      "<input name=a><textarea name=t></textarea><select name=s></select>"
      "<button name=b>go</button><input name=c type=email>");
  ASSERT_EQ(fields.size(), 3u);
  EXPECT_EQ(fields[0].effective_id(), "a");
  EXPECT_EQ(fields[1].input_type, "textarea");
  EXPECT_EQ(fields[1].tag, FieldTag::kTextarea);
  EXPECT_EQ(fields[2].input_type, "email");
}

TEST(FormsTest, DefaultTypeIsText) {
  const auto fields = detect(R"(<input name=a><input name=b type=""><input name=c type=" EMAIL ">)");
  ASSERT_EQ(fields.size(), 3u);
  EXPECT_EQ(fields[0].input_type, "text");
  EXPECT_EQ(fields[1].input_type, "text");
  EXPECT_EQ(fields[2].input_type, "email");
}

TEST(FormsTest, VisibilityRules) {
  const auto fields = detect(
      R"(<input name=h1 type=hidden><input name=h2 hidden><input name=h3 aria-hidden="TRUE">)"
      R"(<input name=h4 style="color:red; DISPLAY : none"><input name=h5 style="visibility:hidden">)"
      R"(<textarea name=h6 hidden></textarea><input name=v1 aria-hidden="false"><input name=v2 style="display:block">)");
  ASSERT_EQ(fields.size(), 2u);
  EXPECT_EQ(fields[0].effective_id(), "v1");
  EXPECT_EQ(fields[1].effective_id(), "v2");
}

TEST(FormsTest, ConstraintAttributesCopiedVerbatim) {
  const auto fields = detect(
      R"(<input name=u minlength="3" maxlength=20 pattern="[a-z]+" placeholder="User name" required min=1 max=9 step=2 class=x>)");
  ASSERT_EQ(fields.size(), 1u);
  const std::map<std::string, std::string> expected{{"minlength", "3"}, {"maxlength", "20"},   {"pattern", "[a-z]+"},
                                                    {"placeholder", "User name"}, {"required", ""}, {"min", "1"},
                                                    {"max", "9"},          {"step", "2"}};
  EXPECT_EQ(fields[0].attributes, expected);
}

TEST(FormsTest, EffectiveIdFallbacks) {
  const auto fields = detect(R"(<div><input id="" name="q"><input><input id="x" name="y"></div>)");
  ASSERT_EQ(fields.size(), 3u);
  EXPECT_EQ(fields[0].effective_id(), "q");
  EXPECT_EQ(fields[1].effective_id(), fields[1].selector);
  EXPECT_EQ(fields[1].selector, "div:nth-of-type(1) > input:nth-of-type(2)");
  EXPECT_EQ(fields[2].effective_id(), "x");
}

TEST(FormsTest, FormIndex) {
  const auto fields = detect("<input name=a><form><input name=b></form><form><textarea name=c></textarea></form>");
  ASSERT_EQ(fields.size(), 3u);
  EXPECT_FALSE(fields[0].form_index.has_value());
  EXPECT_EQ(fields[1].form_index, 0u);
  EXPECT_EQ(fields[2].form_index, 1u);
}

TEST(FormsTest, ResolveSelector) {
  const html::Document doc = html::parse_document(
      R"(<form><div><input type="text" name="username"></div><div><input type="password" name="password" id="password"></div></form>)");
  const auto fields = detect_fields(doc);
  EXPECT_EQ(resolve_selector(doc, "#password").attr("name"), "password");
  EXPECT_EQ(&resolve_selector(doc, fields[0].selector), doc.elements()[2]);
  EXPECT_THROW(resolve_selector(doc, "#nonexistent"), SelectorNotFound);
  EXPECT_THROW(resolve_selector(doc, "form:nth-of-type(2)"), SelectorNotFound);
}

TEST(FormsTest, DuplicateIdsFallBackToPositionalSelectors) {
  const html::Document doc = html::parse_document(R"(<input id="dup" name="a"><input id="dup" name="b">)");
  const auto fields = detect_fields(doc);
  ASSERT_EQ(fields.size(), 2u);
  EXPECT_EQ(fields[0].selector, "input:nth-of-type(1)");
  EXPECT_EQ(fields[1].selector, "input:nth-of-type(2)");
  EXPECT_EQ(fields[0].effective_id(), "dup");
  EXPECT_THROW(resolve_selector(doc, "#dup"), SelectorAmbiguous);
}

TEST(FormsTest, NonIdentIdsUsePositionalSelectors) {
  const auto fields = detect(R"(<input id="user[email]"><input id="1abc">)");
  EXPECT_EQ(fields[0].selector, "input:nth-of-type(1)");
  EXPECT_EQ(fields[1].selector, "input:nth-of-type(2)");
}

// Count, order and effective ids agree with the raw tag scan; selectors
// resolve back to matching elements; re-detection after a round trip
// through the serializer is stable.
TEST(FormsTest, PropertyAgreesWithTagScanOracle) {
  testing::Gen g(2024);
  for (int round = 0; round < 400; ++round) {
    const std::string src = testing::random_form_document(g);
    const html::Document doc = html::parse_document(src);
    const auto fields = detect_fields(doc);
    const auto oracle = testing::scan_fields(src);
    ASSERT_EQ(fields.size(), oracle.size()) << src;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      EXPECT_EQ(std::string(to_string(fields[i].tag)), oracle[i].tag) << src;
      EXPECT_EQ(fields[i].input_type, oracle[i].type) << src;
      const auto expected_id = testing::scanned_effective_id(oracle[i]);
      EXPECT_EQ(fields[i].effective_id(), expected_id.value_or(fields[i].selector)) << src;

      const html::Node& node = resolve_selector(doc, fields[i].selector);
      EXPECT_EQ(node.tag(), std::string(to_string(fields[i].tag)));
      EXPECT_EQ(node.attr("name").has_value(), fields[i].name.has_value());
      if (fields[i].name) EXPECT_EQ(*node.attr("name"), *fields[i].name);
    }
    const auto again = detect_fields(html::parse_document(html::serialize(doc.root())));
    ASSERT_EQ(again.size(), fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      EXPECT_EQ(again[i].effective_id(), fields[i].effective_id());
      EXPECT_EQ(again[i].input_type, fields[i].input_type);
      EXPECT_EQ(again[i].attributes, fields[i].attributes);
    }
  }
}

}  // namespace
}  // namespace formforge
