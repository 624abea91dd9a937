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

#include "formforge/rules.hpp"

#include <gtest/gtest.h>

#include "formforge/validator.hpp"

namespace formforge {
namespace {

FieldDescriptor field(std::string type, std::map<std::string, std::string> attributes = {}, std::string id = "f") {
  FieldDescriptor f;
  f.tag = type == "textarea" ? FieldTag::kTextarea : FieldTag::kInput;
  f.input_type = std::move(type);
  f.id = id;
  f.selector = "#" + id;
  f.attributes = std::move(attributes);
  return f;
}

void expect_well_formed(const SuggestionRecord& r, const FieldDescriptor& f) {
  EXPECT_EQ(r.id, f.effective_id());
  ASSERT_EQ(r.examples.size(), kExamplesPerRecord);
  ASSERT_EQ(r.bad_examples.size(), kExamplesPerRecord);
  for (const auto& e : r.examples) EXPECT_TRUE(validate_value(e, f).valid) << f.input_type << ": " << e;
}

TEST(RulesTest, PasswordWithMinLength) {
  const auto f = field("password", {{"minlength", "8"}}, "password");
  const auto r = rule_based_generate(f);
  expect_well_formed(r, f);
  EXPECT_EQ(r.type, "password");
  for (const auto& e : r.examples) EXPECT_GE(e.size(), 8u);
  EXPECT_EQ(verify_bad_examples(r, f), std::vector<bool>(5, true));
  EXPECT_NE(r.constraints.find("at least 8 characters"), std::string::npos);
}

TEST(RulesTest, EmailExamplesHaveOneAt) {
  const auto f = field("email", {{"required", ""}});
  const auto r = rule_based_generate(f);
  expect_well_formed(r, f);
  for (const auto& e : r.examples) {
    const auto at = e.find('@');
    ASSERT_NE(at, std::string::npos) << e;
    EXPECT_EQ(e.find('@', at + 1), std::string::npos) << e;
    EXPECT_GT(at, 0u);
    EXPECT_LT(at + 1, e.size());
  }
  EXPECT_EQ(verify_bad_examples(r, f), std::vector<bool>(5, true));
}

TEST(RulesTest, UnconstrainedTextStartsBadListWithEmpty) {
  const auto f = field("text");
  const auto r = rule_based_generate(f);
  expect_well_formed(r, f);
  for (const auto& e : r.examples) EXPECT_FALSE(e.empty());
  EXPECT_EQ(r.bad_examples.front(), "");
}

TEST(RulesTest, TextareaType) {
  const auto f = field("textarea", {{"maxlength", "40"}});
  const auto r = rule_based_generate(f);
  expect_well_formed(r, f);
  EXPECT_EQ(r.type, "textarea");
  for (const auto& e : r.examples) EXPECT_LE(e.size(), 40u);
}

TEST(RulesTest, PatternFieldsSampleTheLanguage) {
  const auto f = field("text", {{"pattern", "[A-Z]{3}-\\d{4}"}, {"required", ""}});
  const auto r = rule_based_generate(f);
  expect_well_formed(r, f);
  EXPECT_EQ(verify_bad_examples(r, f), std::vector<bool>(5, true));
}

TEST(RulesTest, TypedFieldsProduceValidExamples) {
  const std::vector<FieldDescriptor> fields{
      field("number", {{"min", "18"}, {"max", "99"}}), field("url"), field("tel"), field("date"),
      field("time"), field("color"), field("search", {{"maxlength", "3"}}),
      field("text", {{"minlength", "12"}, {"maxlength", "14"}})};
  for (const auto& f : fields) expect_well_formed(rule_based_generate(f), f);
}

TEST(RulesTest, Deterministic) {
  const auto f = field("password", {{"minlength", "10"}, {"pattern", "[a-zA-Z0-9]+"}});
  EXPECT_EQ(rule_based_generate(f), rule_based_generate(f));
}

TEST(RulesTest, ConstrainedFieldsGetRejectedBadExamples) {
  const std::vector<FieldDescriptor> fields{field("text", {{"required", ""}, {"maxlength", "5"}}),
                                            field("number", {{"min", "1"}}), field("email"),
                                            field("text", {{"pattern", "\\d+"}})};
  for (const auto& f : fields) {
    const auto r = rule_based_generate(f);
    const auto rejected = verify_bad_examples(r, f);
    EXPECT_EQ(std::count(rejected.begin(), rejected.end(), true), 5) << f.input_type;
  }
}

TEST(RulesTest, DescribeConstraints) {
  EXPECT_EQ(describe_constraints(field("text")), "The field declares no validation constraints.");
  const auto d = describe_constraints(field("text", {{"required", ""}, {"maxlength", "20"}}));
  EXPECT_NE(d.find("required"), std::string::npos);
  EXPECT_NE(d.find("20"), std::string::npos);
}

}  // namespace
}  // namespace formforge
