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

#include "formforge/eval.hpp"

#include <algorithm>
#include <fstream>

#include <gtest/gtest.h>

#include "formforge/errors.hpp"
#include "support/generators.hpp"

namespace formforge::eval {
namespace {

SiteAnnotation site(std::string label, std::int64_t total, std::int64_t correct, std::int64_t missed,
                    std::int64_t incorrect, std::int64_t suboptimal) {
  return SiteAnnotation{std::move(label), total, correct, missed, incorrect, suboptimal, ""};
}

/// Half-up to one decimal from integers only: floor((2000 n + d) / (2 d)) / 10.
double rounded_percent_oracle(std::uint64_t n, std::uint64_t d) {
  return static_cast<double>((2000 * n + d) / (2 * d)) / 10.0;
}

TEST(EvalTest, TableThreeTotals) {
  const auto annotations = load_annotations(FORMFORGE_FIXTURES_DIR "/table3.json");
  ASSERT_EQ(annotations.size(), 10u);
  const auto counts = aggregate(annotations);
  EXPECT_EQ(counts, (EvalCounts{152, 7, 9, 3}));
  std::int64_t fields = 0;
  for (const auto& a : annotations) fields += a.fields_total;
  EXPECT_EQ(fields, 164);

  const auto m = compute_metrics(counts);
  EXPECT_EQ(m.accuracy.numerator, 159u);
  EXPECT_EQ(m.accuracy.denominator, 171u);
  EXPECT_EQ(m.precision.numerator, 152u);
  EXPECT_EQ(m.precision.denominator, 161u);
  EXPECT_EQ(m.recall.numerator, 152u);
  EXPECT_EQ(m.recall.denominator, 155u);
  EXPECT_NEAR(m.accuracy.percent(), 92.9, 0.1);
  EXPECT_NEAR(m.precision.percent(), 94.4, 0.1);
  EXPECT_NEAR(m.recall.percent(), 98.1, 0.1);
  EXPECT_DOUBLE_EQ(m.precision.percent_rounded(), 94.4);
  EXPECT_DOUBLE_EQ(m.recall.percent_rounded(), 98.1);
  // 159/171 = 92.98..., which rounds to 93.0.
  EXPECT_DOUBLE_EQ(m.accuracy.percent_rounded(), 93.0);
}

TEST(EvalTest, SingleSiteByHand) {
  const std::vector<SiteAnnotation> divar{site("Divar", 15, 14, 0, 0, 1)};
  const auto m = compute_metrics(aggregate(divar));
  EXPECT_DOUBLE_EQ(m.accuracy.percent_rounded(), 93.3);   // 14/15
  EXPECT_DOUBLE_EQ(m.precision.percent_rounded(), 93.3);  // 14/15
  EXPECT_DOUBLE_EQ(m.recall.percent_rounded(), 100.0);    // 14/14
}

TEST(EvalTest, PerfectAndEmpty) {
  const auto perfect = compute_metrics(EvalCounts{1, 0, 0, 0});
  EXPECT_DOUBLE_EQ(perfect.accuracy.value(), 1.0);
  EXPECT_DOUBLE_EQ(perfect.precision.value(), 1.0);
  EXPECT_DOUBLE_EQ(perfect.recall.value(), 1.0);

  const auto empty = compute_metrics(aggregate(std::vector<SiteAnnotation>{}));
  EXPECT_FALSE(empty.accuracy.applicable());
  EXPECT_FALSE(empty.precision.applicable());
  EXPECT_FALSE(empty.recall.applicable());
  EXPECT_THROW((void)empty.accuracy.value(), std::logic_error);

  // Only incorrectly detected elements: accuracy applies, the others do not.
  const auto only_tn = compute_metrics(EvalCounts{0, 4, 0, 0});
  EXPECT_DOUBLE_EQ(only_tn.accuracy.value(), 1.0);
  EXPECT_FALSE(only_tn.precision.applicable());
  EXPECT_FALSE(only_tn.recall.applicable());
}

TEST(EvalTest, HalfUpRounding) {
  EXPECT_DOUBLE_EQ((Ratio{1, 2000}).percent_rounded(), 0.1);  // 0.05 -> 0.1
  EXPECT_DOUBLE_EQ((Ratio{1, 3}).percent_rounded(), 33.3);
  EXPECT_DOUBLE_EQ((Ratio{2, 3}).percent_rounded(), 66.7);
  for (std::uint64_t d = 1; d <= 300; ++d) {
    for (std::uint64_t n = 0; n <= d; ++n) {
      ASSERT_DOUBLE_EQ((Ratio{n, d}).percent_rounded(), rounded_percent_oracle(n, d)) << n << "/" << d;
    }
  }
}

TEST(EvalTest, InvalidAnnotations) {
  EXPECT_THROW(check(site("x", 5, 4, 1, 0, 1), 0), InvalidAnnotation);
  EXPECT_THROW(check(site("x", 5, -1, 0, 0, 0), 0), InvalidAnnotation);
  EXPECT_NO_THROW(check(site("x", 5, 4, 1, 9, 0), 0));  // extra detections are not part of fields_total
  try {
    aggregate(std::vector<SiteAnnotation>{site("ok", 1, 1, 0, 0, 0), site("Bad", 1, 2, 0, 0, 0)});
    FAIL();
  } catch (const InvalidAnnotation& e) {
    EXPECT_NE(std::string(e.what()).find("Bad"), std::string::npos);
  }
  EXPECT_THROW(annotations_from_json(nlohmann::json::object()), InvalidAnnotation);
  EXPECT_THROW(annotations_from_json(nlohmann::json::parse(R"([{"fields_total": 3}])")), InvalidAnnotation);
  EXPECT_THROW(annotations_from_json(nlohmann::json::parse(R"([{"fields_total":"3","correct":0,"missed":0,
      "incorrectly_detected":0,"suboptimal":0}])")), InvalidAnnotation);
  EXPECT_THROW(load_annotations("/nonexistent/annotations.json"), IoFailure);
}

TEST(EvalTest, ReportTextAndJson) {
  const auto annotations = load_annotations(FORMFORGE_FIXTURES_DIR "/table3.json");
  const auto counts = aggregate(annotations);
  const auto report = render_report(annotations, counts, compute_metrics(counts));
  EXPECT_NE(report.text.find("Soft98"), std::string::npos);
  EXPECT_NE(report.text.find("Accuracy:  93.0% (159/171)"), std::string::npos);
  EXPECT_NE(report.text.find("Precision: 94.4% (152/161)"), std::string::npos);
  EXPECT_NE(report.text.find("Recall:    98.1% (152/155)"), std::string::npos);
  EXPECT_NE(report.text.find("TN=7 (incorrectly detected)"), std::string::npos);
  const auto& j = report.json;
  EXPECT_EQ(j["rows"].size(), 10u);
  EXPECT_EQ(j["totals"]["fields_total"], 164);
  EXPECT_EQ(j["totals"]["correct"], 152);
  EXPECT_EQ(j["totals"]["missed"], 3);
  EXPECT_EQ(j["totals"]["incorrectly_detected"], 7);
  EXPECT_EQ(j["totals"]["suboptimal"], 9);
  EXPECT_EQ(j["counts"]["tn"]["value"], 7);
  EXPECT_TRUE(j["counts"]["fp"].contains("definition"));
  EXPECT_EQ(j["metrics"]["recall"]["numerator"], 152);
  EXPECT_EQ(j["metrics"]["recall"]["percent"], 98.1);
  const auto empty = render_report({}, {}, compute_metrics({}));
  EXPECT_EQ(empty.json["metrics"]["accuracy"]["applicable"], false);
  EXPECT_NE(empty.text.find("n/a"), std::string::npos);
}

std::vector<SiteAnnotation> random_annotations(testing::Gen& g) {
  std::vector<SiteAnnotation> out;
  for (std::size_t n = g.range(0, 12); n > 0; --n) {
    const auto total = static_cast<std::int64_t>(g.range(0, 40));
    const auto correct = static_cast<std::int64_t>(g.range(0, static_cast<std::size_t>(total)));
    const auto missed = static_cast<std::int64_t>(g.range(0, static_cast<std::size_t>(total - correct)));
    const auto suboptimal = static_cast<std::int64_t>(g.range(0, static_cast<std::size_t>(total - correct - missed)));
    out.push_back(site(g.word(), total, correct, missed, static_cast<std::int64_t>(g.range(0, 5)), suboptimal));
  }
  return out;
}

TEST(EvalTest, PropertyPermutationAndAdditivity) {
  testing::Gen g(99);
  for (int round = 0; round < 500; ++round) {
    auto a = random_annotations(g);
    const auto b = random_annotations(g);
    const auto counts_a = aggregate(a);
    auto joined = a;
    joined.insert(joined.end(), b.begin(), b.end());
    EXPECT_EQ(aggregate(joined), counts_a + aggregate(b));
    std::shuffle(a.begin(), a.end(), g.engine());
    EXPECT_EQ(aggregate(a), counts_a);
    const auto m = compute_metrics(counts_a);
    for (const Ratio& r : {m.accuracy, m.precision, m.recall}) {
      EXPECT_LE(r.numerator, r.denominator);
      if (r.applicable()) {
        EXPECT_GE(r.value(), 0.0);
        EXPECT_LE(r.value(), 1.0);
      }
    }
  }
}

}  // namespace
}  // namespace formforge::eval
