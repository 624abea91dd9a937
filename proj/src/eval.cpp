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
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "formforge/errors.hpp"

namespace formforge::eval {
namespace {

std::string label_of(const SiteAnnotation& a, std::size_t index) {
  return a.site_label.empty() ? fmt::format("#{}", index) : fmt::format("#{} ({})", index, a.site_label);
}

nlohmann::json ratio_json(const Ratio& r) {
  if (!r.applicable()) return {{"applicable", false}, {"numerator", r.numerator}, {"denominator", 0}};
  return {{"applicable", true},
          {"numerator", r.numerator},
          {"denominator", r.denominator},
          {"value", r.value()},
          {"percent", r.percent_rounded()}};
}

std::string ratio_text(const Ratio& r) {
  if (!r.applicable()) return "n/a (zero denominator)";
  return fmt::format("{:.1f}% ({}/{})", r.percent_rounded(), r.numerator, r.denominator);
}

}  // namespace

EvalCounts& EvalCounts::operator+=(const EvalCounts& other) {
  tp += other.tp;
  tn += other.tn;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

double Ratio::value() const {
  if (!applicable()) throw std::logic_error("ratio with zero denominator");
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double Ratio::percent_rounded() const {
  // Round on the exact rational to avoid binary representation drift:
  // floor((1000 n / d + 1) / 2) / 10 is half-up at one decimal.
  const std::uint64_t per_mille_x2 = (2000 * numerator) / denominator;
  return static_cast<double>((per_mille_x2 + 1) / 2) / 10.0;
}

void check(const SiteAnnotation& a, std::size_t index) {
  const auto fail = [&](const std::string& what) {
    throw InvalidAnnotation(fmt::format("annotation {}: {}", label_of(a, index), what));
  };
  for (const auto& [name, value] : {std::pair{"fields_total", a.fields_total}, std::pair{"correct", a.correct},
                                    std::pair{"missed", a.missed},
                                    std::pair{"incorrectly_detected", a.incorrectly_detected},
                                    std::pair{"suboptimal", a.suboptimal}}) {
    if (value < 0) fail(fmt::format("{} must be non-negative (got {})", name, value));
  }
  if (a.correct + a.missed + a.suboptimal > a.fields_total) {
    fail(fmt::format("correct + missed + suboptimal = {} exceeds fields_total = {}",
                     a.correct + a.missed + a.suboptimal, a.fields_total));
  }
}

EvalCounts aggregate(std::span<const SiteAnnotation> annotations) {
  EvalCounts counts;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const auto& a = annotations[i];
    check(a, i);
    counts += EvalCounts{static_cast<std::uint64_t>(a.correct), static_cast<std::uint64_t>(a.incorrectly_detected),
                         static_cast<std::uint64_t>(a.suboptimal), static_cast<std::uint64_t>(a.missed)};
  }
  return counts;
}

Metrics compute_metrics(const EvalCounts& c) {
  return Metrics{Ratio{c.tp + c.tn, c.tp + c.fp + c.tn + c.fn}, Ratio{c.tp, c.tp + c.fp}, Ratio{c.tp, c.tp + c.fn}};
}

std::vector<SiteAnnotation> annotations_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw InvalidAnnotation("annotation document must be a JSON array");
  std::vector<SiteAnnotation> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& row = doc[i];
    SiteAnnotation a;
    try {
      a.site_label = row.value("site_label", "");
      a.fields_total = row.at("fields_total").get<std::int64_t>();
      a.correct = row.at("correct").get<std::int64_t>();
      a.missed = row.at("missed").get<std::int64_t>();
      a.incorrectly_detected = row.at("incorrectly_detected").get<std::int64_t>();
      a.suboptimal = row.at("suboptimal").get<std::int64_t>();
      a.notes = row.value("notes", "");
    } catch (const nlohmann::json::exception& e) {
      throw InvalidAnnotation(fmt::format("annotation #{}: {}", i, e.what()));
    }
    check(a, i);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<SiteAnnotation> load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read annotations " + path.string());
  const auto doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw InvalidAnnotation(path.string() + " is not valid JSON");
  return annotations_from_json(doc);
}

Report render_report(std::span<const SiteAnnotation> annotations, const EvalCounts& counts, const Metrics& metrics) {
  Report report;
  std::size_t label_width = 5;
  for (const auto& a : annotations) label_width = std::max(label_width, a.site_label.size());

  std::string& out = report.text;
  out += fmt::format("{:<{}}  {:>6}  {:>7}  {:>6}  {:>20}  {:>10}\n", "Site", label_width, "Fields", "Correct",
                     "Missed", "Incorrectly Detected", "Suboptimal");
  nlohmann::json rows = nlohmann::json::array();
  std::int64_t fields_total = 0;
  for (const auto& a : annotations) {
    out += fmt::format("{:<{}}  {:>6}  {:>7}  {:>6}  {:>20}  {:>10}\n", a.site_label, label_width, a.fields_total,
                       a.correct, a.missed, a.incorrectly_detected, a.suboptimal);
    fields_total += a.fields_total;
    nlohmann::json row{{"site_label", a.site_label},
                       {"fields_total", a.fields_total},
                       {"correct", a.correct},
                       {"missed", a.missed},
                       {"incorrectly_detected", a.incorrectly_detected},
                       {"suboptimal", a.suboptimal}};
    if (!a.notes.empty()) row["notes"] = a.notes;
    rows.push_back(std::move(row));
  }
  out += fmt::format("{:<{}}  {:>6}  {:>7}  {:>6}  {:>20}  {:>10}\n", "Total", label_width, fields_total, counts.tp,
                     counts.fn, counts.tn, counts.fp);
  out += "\n";
  out += fmt::format("TP={} (correct)  TN={} (incorrectly detected)  FP={} (suboptimal)  FN={} (missed)\n", counts.tp,
                     counts.tn, counts.fp, counts.fn);
  out += fmt::format("Accuracy:  {}\n", ratio_text(metrics.accuracy));
  out += fmt::format("Precision: {}\n", ratio_text(metrics.precision));
  out += fmt::format("Recall:    {}\n", ratio_text(metrics.recall));

  report.json = {
      {"rows", rows},
      {"totals",
       {{"fields_total", fields_total},
        {"correct", counts.tp},
        {"missed", counts.fn},
        {"incorrectly_detected", counts.tn},
        {"suboptimal", counts.fp}}},
      {"counts",
       {{"tp", {{"value", counts.tp}, {"definition", "fields detected as inputs with appropriate examples (correct)"}}},
        {"tn",
         {{"value", counts.tn}, {"definition", "non-input elements wrongly detected as inputs (incorrectly detected)"}}},
        {"fp",
         {{"value", counts.fp}, {"definition", "detected inputs whose generated values were unsuitable (suboptimal)"}}},
        {"fn", {{"value", counts.fn}, {"definition", "input fields that were not detected (missed)"}}}}},
      {"metrics",
       {{"accuracy", ratio_json(metrics.accuracy)},
        {"precision", ratio_json(metrics.precision)},
        {"recall", ratio_json(metrics.recall)}}},
      {"notes",
       {"percent values are rounded half-up to one decimal; numerator/denominator give the exact ratio",
        "tn and fp follow the taxonomy above, not the textbook confusion-matrix meaning"}},
  };
  return report;
}

}  // namespace formforge::eval
