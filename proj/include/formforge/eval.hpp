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

// Evaluation of annotated runs. The count names follow the tool's
// established taxonomy, which differs from textbook confusion-matrix use:
//
//   tp  fields detected as inputs and given appropriate examples  (correct)
//   tn  non-input elements wrongly detected as inputs    (incorrectly_detected)
//   fp  detected inputs whose generated values were unsuitable     (suboptimal)
//   fn  input fields that were not detected                            (missed)
//
// accuracy = (tp + tn) / (tp + fp + tn + fn)
// precision = tp / (tp + fp)
// recall = tp / (tp + fn)

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace formforge::eval {

struct SiteAnnotation {
  std::string site_label;
  std::int64_t fields_total = 0;
  std::int64_t correct = 0;
  std::int64_t missed = 0;
  std::int64_t incorrectly_detected = 0;
  std::int64_t suboptimal = 0;
  /// Free-text justification for the judgments, kept for audit.
  std::string notes;
};

struct EvalCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  EvalCounts& operator+=(const EvalCounts& other);
  friend EvalCounts operator+(EvalCounts a, const EvalCounts& b) { return a += b; }
  bool operator==(const EvalCounts&) const = default;
};

/// Exact ratio; `denominator == 0` means not applicable.
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  bool applicable() const noexcept { return denominator != 0; }
  /// Throws std::logic_error when not applicable.
  double value() const;
  double percent() const { return value() * 100.0; }
  /// Percentage rounded half-up to one decimal.
  double percent_rounded() const;
};

struct Metrics {
  Ratio accuracy;
  Ratio precision;
  Ratio recall;
};

/// Throws InvalidAnnotation naming the record and the broken constraint.
void check(const SiteAnnotation& annotation, std::size_t index);

EvalCounts aggregate(std::span<const SiteAnnotation> annotations);
Metrics compute_metrics(const EvalCounts& counts);

std::vector<SiteAnnotation> annotations_from_json(const nlohmann::json& doc);
/// Throws IoFailure or InvalidAnnotation.
std::vector<SiteAnnotation> load_annotations(const std::filesystem::path& path);

struct Report {
  std::string text;
  nlohmann::json json;
};

Report render_report(std::span<const SiteAnnotation> annotations, const EvalCounts& counts, const Metrics& metrics);

}  // namespace formforge::eval
