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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "formforge/forms.hpp"
#include "formforge/html.hpp"
#include "formforge/record.hpp"
#include "formforge/validator.hpp"

namespace formforge {

/// A per-field failure recorded instead of a suggestion.
struct FieldError {
  std::string code;
  std::string message;

  bool operator==(const FieldError&) const = default;
};

using FieldOutcome = std::variant<SuggestionRecord, FieldError>;

enum class EntryStatus { kFilled, kUnfilledNoValidExample, kSkippedError };

std::string_view to_string(EntryStatus status);

struct PlanEntry {
  std::string selector;
  std::string effective_id;
  std::optional<std::string> chosen_value;
  /// Position in the record's examples; for an override, the first example
  /// equal to the tester's value, if any.
  std::optional<std::size_t> chosen_index;
  EntryStatus status = EntryStatus::kSkippedError;
  std::optional<std::string> reason;
  bool overridden = false;
  /// Verdict on the tester's value; advisory, never blocks the override.
  std::optional<ValidationVerdict> override_verdict;
};

struct FillPlan {
  std::vector<PlanEntry> entries;
  std::string document_fingerprint;
};

/// "sha256:<hex>" of the document source.
std::string document_fingerprint(std::string_view source);

/// One entry per field, in field order. Each field takes the first example
/// that passes validate_value(); fields whose examples all fail are
/// unfilled, fields with a FieldError (or no outcome) are skipped.
FillPlan plan_fill(const std::vector<FieldDescriptor>& fields, const std::map<std::string, FieldOutcome>& records,
                   const html::Document& doc);

/// Same, with outcomes aligned to `fields` by position. Useful when several
/// fields share an effective id (radio groups).
FillPlan plan_fill(const std::vector<FieldDescriptor>& fields, const std::vector<FieldOutcome>& outcomes,
                   std::string_view source);

void to_json(nlohmann::json& j, const FillPlan& plan);
/// Throws InvalidConfig on schema mismatch.
FillPlan plan_from_json(const nlohmann::json& j);

/// Pretty-printed JSON with a trailing newline. Throws IoFailure.
void write_plan(const FillPlan& plan, const std::filesystem::path& path);

}  // namespace formforge
