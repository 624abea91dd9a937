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

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "formforge/forms.hpp"
#include "formforge/record.hpp"

namespace formforge {

enum class Constraint { kRequired, kMinLength, kMaxLength, kPattern, kTypeFormat, kMin, kMax };

std::string_view to_string(Constraint c);

struct Violation {
  Constraint constraint;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

struct ValidationVerdict {
  bool valid = true;
  std::vector<Violation> violations;
  /// Non-fatal findings, e.g. an unsupported pattern that was skipped.
  std::vector<std::string> warnings;

  bool violates(Constraint c) const;
};

void to_json(nlohmann::json& j, const ValidationVerdict& verdict);

/// Static client-side check of `value` against the field's declared
/// constraints. Every violation is reported. As in HTML constraint
/// validation, an empty value can only violate `required`. Lengths are
/// counted in Unicode scalar values. A pattern outside the supported subset
/// adds an `unsupported-pattern` warning and is not enforced.
ValidationVerdict validate_value(std::string_view value, const FieldDescriptor& field);

/// For each bad example: true when the validator rejects it.
std::vector<bool> verify_bad_examples(const SuggestionRecord& record, const FieldDescriptor& field);

}  // namespace formforge
