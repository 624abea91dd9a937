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

#include <nlohmann/json.hpp>

namespace formforge {

inline constexpr std::size_t kExamplesPerRecord = 5;

/// Structured per-field answer from a backend.
struct SuggestionRecord {
  std::string name;
  std::string id;
  std::string type;
  std::string constraints;
  std::vector<std::string> examples;
  std::vector<std::string> bad_examples;

  bool operator==(const SuggestionRecord&) const = default;
};

void to_json(nlohmann::json& j, const SuggestionRecord& record);

/// Recovers a record from raw model output. Code fences and surrounding
/// prose are skipped: the first balanced `{...}` that parses as a JSON
/// object is used. Numbers and booleans inside the example lists are
/// converted to their JSON text. Throws MalformedOutput with reason
/// `no-object-found`, `missing-key:<k>`, `wrong-type:<k>`, `empty-key:id`
/// or `wrong-list-length:<k>`.
SuggestionRecord extract_record(std::string_view raw_output);

/// Validates an already-parsed object (same reasons as extract_record).
SuggestionRecord record_from_json(const nlohmann::json& object);

}  // namespace formforge
