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

#include "formforge/record.hpp"

#include <array>
#include <optional>

#include "formforge/errors.hpp"

namespace formforge {
namespace {

constexpr std::array<const char*, 6> kKeys = {"name", "id", "type", "constraints", "examples", "bad_examples"};

// End of the balanced object starting at `open`, honouring JSON strings.
std::optional<std::size_t> balanced_end(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i;
    }
  }
  return std::nullopt;
}

std::string scalar_text(const nlohmann::json& value, const char* key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number() || value.is_boolean()) return value.dump();
  throw MalformedOutput(std::string("wrong-type:") + key);
}

std::vector<std::string> string_list(const nlohmann::json& value, const char* key) {
  if (!value.is_array()) throw MalformedOutput(std::string("wrong-type:") + key);
  std::vector<std::string> out;
  for (const auto& item : value) out.push_back(scalar_text(item, key));
  if (out.size() != kExamplesPerRecord) throw MalformedOutput(std::string("wrong-list-length:") + key);
  return out;
}

}  // namespace

void to_json(nlohmann::json& j, const SuggestionRecord& record) {
  j = nlohmann::json{{"name", record.name},
                     {"id", record.id},
                     {"type", record.type},
                     {"constraints", record.constraints},
                     {"examples", record.examples},
                     {"bad_examples", record.bad_examples}};
}

SuggestionRecord record_from_json(const nlohmann::json& object) {
  for (const char* key : kKeys) {
    if (!object.contains(key)) throw MalformedOutput(std::string("missing-key:") + key);
  }
  SuggestionRecord record;
  record.name = object["name"].is_null() ? std::string() : scalar_text(object["name"], "name");
  record.id = object["id"].is_null() ? std::string() : scalar_text(object["id"], "id");
  if (record.id.empty()) throw MalformedOutput("empty-key:id");
  record.type = scalar_text(object["type"], "type");
  if (object["constraints"].is_array()) {
    // Some models answer with one sentence per array item.
    for (const auto& sentence : object["constraints"]) {
      if (!record.constraints.empty()) record.constraints += ' ';
      record.constraints += scalar_text(sentence, "constraints");
    }
  } else {
    record.constraints = scalar_text(object["constraints"], "constraints");
  }
  record.examples = string_list(object["examples"], "examples");
  record.bad_examples = string_list(object["bad_examples"], "bad_examples");
  return record;
}

SuggestionRecord extract_record(std::string_view raw_output) {
  for (std::size_t open = raw_output.find('{'); open != std::string_view::npos;
       open = raw_output.find('{', open + 1)) {
    const auto close = balanced_end(raw_output, open);
    if (!close) continue;
    const auto parsed = nlohmann::json::parse(raw_output.substr(open, *close - open + 1), nullptr,
                                              /*allow_exceptions=*/false);
    if (parsed.is_discarded() || !parsed.is_object()) continue;
    return record_from_json(parsed);
  }
  throw MalformedOutput("no-object-found");
}

}  // namespace formforge
