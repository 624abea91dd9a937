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

#include "formforge/planner.hpp"

#include <openssl/evp.h>

#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "formforge/errors.hpp"

namespace formforge {
namespace {

PlanEntry plan_entry(const FieldDescriptor& field, const FieldOutcome* outcome) {
  PlanEntry entry;
  entry.selector = field.selector;
  entry.effective_id = field.effective_id();
  if (outcome == nullptr) {
    entry.status = EntryStatus::kSkippedError;
    entry.reason = "no-record";
    return entry;
  }
  if (const auto* error = std::get_if<FieldError>(outcome)) {
    entry.status = EntryStatus::kSkippedError;
    entry.reason = fmt::format("{}: {}", error->code, error->message);
    return entry;
  }
  const auto& record = std::get<SuggestionRecord>(*outcome);
  for (std::size_t i = 0; i < record.examples.size(); ++i) {
    if (validate_value(record.examples[i], field).valid) {
      entry.status = EntryStatus::kFilled;
      entry.chosen_value = record.examples[i];
      entry.chosen_index = i;
      return entry;
    }
  }
  entry.status = EntryStatus::kUnfilledNoValidExample;
  entry.reason = fmt::format("none of the {} examples passed validation", record.examples.size());
  return entry;
}

EntryStatus status_from_string(std::string_view s) {
  if (s == "filled") return EntryStatus::kFilled;
  if (s == "unfilled_no_valid_example") return EntryStatus::kUnfilledNoValidExample;
  if (s == "skipped_error") return EntryStatus::kSkippedError;
  throw InvalidConfig(fmt::format("unknown plan entry status '{}'", s));
}

}  // namespace

std::string_view to_string(EntryStatus status) {
  switch (status) {
    case EntryStatus::kFilled: return "filled";
    case EntryStatus::kUnfilledNoValidExample: return "unfilled_no_valid_example";
    case EntryStatus::kSkippedError: return "skipped_error";
  }
  return "skipped_error";
}

std::string document_fingerprint(std::string_view source) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(source.data(), source.size(), digest, &length, EVP_sha256(), nullptr);
  std::string out = "sha256:";
  for (unsigned int i = 0; i < length; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

FillPlan plan_fill(const std::vector<FieldDescriptor>& fields, const std::map<std::string, FieldOutcome>& records,
                   const html::Document& doc) {
  FillPlan plan;
  plan.document_fingerprint = document_fingerprint(doc.source());
  plan.entries.reserve(fields.size());
  for (const auto& field : fields) {
    const auto it = records.find(field.effective_id());
    plan.entries.push_back(plan_entry(field, it == records.end() ? nullptr : &it->second));
  }
  return plan;
}

FillPlan plan_fill(const std::vector<FieldDescriptor>& fields, const std::vector<FieldOutcome>& outcomes,
                   std::string_view source) {
  FillPlan plan;
  plan.document_fingerprint = document_fingerprint(source);
  plan.entries.reserve(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    plan.entries.push_back(plan_entry(fields[i], i < outcomes.size() ? &outcomes[i] : nullptr));
  }
  return plan;
}

void to_json(nlohmann::json& j, const FillPlan& plan) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : plan.entries) {
    nlohmann::json entry{{"selector", e.selector},
                         {"effective_id", e.effective_id},
                         {"chosen_value", nullptr},
                         {"chosen_index", nullptr},
                         {"status", to_string(e.status)},
                         {"reason", nullptr},
                         {"overridden", e.overridden}};
    if (e.chosen_value) entry["chosen_value"] = *e.chosen_value;
    if (e.chosen_index) entry["chosen_index"] = *e.chosen_index;
    if (e.reason) entry["reason"] = *e.reason;
    if (e.override_verdict) entry["override_verdict"] = *e.override_verdict;
    entries.push_back(std::move(entry));
  }
  j = nlohmann::json{{"entries", std::move(entries)}, {"document_fingerprint", plan.document_fingerprint}};
}

FillPlan plan_from_json(const nlohmann::json& j) {
  try {
    FillPlan plan;
    plan.document_fingerprint = j.at("document_fingerprint").get<std::string>();
    for (const auto& e : j.at("entries")) {
      PlanEntry entry;
      entry.selector = e.at("selector").get<std::string>();
      entry.effective_id = e.at("effective_id").get<std::string>();
      if (!e.at("chosen_value").is_null()) entry.chosen_value = e["chosen_value"].get<std::string>();
      if (!e.at("chosen_index").is_null()) entry.chosen_index = e["chosen_index"].get<std::size_t>();
      entry.status = status_from_string(e.at("status").get<std::string>());
      if (!e.at("reason").is_null()) entry.reason = e["reason"].get<std::string>();
      entry.overridden = e.value("overridden", false);
      if (e.contains("override_verdict") && e["override_verdict"].is_object()) {
        ValidationVerdict verdict;
        const auto& v = e["override_verdict"];
        verdict.valid = v.at("valid").get<bool>();
        for (const auto& w : v.value("warnings", nlohmann::json::array())) verdict.warnings.push_back(w.get<std::string>());
        for (const auto& x : v.value("violations", nlohmann::json::array())) {
          const std::string name = x.at("constraint").get<std::string>();
          Constraint c = Constraint::kTypeFormat;
          for (const Constraint k : {Constraint::kRequired, Constraint::kMinLength, Constraint::kMaxLength,
                                     Constraint::kPattern, Constraint::kTypeFormat, Constraint::kMin, Constraint::kMax}) {
            if (to_string(k) == name) c = k;
          }
          verdict.violations.push_back({c, x.value("detail", "")});
        }
        entry.override_verdict = std::move(verdict);
      }
      plan.entries.push_back(std::move(entry));
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(fmt::format("malformed fill plan: {}", e.what()));
  }
}

void write_plan(const FillPlan& plan, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write fill plan to " + path.string());
  out << nlohmann::json(plan).dump(2) << '\n';
  if (!out) throw IoFailure("write failed for " + path.string());
}

}  // namespace formforge
