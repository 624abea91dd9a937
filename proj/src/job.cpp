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

#include "formforge/job.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "formforge/errors.hpp"
#include "formforge/validator.hpp"
#include "httplib.h"

namespace formforge {

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kFile: return "file";
    case SourceKind::kInline: return "inline";
    case SourceKind::kFetchedUrl: return "fetched_url";
  }
  return "inline";
}

std::string_view to_string(JobState state) {
  switch (state) {
    case JobState::kParsing: return "parsing";
    case JobState::kGenerating: return "generating";
    case JobState::kDone: return "done";
    case JobState::kFailed: return "failed";
  }
  return "failed";
}

SourceInput read_source(const std::string& path) {
  SourceInput source{SourceKind::kFile, {}, path};
  if (path == "-") {
    source.html.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    if (std::cin.bad()) throw SourceUnreadable("cannot read standard input");
    source.origin = "<stdin>";
    return source;
  }
  // ifstream happily opens a directory on Linux and then reads nothing.
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) throw SourceUnreadable(path + " is a directory");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SourceUnreadable("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw SourceUnreadable("cannot read " + path);
  source.html = buffer.str();
  return source;
}

SourceInput fetch_url(const std::string& url, std::chrono::milliseconds timeout) {
  Endpoint ep;
  try {
    ep = parse_endpoint(url);
  } catch (const InvalidConfig& e) {
    throw SourceUnreadable(e.what());
  }
  const bool ipv6 = ep.host.find(':') != std::string::npos;
  httplib::Client client(
      fmt::format("{}://{}{}{}:{}", ep.scheme, ipv6 ? "[" : "", ep.host, ipv6 ? "]" : "", ep.port));
  client.set_follow_location(true);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  client.set_connection_timeout(seconds.count());
  client.set_read_timeout(seconds.count());
  const auto result = client.Get(ep.path);
  if (!result) throw SourceUnreadable(fmt::format("{}: {}", url, httplib::to_string(result.error())));
  if (result->status < 200 || result->status >= 300) {
    throw SourceUnreadable(fmt::format("{}: HTTP {}", url, result->status));
  }
  return SourceInput{SourceKind::kFetchedUrl, result->body, url};
}

AnalysisJob run_pipeline(const SourceInput& source, const PipelineConfig& config, Gateway& gateway,
                         std::string job_id, const JobObserver& observer) {
  AnalysisJob job;
  job.job_id = std::move(job_id);
  job.source = source.kind;
  job.document_fingerprint = document_fingerprint(source.html);
  std::mutex mu;
  const auto notify = [&] {
    if (observer) observer(job);
  };
  notify();

  try {
    const html::Document doc = html::Document::parse(source.html);
    job.descriptors = detect_fields(doc);
    job.outcomes.assign(job.descriptors.size(), std::nullopt);
    job.state = JobState::kGenerating;
    notify();

    const auto results = process_fields(doc, job.descriptors, config, gateway,
                                        [&](std::size_t index, const FieldOutcome& outcome) {
                                          std::lock_guard lock(mu);
                                          job.outcomes[index] = outcome;
                                          ++job.field_index;
                                          notify();
                                        });
    job.plan = plan_fill(job.descriptors, results, source.html);
    job.state = JobState::kDone;
  } catch (const Error& e) {
    job.state = JobState::kFailed;
    job.error = FieldError{e.code(), e.what()};
  }
  notify();
  return job;
}

void apply_override(AnalysisJob& job, const std::string& effective_id, const std::string& value) {
  if (job.state != JobState::kDone || !job.plan) {
    throw JobNotDone(fmt::format("job {} is {}", job.job_id, to_string(job.state)));
  }
  bool found = false;
  for (std::size_t i = 0; i < job.descriptors.size(); ++i) {
    const FieldDescriptor& field = job.descriptors[i];
    if (field.effective_id() != effective_id) continue;
    found = true;
    PlanEntry& entry = job.plan->entries[i];
    entry.chosen_value = value;
    entry.chosen_index.reset();
    if (const auto& outcome = job.outcomes[i]) {
      if (const auto* record = std::get_if<SuggestionRecord>(&*outcome)) {
        for (std::size_t k = 0; k < record->examples.size(); ++k) {
          if (record->examples[k] == value) {
            entry.chosen_index = k;
            break;
          }
        }
      }
    }
    entry.status = EntryStatus::kFilled;
    entry.reason.reset();
    entry.overridden = true;
    entry.override_verdict = validate_value(value, field);
  }
  if (!found) throw UnknownField(fmt::format("no field with effective id '{}'", effective_id));
  job.overrides[effective_id] = value;
}

void export_plan(const AnalysisJob& job, const std::filesystem::path& path) {
  if (job.state != JobState::kDone || !job.plan) {
    throw JobNotDone(fmt::format("job {} is {}", job.job_id, to_string(job.state)));
  }
  write_plan(*job.plan, path);
}

nlohmann::json descriptor_json(const FieldDescriptor& field) {
  nlohmann::json j{{"tag", to_string(field.tag)},
                   {"input_type", field.input_type},
                   {"name", nullptr},
                   {"id", nullptr},
                   {"effective_id", field.effective_id()},
                   {"selector", field.selector},
                   {"attributes", field.attributes},
                   {"form_index", nullptr}};
  if (field.name) j["name"] = *field.name;
  if (field.id) j["id"] = *field.id;
  if (field.form_index) j["form_index"] = *field.form_index;
  return j;
}

nlohmann::json job_snapshot(const AnalysisJob& job) {
  nlohmann::json descriptors = nlohmann::json::array();
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t i = 0; i < job.descriptors.size(); ++i) {
    descriptors.push_back(descriptor_json(job.descriptors[i]));
    nlohmann::json item{{"effective_id", job.descriptors[i].effective_id()}, {"record", nullptr}, {"error", nullptr}};
    if (i < job.outcomes.size() && job.outcomes[i]) {
      if (const auto* record = std::get_if<SuggestionRecord>(&*job.outcomes[i])) {
        item["record"] = *record;
      } else {
        const auto& error = std::get<FieldError>(*job.outcomes[i]);
        item["error"] = {{"code", error.code}, {"message", error.message}};
      }
    }
    records.push_back(std::move(item));
  }
  nlohmann::json j{{"job_id", job.job_id},
                   {"source", to_string(job.source)},
                   {"state", to_string(job.state)},
                   {"field_index", job.field_index},
                   {"fields_total", job.descriptors.size()},
                   {"descriptors", std::move(descriptors)},
                   {"records", std::move(records)},
                   {"overrides", job.overrides},
                   {"plan", nullptr},
                   {"error", nullptr},
                   {"document_fingerprint", job.document_fingerprint}};
  if (job.plan) j["plan"] = *job.plan;
  if (job.error) j["error"] = {{"code", job.error->code}, {"message", job.error->message}};
  return j;
}

}  // namespace formforge
