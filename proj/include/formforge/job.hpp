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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "formforge/forms.hpp"
#include "formforge/gateway.hpp"
#include "formforge/pipeline.hpp"
#include "formforge/planner.hpp"

namespace formforge {

enum class SourceKind { kFile, kInline, kFetchedUrl };
enum class JobState { kParsing, kGenerating, kDone, kFailed };

std::string_view to_string(SourceKind kind);
std::string_view to_string(JobState state);

struct SourceInput {
  SourceKind kind = SourceKind::kInline;
  std::string html;
  /// Path or URL, for display only.
  std::string origin;
};

/// Reads a file, or standard input for "-". Throws SourceUnreadable.
SourceInput read_source(const std::string& path);

/// GETs an http(s) URL, following redirects. Throws SourceUnreadable.
/// Callers must gate this behind an explicit opt-in: it is the only
/// network access that is not a model call.
SourceInput fetch_url(const std::string& url, std::chrono::milliseconds timeout = std::chrono::seconds(30));

struct AnalysisJob {
  std::string job_id;
  SourceKind source = SourceKind::kInline;
  JobState state = JobState::kParsing;
  /// While generating: number of fields finished so far.
  std::size_t field_index = 0;
  std::vector<FieldDescriptor> descriptors;
  /// Aligned with `descriptors`; empty until that field finishes.
  std::vector<std::optional<FieldOutcome>> outcomes;
  std::optional<FillPlan> plan;
  /// effective_id -> tester value.
  std::map<std::string, std::string> overrides;
  /// Set only in the failed state.
  std::optional<FieldError> error;
  std::string document_fingerprint;
};

/// Receives snapshots as the job advances (after parsing, after each
/// field, at the end). Calls are serialized.
using JobObserver = std::function<void(const AnalysisJob&)>;

/// detect -> per-field kernel -> plan_fill. Per-field failures are recorded
/// in the job; the returned job is done, or failed only if the document
/// itself cannot be processed.
AnalysisJob run_pipeline(const SourceInput& source, const PipelineConfig& config, Gateway& gateway,
                         std::string job_id = "job", const JobObserver& observer = {});

/// Replaces the chosen value of every entry whose effective id matches.
/// The entry becomes filled and overridden; the value's verdict is stored
/// but never blocks it. Throws JobNotDone or UnknownField.
void apply_override(AnalysisJob& job, const std::string& effective_id, const std::string& value);

/// Throws JobNotDone or IoFailure.
void export_plan(const AnalysisJob& job, const std::filesystem::path& path);

nlohmann::json descriptor_json(const FieldDescriptor& field);
/// The service's view of a job.
nlohmann::json job_snapshot(const AnalysisJob& job);

}  // namespace formforge
