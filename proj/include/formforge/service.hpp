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

// Local HTTP service for the tester console.
//
//   POST /jobs                  {"html": ...} or {"url": ...}  -> {"job_id"}
//   GET  /jobs/{id}             job snapshot
//   POST /jobs/{id}/override    {"effective_id", "value"}      -> plan entry
//   GET  /jobs/{id}/plan        FillPlan JSON
//
// Errors are {"error": {"code", "message"}} with a matching HTTP status.

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include <nlohmann/json_fwd.hpp>

#include "formforge/gateway.hpp"
#include "formforge/job.hpp"
#include "formforge/pipeline.hpp"

namespace httplib {
class Server;
}

namespace formforge {

struct ServiceConfig {
  PipelineConfig pipeline;
  BackendConfig backend;
  /// `http`, `rules` or `replay:<dir>`.
  std::string backend_spec = "http";
  std::optional<std::filesystem::path> transcripts;
  /// Accept {"url": ...} job submissions.
  bool allow_fetch = false;
};

/// Owns jobs. Each job runs on its own thread with its own Gateway; reads
/// return copies taken under the job's lock.
class JobService {
 public:
  /// Builds the backend once, so a non-local endpoint fails here.
  explicit JobService(ServiceConfig config);
  ~JobService();
  JobService(const JobService&) = delete;
  JobService& operator=(const JobService&) = delete;

  std::string submit(SourceInput source);
  /// Fetches on the job's thread; a failed fetch fails the job. Throws
  /// an Error coded `fetch-disabled` unless allow_fetch.
  std::string submit_url(std::string url);
  /// Throws UnknownJob.
  AnalysisJob snapshot(const std::string& job_id) const;
  /// Blocks until the job leaves the parsing/generating states.
  AnalysisJob wait(const std::string& job_id) const;
  /// Returns the updated plan entries for `effective_id`.
  std::vector<PlanEntry> override_value(const std::string& job_id, const std::string& effective_id,
                                        const std::string& value);
  const ServiceConfig& config() const noexcept { return config_; }

 private:
  struct Slot;
  std::shared_ptr<Slot> find(const std::string& job_id) const;
  std::string start(std::function<SourceInput()> load, SourceKind kind);

  ServiceConfig config_;
  std::shared_ptr<Backend> backend_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> jobs_;
  std::uint64_t next_id_ = 1;
};

/// Reads FORMFORGE_PORT; `fallback` when unset. Throws InvalidConfig.
int port_from_environment(int fallback);

class HttpService {
 public:
  explicit HttpService(JobService& jobs);
  ~HttpService();

  /// Binds 127.0.0.1. Port 0 picks a free port. Returns the bound port;
  /// throws IoFailure when binding fails.
  int bind(int port);
  /// Serves until stop().
  void listen();
  void stop();

 private:
  JobService& jobs_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace formforge
