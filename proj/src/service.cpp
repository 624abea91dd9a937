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

#include "formforge/service.hpp"

#include <charconv>
#include <condition_variable>
#include <cstdlib>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "formforge/errors.hpp"
#include "httplib.h"

namespace formforge {

struct JobService::Slot {
  mutable std::mutex mu;
  mutable std::condition_variable cv;
  AnalysisJob job;
  std::thread worker;

  bool finished() const { return job.state == JobState::kDone || job.state == JobState::kFailed; }
};

JobService::JobService(ServiceConfig config)
    : config_(std::move(config)), backend_(make_backend(config_.backend_spec, config_.backend)) {}

JobService::~JobService() {
  std::map<std::string, std::shared_ptr<Slot>> jobs;
  {
    std::lock_guard lock(mu_);
    jobs.swap(jobs_);
  }
  for (auto& [id, slot] : jobs) {
    if (slot->worker.joinable()) slot->worker.join();
  }
}

std::string JobService::start(std::function<SourceInput()> load, SourceKind kind) {
  auto slot = std::make_shared<Slot>();
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = fmt::format("job-{}", next_id_++);
    slot->job.job_id = id;
    slot->job.source = kind;
    jobs_[id] = slot;
  }
  slot->worker = std::thread([this, slot, id, kind, load = std::move(load)] {
    AnalysisJob result;
    try {
      const SourceInput source = load();
      std::optional<std::filesystem::path> transcripts;
      if (config_.transcripts) transcripts = *config_.transcripts / id;
      Gateway gateway(backend_, config_.backend, transcripts);
      // Intermediate snapshots only; the terminal one is stored below so a
      // concurrent override cannot be lost between the two.
      result = run_pipeline(source, config_.pipeline, gateway, id, [&slot](const AnalysisJob& job) {
        if (job.state == JobState::kDone || job.state == JobState::kFailed) return;
        std::lock_guard lock(slot->mu);
        slot->job = job;
      });
    } catch (const Error& e) {
      result.job_id = id;
      result.state = JobState::kFailed;
      result.error = FieldError{e.code(), e.what()};
    }
    result.source = kind;
    {
      std::lock_guard lock(slot->mu);
      slot->job = std::move(result);
    }
    slot->cv.notify_all();
  });
  return id;
}

std::string JobService::submit(SourceInput source) {
  const SourceKind kind = source.kind;
  return start([source = std::move(source)] { return source; }, kind);
}

std::string JobService::submit_url(std::string url) {
  if (!config_.allow_fetch) throw Error("fetch-disabled", "URL fetching is disabled; start with --allow-fetch");
  return start([url = std::move(url)] { return fetch_url(url); }, SourceKind::kFetchedUrl);
}

std::shared_ptr<JobService::Slot> JobService::find(const std::string& job_id) const {
  std::lock_guard lock(mu_);
  const auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw UnknownJob(fmt::format("no job '{}'", job_id));
  return it->second;
}

AnalysisJob JobService::snapshot(const std::string& job_id) const {
  const auto slot = find(job_id);
  std::lock_guard lock(slot->mu);
  return slot->job;
}

AnalysisJob JobService::wait(const std::string& job_id) const {
  const auto slot = find(job_id);
  std::unique_lock lock(slot->mu);
  slot->cv.wait(lock, [&] { return slot->finished(); });
  return slot->job;
}

std::vector<PlanEntry> JobService::override_value(const std::string& job_id, const std::string& effective_id,
                                                  const std::string& value) {
  const auto slot = find(job_id);
  std::lock_guard lock(slot->mu);
  apply_override(slot->job, effective_id, value);
  std::vector<PlanEntry> entries;
  for (const auto& entry : slot->job.plan->entries) {
    if (entry.effective_id == effective_id) entries.push_back(entry);
  }
  return entries;
}

int port_from_environment(int fallback) {
  const char* value = std::getenv("FORMFORGE_PORT");
  if (value == nullptr || *value == '\0') return fallback;
  const std::string_view text(value);
  int port = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), port);
  if (ec != std::errc() || ptr != text.data() + text.size() || port < 0 || port > 65535) {
    throw InvalidConfig(fmt::format("FORMFORGE_PORT must be a port number, got '{}'", text));
  }
  return port;
}

namespace {

int status_for(const std::string& code) {
  if (code == "unknown-job" || code == "unknown-field") return 404;
  if (code == "job-not-done") return 409;
  if (code == "fetch-disabled") return 403;
  if (code == "source-unreadable") return 422;
  if (code == "invalid-request" || code == "invalid-config") return 400;
  return 500;
}

void send_error(httplib::Response& res, const std::string& code, const std::string& message) {
  res.status = status_for(code);
  res.set_content(nlohmann::json{{"error", {{"code", code}, {"message", message}}}}.dump(), "application/json");
}

void send_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

/// Runs a handler, mapping library errors and bad bodies to JSON errors.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f = std::move(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
      send_error(res, "invalid-request", e.what());
    }
  };
}

nlohmann::json parse_body(const httplib::Request& req) {
  auto body = nlohmann::json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error("invalid-request", "request body must be a JSON object");
  }
  return body;
}

/// The console runs from a local origin; other origins get no CORS grant.
bool is_local_origin(const std::string& origin) {
  try {
    return is_local_host(parse_endpoint(origin).host);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

HttpService::HttpService(JobService& jobs) : jobs_(jobs), server_(std::make_unique<httplib::Server>()) {
  auto& server = *server_;
  // httplib defaults to SO_REUSEPORT, which lets a second service bind the
  // same port and silently take half the requests (and their jobs).
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  server.set_post_routing_handler([](const httplib::Request& req, httplib::Response& res) {
    const std::string origin = req.get_header_value("Origin");
    if (!origin.empty() && is_local_origin(origin)) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Vary", "Origin");
    }
  });
  server.Options(R"(/jobs.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/jobs", guarded([this](const httplib::Request& req, httplib::Response& res) {
                const auto body = parse_body(req);
                std::string id;
                if (body.contains("html") && body["html"].is_string()) {
                  id = jobs_.submit(SourceInput{SourceKind::kInline, body["html"].get<std::string>(), "inline"});
                } else if (body.contains("url") && body["url"].is_string()) {
                  id = jobs_.submit_url(body["url"].get<std::string>());
                } else {
                  throw Error("invalid-request", "body needs a string 'html' or 'url'");
                }
                send_json(res, {{"job_id", id}}, 201);
              }));

  server.Get(R"(/jobs/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, job_snapshot(jobs_.snapshot(req.matches[1])));
             }));

  server.Post(R"(/jobs/([^/]+)/override)", guarded([this](const httplib::Request& req, httplib::Response& res) {
                const auto body = parse_body(req);
                const std::string effective_id = body.at("effective_id").get<std::string>();
                const std::string value = body.at("value").get<std::string>();
                const auto entries = jobs_.override_value(req.matches[1], effective_id, value);
                // Reuse the plan serializer for the touched entries.
                const nlohmann::json plan = FillPlan{entries, ""};
                send_json(res, {{"entries", plan["entries"]}});
              }));

  server.Get(R"(/jobs/([^/]+)/plan)", guarded([this](const httplib::Request& req, httplib::Response& res) {
               const AnalysisJob job = jobs_.snapshot(req.matches[1]);
               if (job.state != JobState::kDone || !job.plan) {
                 throw JobNotDone(fmt::format("job {} is {}", job.job_id, to_string(job.state)));
               }
               send_json(res, *job.plan);
             }));

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(nlohmann::json{{"error", {{"code", "not-found"}, {"message", "no such route"}}}}.dump(),
                      "application/json");
    }
  });
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(int port) {
  int bound = -1;
  if (port == 0) {
    bound = server_->bind_to_any_port("127.0.0.1");
  } else if (server_->bind_to_port("127.0.0.1", port)) {
    bound = port;
  }
  if (bound < 0) throw IoFailure(fmt::format("cannot bind 127.0.0.1:{}", port));
  return bound;
}

void HttpService::listen() { server_->listen_after_bind(); }

void HttpService::stop() {
  if (server_) server_->stop();
}

}  // namespace formforge
