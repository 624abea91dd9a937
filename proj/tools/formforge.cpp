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

// formforge: analyze | eval | serve

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "formforge/errors.hpp"
#include "formforge/eval.hpp"
#include "formforge/gateway.hpp"
#include "formforge/job.hpp"
#include "formforge/pipeline.hpp"
#include "formforge/planner.hpp"
#include "formforge/service.hpp"
#include "formforge/validator.hpp"

namespace {

// Exit codes. CLI11 parse errors keep CLI11's own codes (usage).
constexpr int kExitError = 1;
constexpr int kExitSourceUnreadable = 3;
constexpr int kExitPrivacyViolation = 4;
constexpr int kExitInvalidAnnotation = 5;
constexpr int kExitIo = 6;
constexpr int kExitInvalidConfig = 7;

constexpr int kDefaultPort = 8765;

int exit_code_for(const formforge::Error& e) {
  const std::string& code = e.code();
  if (code == "source-unreadable") return kExitSourceUnreadable;
  if (code == "privacy-violation") return kExitPrivacyViolation;
  if (code == "invalid-annotation") return kExitInvalidAnnotation;
  if (code == "io-failure") return kExitIo;
  if (code == "invalid-config") return kExitInvalidConfig;
  return kExitError;
}

struct EngineOptions {
  std::string backend = "http";
  std::optional<std::string> endpoint;
  std::optional<std::string> model;
  bool allow_remote = false;
  std::size_t token_limit = formforge::TokenBudget{}.limit;
  std::size_t token_headroom = formforge::TokenBudget{}.headroom;
  std::string tokenizer = "heuristic";
  std::optional<std::string> prompt_template;
  int parallel = 1;
  int max_retries = formforge::BackendConfig{}.max_retries;
  double temperature = formforge::BackendConfig{}.temperature;
  long timeout_ms = static_cast<long>(formforge::BackendConfig{}.timeout.count());
  std::optional<std::string> transcripts;
};

void add_engine_options(CLI::App& cmd, EngineOptions& o) {
  cmd.add_option("--backend", o.backend, "http, rules or replay:<dir>")->capture_default_str();
  cmd.add_option("--endpoint", o.endpoint, "model endpoint URL (overrides FORMFORGE_ENDPOINT)");
  cmd.add_option("--model", o.model, "model name sent to the endpoint");
  cmd.add_flag("--allow-remote", o.allow_remote, "permit a non-local model endpoint");
  cmd.add_option("--token-limit", o.token_limit, "context window size in tokens")->capture_default_str();
  cmd.add_option("--token-headroom", o.token_headroom, "tokens reserved for the prompt")->capture_default_str();
  cmd.add_option("--tokenizer", o.tokenizer, "heuristic or plugin:<name>")->capture_default_str();
  cmd.add_option("--prompt-template", o.prompt_template, "file with a prompt template");
  cmd.add_option("--parallel", o.parallel, "fields processed concurrently (1 = sequential)")
      ->capture_default_str()
      ->check(CLI::Range(1, 1024));
  cmd.add_option("--max-retries", o.max_retries, "extra attempts on malformed output")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--temperature", o.temperature)->capture_default_str();
  cmd.add_option("--timeout-ms", o.timeout_ms, "per-request timeout")->capture_default_str();
  cmd.add_option("--transcripts", o.transcripts, "directory for prompt/response transcripts");
}

formforge::BackendConfig backend_config(const EngineOptions& o) {
  formforge::BackendConfig config;
  formforge::apply_environment(config);
  if (o.endpoint) config.endpoint_url = *o.endpoint;
  if (o.model) config.model_name = *o.model;
  config.allow_remote = o.allow_remote;
  config.max_retries = o.max_retries;
  config.temperature = o.temperature;
  config.timeout = std::chrono::milliseconds(o.timeout_ms);
  return config;
}

formforge::PipelineConfig pipeline_config(const EngineOptions& o) {
  formforge::PipelineConfig config;
  config.budget = formforge::TokenBudget{o.token_limit, o.token_headroom};
  (void)config.budget.effective();  // reject limit <= headroom up front
  config.tokenizer = formforge::make_tokenizer(o.tokenizer);
  if (o.prompt_template) config.prompt_template = formforge::PromptTemplate::from_file(*o.prompt_template);
  config.parallel = o.parallel;
  return config;
}

void print_summary(const formforge::AnalysisJob& job) {
  using formforge::EntryStatus;
  std::size_t filled = 0;
  for (std::size_t i = 0; i < job.descriptors.size(); ++i) {
    const auto& entry = job.plan->entries[i];
    std::string line = fmt::format("  {:<24} {:<26}", entry.effective_id, to_string(entry.status));
    if (entry.status == EntryStatus::kFilled) {
      ++filled;
      line += fmt::format(" \"{}\" (example {})", *entry.chosen_value, *entry.chosen_index);
    } else if (entry.reason) {
      line += " " + *entry.reason;
    }
    if (const auto& outcome = job.outcomes[i]) {
      if (const auto* record = std::get_if<formforge::SuggestionRecord>(&*outcome)) {
        const auto rejected = formforge::verify_bad_examples(*record, job.descriptors[i]);
        line += fmt::format("  bad examples rejected {}/{}", std::count(rejected.begin(), rejected.end(), true),
                            rejected.size());
      }
    }
    std::cerr << line << '\n';
  }
  std::cerr << fmt::format("{} field(s), {} filled\n", job.descriptors.size(), filled);
}

int run_analyze(const std::string& input, bool fetch, const EngineOptions& o, const std::optional<std::string>& out) {
  // Backend first: the endpoint privacy check must run before any socket.
  const auto bconfig = backend_config(o);
  const auto backend = formforge::make_backend(o.backend, bconfig);
  const auto pconfig = pipeline_config(o);
  std::optional<std::filesystem::path> transcripts;
  if (o.transcripts) transcripts = *o.transcripts;
  formforge::Gateway gateway(backend, bconfig, transcripts);

  const formforge::SourceInput source = fetch ? formforge::fetch_url(input) : formforge::read_source(input);
  const formforge::AnalysisJob job = formforge::run_pipeline(source, pconfig, gateway);
  if (job.state != formforge::JobState::kDone) {
    std::cerr << fmt::format("error: {}: {}\n", job.error->code, job.error->message);
    return kExitError;
  }
  print_summary(job);
  if (out) {
    formforge::export_plan(job, *out);
  } else {
    std::cout << nlohmann::json(*job.plan).dump(2) << '\n';
  }
  return 0;
}

int run_eval(const std::string& annotations_path, const std::optional<std::string>& out) {
  const auto annotations = formforge::eval::load_annotations(annotations_path);
  const auto counts = formforge::eval::aggregate(annotations);
  const auto metrics = formforge::eval::compute_metrics(counts);
  const auto report = formforge::eval::render_report(annotations, counts, metrics);
  std::cout << report.text;
  if (out) {
    std::ofstream file(*out, std::ios::binary | std::ios::trunc);
    if (!file) throw formforge::IoFailure("cannot write " + *out);
    file << report.json.dump(2) << '\n';
    if (!file) throw formforge::IoFailure("write failed for " + *out);
  }
  return 0;
}

int run_serve(std::optional<int> port, bool allow_fetch, const EngineOptions& o) {
  formforge::ServiceConfig config;
  config.backend = backend_config(o);
  config.backend_spec = o.backend;
  config.pipeline = pipeline_config(o);
  if (o.transcripts) config.transcripts = *o.transcripts;
  config.allow_fetch = allow_fetch;
  formforge::JobService jobs(std::move(config));
  formforge::HttpService http(jobs);
  const int bound = http.bind(port ? *port : formforge::port_from_environment(kDefaultPort));
  std::cerr << fmt::format("listening on http://127.0.0.1:{}\n", bound);
  http.listen();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Form-fill suggestions from a local language model"};
  app.require_subcommand(1);

  EngineOptions engine;

  auto* analyze = app.add_subcommand("analyze", "detect fields in a page and write a fill plan");
  std::string input;
  bool fetch = false;
  std::optional<std::string> plan_out;
  analyze->add_option("source", input, "HTML file, '-' for stdin, or a URL with --fetch-url")->required();
  analyze->add_flag("--fetch-url", fetch, "treat the source as an http(s) URL and download it");
  analyze->add_option("--out,-o", plan_out, "write the plan here instead of stdout");
  add_engine_options(*analyze, engine);

  auto* eval = app.add_subcommand("eval", "compute metrics from annotation records");
  std::string annotations;
  std::optional<std::string> report_out;
  eval->add_option("--annotations", annotations, "JSON array of per-site annotations")->required();
  eval->add_option("--out,-o", report_out, "write the JSON report here");

  auto* serve = app.add_subcommand("serve", "run the local HTTP service");
  std::optional<int> port;
  bool allow_fetch = false;
  serve->add_option("--port", port, "port on 127.0.0.1 (default FORMFORGE_PORT or 8765; 0 = any)")
      ->check(CLI::Range(0, 65535));
  serve->add_flag("--allow-fetch", allow_fetch, "accept jobs that download a URL");
  add_engine_options(*serve, engine);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(input, fetch, engine, plan_out);
    if (eval->parsed()) return run_eval(annotations, report_out);
    return run_serve(port, allow_fetch, engine);
  } catch (const formforge::Error& e) {
    std::cerr << fmt::format("error: {}: {}\n", e.code(), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << fmt::format("error: {}\n", e.what());
    return kExitError;
  }
}
