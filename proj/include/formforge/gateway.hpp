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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "formforge/forms.hpp"
#include "formforge/prompt.hpp"
#include "formforge/record.hpp"

namespace formforge {

struct BackendConfig {
  std::string endpoint_url = "http://127.0.0.1:8080/completion";
  std::string model_name = "llama3.1:8b";
  std::chrono::milliseconds timeout{120000};
  int max_retries = 3;
  double temperature = 0.0;
  int max_tokens = 1024;
  /// Permit endpoints outside loopback and private ranges.
  bool allow_remote = false;
};

/// Applies FORMFORGE_ENDPOINT, when set, to `config.endpoint_url`.
void apply_environment(BackendConfig& config);

struct Endpoint {
  std::string scheme;
  std::string host;  // without IPv6 brackets
  int port = 0;
  std::string path;
};

/// Parses `scheme://host[:port][/path]`. Throws InvalidConfig.
Endpoint parse_endpoint(std::string_view url);

/// Loopback, private (RFC 1918 / unique-local), link-local, or a
/// `localhost` name. Other host names count as non-local: they are never
/// resolved, since a DNS query would itself leave the machine.
bool is_local_host(std::string_view host);

/// Throws PrivacyViolation for a non-local endpoint unless allow_remote.
void enforce_local_endpoint(std::string_view url, bool allow_remote);

/// A source of raw model text for one field. Implementations must be safe
/// to call concurrently for different fields.
class Backend {
 public:
  virtual ~Backend() = default;
  /// Throws BackendUnreachable when no answer can be obtained.
  virtual std::string complete(const FieldDescriptor& field, const PromptSpec& prompt) = 0;
  virtual std::string name() const = 0;
};

/// Serializes rule_based_generate() output; never touches the network.
class RulesBackend final : public Backend {
 public:
  std::string complete(const FieldDescriptor& field, const PromptSpec& prompt) override;
  std::string name() const override { return "rules"; }
};

/// Replays `<dir>/<transcript-key>.txt`, as written by TranscriptLog.
class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(std::filesystem::path dir);
  std::string complete(const FieldDescriptor& field, const PromptSpec& prompt) override;
  std::string name() const override { return "replay"; }

 private:
  std::filesystem::path dir_;
};

/// Completion-style HTTP client. Request body:
/// `{"model", "prompt", "temperature", "max_tokens"}`; the reply's text is
/// read from `text`, or from the `response` / `content` /
/// `choices[0].text` / `choices[0].message.content` shapes other local
/// servers use. The privacy check runs in the constructor, before any
/// socket exists.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig config);
  std::string complete(const FieldDescriptor& field, const PromptSpec& prompt) override;
  std::string name() const override { return "http"; }

  /// Pulls the completion text out of a server reply body.
  static std::string response_text(std::string_view body);

 private:
  BackendConfig config_;
  Endpoint endpoint_;
};

/// Builds a backend from `http`, `rules` or `replay:<dir>`.
std::shared_ptr<Backend> make_backend(std::string_view spec, const BackendConfig& config);

/// File-name-safe key for a field's transcripts.
std::string transcript_key(std::string_view effective_id);

/// Writes prompts and raw outputs under a local directory for audit.
class TranscriptLog {
 public:
  explicit TranscriptLog(std::filesystem::path dir);
  void record(const std::string& effective_id, const PromptSpec& prompt, int attempt, std::string_view raw);

 private:
  std::filesystem::path dir_;
};

/// Sends prompts through a backend and turns replies into records,
/// retrying on malformed output.
class Gateway {
 public:
  Gateway(std::shared_ptr<Backend> backend, BackendConfig config,
          std::optional<std::filesystem::path> transcript_dir = std::nullopt);

  /// Invokes the backend at most 1 + max_retries times. Throws
  /// MalformedOutput (carrying the last reason) when every reply is
  /// unusable; BackendUnreachable is not retried.
  SuggestionRecord generate_suggestion(const FieldDescriptor& field, const PromptSpec& prompt);

  const BackendConfig& config() const noexcept { return config_; }
  Backend& backend() noexcept { return *backend_; }

 private:
  std::shared_ptr<Backend> backend_;
  BackendConfig config_;
  std::optional<TranscriptLog> log_;
};

}  // namespace formforge
