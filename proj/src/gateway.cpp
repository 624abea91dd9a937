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

#include "formforge/gateway.hpp"

#include <arpa/inet.h>

#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "formforge/errors.hpp"
#include "formforge/rules.hpp"
#include "formforge/text.hpp"
#include "httplib.h"

namespace formforge {
namespace {

bool is_local_ipv4(const std::array<unsigned char, 4>& a) {
  return a[0] == 127 || a[0] == 10 || (a[0] == 172 && (a[1] & 0xF0) == 16) || (a[0] == 192 && a[1] == 168) ||
         (a[0] == 169 && a[1] == 254) || (a[0] == 0 && a[1] == 0 && a[2] == 0 && a[3] == 0);
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace

void apply_environment(BackendConfig& config) {
  if (const char* endpoint = std::getenv("FORMFORGE_ENDPOINT"); endpoint != nullptr && *endpoint != '\0') {
    config.endpoint_url = endpoint;
  }
}

Endpoint parse_endpoint(std::string_view url) {
  Endpoint ep;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) throw InvalidConfig(fmt::format("endpoint '{}' has no scheme", url));
  ep.scheme = text::to_lower(url.substr(0, scheme_end));
  if (ep.scheme != "http" && ep.scheme != "https") {
    throw InvalidConfig(fmt::format("endpoint scheme must be http or https, got '{}'", ep.scheme));
  }
  std::string_view rest = url.substr(scheme_end + 3);
  const std::size_t path_start = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, path_start);
  ep.path = path_start == std::string_view::npos ? "/" : std::string(rest.substr(path_start));
  if (const std::size_t at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
  std::string_view port_text;
  if (!authority.empty() && authority.front() == '[') {
    const std::size_t close = authority.find(']');
    if (close == std::string_view::npos) throw InvalidConfig(fmt::format("bad IPv6 host in '{}'", url));
    ep.host = std::string(authority.substr(1, close - 1));
    if (close + 1 < authority.size() && authority[close + 1] == ':') port_text = authority.substr(close + 2);
  } else {
    const std::size_t colon = authority.rfind(':');
    ep.host = std::string(authority.substr(0, colon));
    if (colon != std::string_view::npos) port_text = authority.substr(colon + 1);
  }
  if (ep.host.empty()) throw InvalidConfig(fmt::format("endpoint '{}' has no host", url));
  ep.port = ep.scheme == "https" ? 443 : 80;
  if (!port_text.empty()) {
    const auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), ep.port);
    if (ec != std::errc() || ptr != port_text.data() + port_text.size() || ep.port <= 0 || ep.port > 65535) {
      throw InvalidConfig(fmt::format("bad port in '{}'", url));
    }
  }
  return ep;
}

bool is_local_host(std::string_view host) {
  const std::string h = text::to_lower(host);
  if (h == "localhost" || (h.size() > 10 && h.ends_with(".localhost"))) return true;
  std::array<unsigned char, 4> v4{};
  if (inet_pton(AF_INET, h.c_str(), v4.data()) == 1) return is_local_ipv4(v4);
  std::array<unsigned char, 16> v6{};
  if (inet_pton(AF_INET6, h.c_str(), v6.data()) == 1) {
    const bool unspecified_or_loopback =
        std::all_of(v6.begin(), v6.begin() + 15, [](unsigned char b) { return b == 0; }) && v6[15] <= 1;
    if (unspecified_or_loopback) return true;
    if (v6[0] == 0xFE && (v6[1] & 0xC0) == 0x80) return true;  // fe80::/10
    if ((v6[0] & 0xFE) == 0xFC) return true;                    // fc00::/7
    const bool v4_mapped = std::all_of(v6.begin(), v6.begin() + 10, [](unsigned char b) { return b == 0; }) &&
                           v6[10] == 0xFF && v6[11] == 0xFF;
    if (v4_mapped) return is_local_ipv4({v6[12], v6[13], v6[14], v6[15]});
  }
  return false;
}

void enforce_local_endpoint(std::string_view url, bool allow_remote) {
  const Endpoint ep = parse_endpoint(url);
  if (!allow_remote && !is_local_host(ep.host)) {
    throw PrivacyViolation(
        fmt::format("refusing non-local model endpoint '{}' (host {}); pass --allow-remote to override", url, ep.host));
  }
}

std::string RulesBackend::complete(const FieldDescriptor& field, const PromptSpec&) {
  return nlohmann::json(rule_based_generate(field)).dump(2);
}

ReplayBackend::ReplayBackend(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!std::filesystem::is_directory(dir_)) throw InvalidConfig("replay directory not found: " + dir_.string());
}

std::string ReplayBackend::complete(const FieldDescriptor& field, const PromptSpec&) {
  const auto path = dir_ / (transcript_key(field.effective_id()) + ".txt");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BackendUnreachable("no replay transcript " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) {
  enforce_local_endpoint(config_.endpoint_url, config_.allow_remote);
  endpoint_ = parse_endpoint(config_.endpoint_url);
}

std::string HttpBackend::response_text(std::string_view body) {
  const auto json = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (json.is_discarded() || !json.is_object()) return std::string(body);
  for (const char* key : {"text", "response", "content"}) {
    if (json.contains(key) && json[key].is_string()) return json[key].get<std::string>();
  }
  if (json.contains("choices") && json["choices"].is_array() && !json["choices"].empty()) {
    const auto& choice = json["choices"].front();
    if (choice.contains("text") && choice["text"].is_string()) return choice["text"].get<std::string>();
    if (choice.contains("message") && choice["message"].contains("content") &&
        choice["message"]["content"].is_string()) {
      return choice["message"]["content"].get<std::string>();
    }
  }
  return std::string(body);
}

std::string HttpBackend::complete(const FieldDescriptor&, const PromptSpec& prompt) {
  const bool ipv6 = endpoint_.host.find(':') != std::string::npos;
  const std::string origin = fmt::format("{}://{}{}{}:{}", endpoint_.scheme, ipv6 ? "[" : "", endpoint_.host,
                                         ipv6 ? "]" : "", endpoint_.port);
  httplib::Client client(origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  const nlohmann::json request{{"model", config_.model_name},
                               {"prompt", prompt.text},
                               {"temperature", config_.temperature},
                               {"max_tokens", config_.max_tokens}};
  const auto result = client.Post(endpoint_.path, request.dump(), "application/json");
  if (!result) {
    throw BackendUnreachable(fmt::format("{}: {}", config_.endpoint_url, httplib::to_string(result.error())));
  }
  if (result->status < 200 || result->status >= 300) {
    throw BackendUnreachable(fmt::format("{}: HTTP {}", config_.endpoint_url, result->status));
  }
  return response_text(result->body);
}

std::shared_ptr<Backend> make_backend(std::string_view spec, const BackendConfig& config) {
  if (spec == "http") return std::make_shared<HttpBackend>(config);
  if (spec == "rules") return std::make_shared<RulesBackend>();
  constexpr std::string_view kReplay = "replay:";
  if (spec.substr(0, kReplay.size()) == kReplay) {
    return std::make_shared<ReplayBackend>(std::filesystem::path(std::string(spec.substr(kReplay.size()))));
  }
  throw InvalidConfig(fmt::format("backend must be http, rules or replay:<dir>, got '{}'", spec));
}

std::string transcript_key(std::string_view effective_id) {
  std::string key;
  for (const char c : effective_id) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                      c == '_' || c == '.';
    key.push_back(safe ? c : '_');
  }
  if (key.empty() || key.front() == '.') key.insert(0, "field");
  return key;
}

TranscriptLog::TranscriptLog(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoFailure(fmt::format("cannot create transcript directory {}: {}", dir_.string(), ec.message()));
}

void TranscriptLog::record(const std::string& effective_id, const PromptSpec& prompt, int attempt,
                           std::string_view raw) {
  const std::string key = transcript_key(effective_id);
  if (attempt == 0) write_file(dir_ / (key + ".prompt.txt"), prompt.text);
  write_file(dir_ / fmt::format("{}.attempt{}.txt", key, attempt), raw);
  write_file(dir_ / (key + ".txt"), raw);
}

Gateway::Gateway(std::shared_ptr<Backend> backend, BackendConfig config,
                 std::optional<std::filesystem::path> transcript_dir)
    : backend_(std::move(backend)), config_(std::move(config)) {
  if (config_.max_retries < 0) throw InvalidConfig("max_retries must be non-negative");
  if (transcript_dir) log_.emplace(*transcript_dir);
}

SuggestionRecord Gateway::generate_suggestion(const FieldDescriptor& field, const PromptSpec& prompt) {
  std::string last_reason = "no-object-found";
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    const std::string raw = backend_->complete(field, prompt);
    if (log_) log_->record(field.effective_id(), prompt, attempt, raw);
    try {
      return extract_record(raw);
    } catch (const MalformedOutput& e) {
      last_reason = e.reason();
    }
  }
  throw MalformedOutput(last_reason);
}

}  // namespace formforge
