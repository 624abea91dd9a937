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

#include <stdexcept>
#include <string>
#include <utility>

namespace formforge {

/// Base class of every error raised by the library. `code()` is a stable,
/// machine-readable identifier (used in CLI exit paths and HTTP payloads).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define FORMFORGE_DEFINE_ERROR(Name, code_string)                  \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& message)                      \
        : Error(code_string, message) {}                           \
  }

FORMFORGE_DEFINE_ERROR(SelectorNotFound, "selector-not-found");
FORMFORGE_DEFINE_ERROR(SelectorAmbiguous, "selector-ambiguous");
FORMFORGE_DEFINE_ERROR(ElementTooLarge, "element-too-large");
FORMFORGE_DEFINE_ERROR(BackendUnreachable, "backend-unreachable");
FORMFORGE_DEFINE_ERROR(PrivacyViolation, "privacy-violation");
FORMFORGE_DEFINE_ERROR(InvalidAnnotation, "invalid-annotation");
FORMFORGE_DEFINE_ERROR(SourceUnreadable, "source-unreadable");
FORMFORGE_DEFINE_ERROR(UnknownField, "unknown-field");
FORMFORGE_DEFINE_ERROR(IoFailure, "io-failure");
FORMFORGE_DEFINE_ERROR(InvalidConfig, "invalid-config");
FORMFORGE_DEFINE_ERROR(JobNotDone, "job-not-done");
FORMFORGE_DEFINE_ERROR(UnknownJob, "unknown-job");

#undef FORMFORGE_DEFINE_ERROR

/// Raised when no usable suggestion record can be recovered from model
/// output. `reason()` is one of `no-object-found`, `missing-key:<k>`,
/// `wrong-type:<k>`, `empty-key:<k>` or `wrong-list-length:<k>`.
class MalformedOutput : public Error {
 public:
  explicit MalformedOutput(std::string reason)
      : Error("malformed-output", "malformed model output: " + reason),
        reason_(std::move(reason)) {}

  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

}  // namespace formforge
