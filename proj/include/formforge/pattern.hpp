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

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace formforge {

/// The subset of HTML `pattern` syntax the validator understands: literals,
/// `.`, character classes (ranges, negation, \d \w \s and their negations),
/// groups `( )` / `(?: )`, alternation, the quantifiers `* + ? {n} {n,}
/// {n,m}` (lazy forms included), and a leading `^` / trailing `$`.
/// Lookaround, backreferences, named groups, word boundaries, Unicode
/// property escapes and class set operations are rejected as unsupported.
///
/// Matching follows HTML semantics: the whole value must match, as if the
/// source were wrapped in `^(?:...)$`. Matching is over Unicode scalar
/// values and runs as an NFA simulation, so it is linear in the input.
class Pattern {
 public:
  struct Compiled;

  /// Returns nullopt when the source is outside the supported subset or
  /// malformed; `error` then receives a short reason.
  static std::optional<Pattern> compile(std::string_view source, std::string* error = nullptr);

  bool full_match(std::string_view value) const;

  /// Up to `count` distinct strings that fully match, with scalar length in
  /// [min_length, max_length]. Deterministic for a given pattern.
  std::vector<std::string> sample(std::size_t count, std::size_t min_length = 0,
                                  std::size_t max_length = std::numeric_limits<std::size_t>::max()) const;

  /// A short non-empty string that does not match, if one of a fixed set
  /// of probes qualifies.
  std::optional<std::string> counterexample() const;

  const std::string& source() const noexcept { return source_; }

 private:
  Pattern() = default;

  std::string source_;
  std::shared_ptr<const Compiled> compiled_;
};

}  // namespace formforge
