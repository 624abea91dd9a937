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

#include "formforge/rules.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "formforge/pattern.hpp"
#include "formforge/text.hpp"
#include "formforge/validator.hpp"

namespace formforge {
namespace {

using Strings = std::vector<std::string>;

std::optional<std::size_t> length_attr(const FieldDescriptor& field, std::string_view key) {
  const auto raw = field.attribute(key);
  if (!raw) return std::nullopt;
  const std::string_view s = text::trim(*raw);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> number_attr(const FieldDescriptor& field, std::string_view key) {
  const auto raw = field.attribute(key);
  if (!raw) return std::nullopt;
  const std::string_view s = text::trim(*raw);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<Pattern> supported_pattern(const FieldDescriptor& field) {
  const auto source = field.attribute("pattern");
  if (!source || field.tag == FieldTag::kTextarea) return std::nullopt;
  return Pattern::compile(*source);
}

bool name_hints(const FieldDescriptor& field, std::initializer_list<std::string_view> needles) {
  const std::string key = text::to_lower(field.name.value_or("") + " " + field.id.value_or(""));
  return std::any_of(needles.begin(), needles.end(),
                     [&](std::string_view n) { return key.find(n) != std::string::npos; });
}

Strings number_candidates(const FieldDescriptor& field) {
  const auto min = number_attr(field, "min");
  const auto max = number_attr(field, "max");
  auto step = number_attr(field, "step");
  if (!step || *step <= 0) step = 1.0;
  const double lo = min.value_or(max ? *max - 100 : 0);
  const double hi = max.value_or(lo + 100);
  Strings out;
  const double span = std::max(0.0, hi - lo);
  const double steps = std::floor(span / *step);
  for (const double k : {std::floor(steps / 2), 0.0, steps, 1.0, std::max(0.0, steps - 1), 2.0, 3.0}) {
    const double v = lo + std::min(k, steps) * *step;
    out.push_back(fmt::format("{}", v));
  }
  return out;
}

Strings base_candidates(const FieldDescriptor& field) {
  const std::string& type = field.input_type;
  if (type == "email") {
    return {"alice@example.com", "bob.smith@example.org", "carol+test@example.net", "dave99@mail.example.com",
            "erin.lee@example.io"};
  }
  if (type == "password") {
    return {"SecurePass123", "Str0ng!Passw0rd", "MyP@ssw0rd2024", "Qwerty!789Zx", "Lock&Key5566"};
  }
  if (type == "url") {
    return {"https://example.com", "https://www.example.org/path", "http://example.net/page?id=1",
            "https://sub.example.io/a/b", "https://example.com/docs#intro"};
  }
  if (type == "tel") return {"+15555550101", "555-0102", "+442071838750", "(555) 010-0104", "09121234567"};
  if (type == "number" || type == "range") return number_candidates(field);
  if (type == "date") return {"2024-01-15", "2023-12-31", "2025-06-30", "2024-02-29", "2022-07-04"};
  if (type == "month") return {"2024-01", "2023-12", "2025-06", "2024-02", "2022-07"};
  if (type == "week") return {"2024-W03", "2023-W52", "2025-W26", "2024-W09", "2022-W27"};
  if (type == "time") return {"09:30", "12:00", "17:45", "08:15", "23:59"};
  if (type == "datetime-local") {
    return {"2024-01-15T09:30", "2023-12-31T23:59", "2025-06-30T12:00", "2024-02-29T08:15", "2022-07-04T17:45"};
  }
  if (type == "color") return {"#1a2b3c", "#ff0000", "#00ff00", "#0000ff", "#ffffff"};
  if (type == "checkbox" || type == "radio") return {"on", "yes", "true", "1", "checked"};
  if (type == "search") return {"laptop", "web form testing", "privacy policy", "contact us", "example query"};
  if (type == "textarea") {
    return {"This is a sample message for testing.", "Hello, I would like more information.",
            "Please contact me at your earliest convenience.", "Testing multi-line input handling.",
            "The quick brown fox jumps over the lazy dog."};
  }
  if (name_hints(field, {"user", "login"})) return {"testuser01", "alice_smith", "bob2024", "qa.tester", "demo_user"};
  if (name_hints(field, {"phone", "mobile"})) return {"+15555550101", "555-0102", "09121234567", "+442071838750", "5550105"};
  if (name_hints(field, {"zip", "postal"})) return {"12345", "90210", "10001", "60601", "73301"};
  if (name_hints(field, {"name"})) return {"Alice Johnson", "Bob Smith", "Carol White", "David Brown", "Erin Lee"};
  return {"Sample text", "Hello World", "Test value 1", "Example input", "Form data"};
}

std::string truncate_scalars(std::string_view s, std::size_t n) {
  const std::u32string cps = text::decode_utf8(s);
  return text::encode_utf8(std::u32string_view(cps).substr(0, n));
}

std::string fit_length(std::string value, std::size_t min_len, std::optional<std::size_t> max_len) {
  constexpr std::string_view kFiller = "abc123xyz7";
  std::size_t len = text::scalar_length(value);
  for (std::size_t k = 0; len < min_len; ++k, ++len) value.push_back(kFiller[k % kFiller.size()]);
  if (max_len && len > *max_len) value = truncate_scalars(value, *max_len);
  return value;
}

void push_unique(Strings& list, std::string value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(std::move(value));
}

Strings generate_examples(const FieldDescriptor& field) {
  const std::size_t min_len = length_attr(field, "minlength").value_or(0);
  const auto max_len = length_attr(field, "maxlength");
  Strings candidates;
  if (const auto pattern = supported_pattern(field)) {
    const std::size_t floor = std::max<std::size_t>(min_len, 1);
    for (auto& s : pattern->sample(kExamplesPerRecord * 2, floor, max_len.value_or(SIZE_MAX))) {
      push_unique(candidates, std::move(s));
    }
  }
  for (const auto& base : base_candidates(field)) push_unique(candidates, fit_length(base, min_len, max_len));
  for (int n = 1; n <= 40; ++n) push_unique(candidates, fit_length(fmt::format("Value{}", n), min_len, max_len));

  Strings examples;
  for (const auto& c : candidates) {
    if (examples.size() == kExamplesPerRecord) break;
    if (!c.empty() && validate_value(c, field).valid) examples.push_back(c);
  }
  // Unsatisfiable constraint sets still yield five entries; the planner
  // will mark the field unfilled.
  for (const auto& c : candidates) {
    if (examples.size() == kExamplesPerRecord) break;
    push_unique(examples, c);
  }
  return examples;
}

std::optional<std::string> format_violation(const std::string& type) {
  if (type == "email") return "not-an-email";
  if (type == "url") return "example.com";
  if (type == "number" || type == "range") return "abc";
  if (type == "date") return "2024-13-45";
  if (type == "month") return "2024-13";
  if (type == "week") return "2024-W60";
  if (type == "time") return "25:61";
  if (type == "datetime-local") return "2024-01-15";
  if (type == "color") return "red";
  return std::nullopt;
}

Strings generate_bad_examples(const FieldDescriptor& field, const Strings& examples) {
  Strings candidates;
  const std::string seed = examples.empty() ? std::string("Sample") : examples.front();
  const auto min_len = length_attr(field, "minlength");
  const auto max_len = length_attr(field, "maxlength");
  if (field.has_attribute("required")) push_unique(candidates, "");
  if (min_len && *min_len >= 2) {
    push_unique(candidates, fit_length(truncate_scalars(seed, *min_len - 1), *min_len - 1, *min_len - 1));
  }
  if (max_len) push_unique(candidates, fit_length(seed, *max_len + 1, *max_len + 1));
  if (const auto pattern = supported_pattern(field)) {
    if (auto counter = pattern->counterexample()) push_unique(candidates, std::move(*counter));
  }
  if (auto broken = format_violation(field.input_type)) push_unique(candidates, std::move(*broken));
  if (field.input_type == "number" || field.input_type == "range") {
    if (const auto min = number_attr(field, "min")) push_unique(candidates, fmt::format("{}", *min - 1));
    if (const auto max = number_attr(field, "max")) push_unique(candidates, fmt::format("{}", *max + 1));
  }
  // More of the same violations, drawn from the other examples.
  for (std::size_t i = 1; i < examples.size(); ++i) {
    if (min_len && *min_len >= 2) push_unique(candidates, truncate_scalars(examples[i], *min_len - 1));
    if (max_len) push_unique(candidates, fit_length(examples[i], *max_len + 1, *max_len + 1));
  }
  if (min_len) {
    for (std::size_t n = *min_len; n-- > 1;) push_unique(candidates, truncate_scalars(fit_length(seed, n, n), n));
  }
  const Strings generics{std::string(),
                         std::string("   "),
                         std::string("<script>alert(1)</script>"),
                         std::string("' OR '1'='1"),
                         std::string(256, 'x'),
                         std::string("null"),
                         std::string("-1")};
  for (const auto& g : generics) push_unique(candidates, g);

  // Only values the local validator rejects count as bad examples.
  Strings bad;
  for (const auto& c : candidates) {
    if (bad.size() == kExamplesPerRecord) break;
    if (!validate_value(c, field).valid) bad.push_back(c);
  }
  // A field without constraints rejects nothing; fall back to the
  // generic hostile inputs so the record keeps its shape.
  for (const auto& g : generics) {
    if (bad.size() == kExamplesPerRecord) break;
    push_unique(bad, g);
  }
  return bad;
}

}  // namespace

std::string describe_constraints(const FieldDescriptor& field) {
  std::string subject = "The value";
  if (field.input_type == "password") subject = "The password";
  if (field.input_type == "email") subject = "The email address";

  Strings sentences;
  if (field.has_attribute("required")) sentences.push_back("This field is required.");
  const auto min_len = length_attr(field, "minlength");
  const auto max_len = length_attr(field, "maxlength");
  if (min_len && max_len) {
    sentences.push_back(fmt::format("{} must be between {} and {} characters long.", subject, *min_len, *max_len));
  } else if (min_len) {
    sentences.push_back(fmt::format("{} must be at least {} characters long.", subject, *min_len));
  } else if (max_len) {
    sentences.push_back(fmt::format("{} must be at most {} characters long.", subject, *max_len));
  }
  if (const auto p = field.attribute("pattern")) {
    sentences.push_back(fmt::format("{} must match the regular expression {}.", subject, *p));
  }
  if (field.input_type == "email") sentences.push_back("The value must be a valid email address.");
  if (field.input_type == "url") sentences.push_back("The value must be an absolute URL including a scheme.");
  if (field.input_type == "number" || field.input_type == "range") sentences.push_back("The value must be a number.");
  if (const auto min = field.attribute("min")) sentences.push_back(fmt::format("The value must not be less than {}.", *min));
  if (const auto max = field.attribute("max")) sentences.push_back(fmt::format("The value must not be greater than {}.", *max));
  if (const auto ph = field.attribute("placeholder")) sentences.push_back(fmt::format("The placeholder suggests \"{}\".", *ph));
  if (sentences.empty()) return "The field declares no validation constraints.";
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

SuggestionRecord rule_based_generate(const FieldDescriptor& field) {
  SuggestionRecord record;
  record.name = field.name.value_or("");
  record.id = field.effective_id();
  record.type = field.input_type;
  record.constraints = describe_constraints(field);
  record.examples = generate_examples(field);
  record.bad_examples = generate_bad_examples(field, record.examples);
  return record;
}

}  // namespace formforge
