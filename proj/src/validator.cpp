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

#include "formforge/validator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "formforge/pattern.hpp"
#include "formforge/text.hpp"

namespace formforge {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool all_digits(std::string_view s, std::size_t count) {
  return s.size() == count && std::all_of(s.begin(), s.end(), is_digit);
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::optional<std::size_t> parse_length(std::string_view raw) {
  raw = text::trim(raw);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size()) return std::nullopt;
  return v;
}

// HTML "valid floating-point number".
std::optional<double> parse_number(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const std::size_t int_start = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  bool digits = i > int_start;
  if (i < s.size() && s[i] == '.') {
    ++i;
    const std::size_t frac_start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == frac_start) return std::nullopt;
    digits = true;
  }
  if (!digits) return std::nullopt;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    const std::size_t exp_start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == exp_start) return std::nullopt;
  }
  if (i != s.size()) return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool valid_date(std::string_view s) {
  if (s.size() < 10 || s[s.size() - 3] != '-' || s[s.size() - 6] != '-') return false;
  const std::string_view year = s.substr(0, s.size() - 6);
  if (year.size() < 4 || !std::all_of(year.begin(), year.end(), is_digit)) return false;
  const std::string_view month = s.substr(s.size() - 5, 2);
  const std::string_view day = s.substr(s.size() - 2);
  if (!all_digits(month, 2) || !all_digits(day, 2)) return false;
  const int y = to_int(year);
  const int m = to_int(month);
  const int d = to_int(day);
  if (y < 1 || m < 1 || m > 12 || d < 1) return false;
  constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return d <= kDays[m - 1] + ((m == 2 && leap) ? 1 : 0);
}

bool valid_month(std::string_view s) {
  if (s.size() < 7 || s[s.size() - 3] != '-') return false;
  const std::string_view year = s.substr(0, s.size() - 3);
  const std::string_view month = s.substr(s.size() - 2);
  return year.size() >= 4 && std::all_of(year.begin(), year.end(), is_digit) && all_digits(month, 2) &&
         to_int(year) >= 1 && to_int(month) >= 1 && to_int(month) <= 12;
}

bool valid_week(std::string_view s) {
  const std::size_t w = s.find("-W");
  if (w == std::string_view::npos || w < 4) return false;
  const std::string_view year = s.substr(0, w);
  const std::string_view week = s.substr(w + 2);
  return std::all_of(year.begin(), year.end(), is_digit) && all_digits(week, 2) && to_int(week) >= 1 &&
         to_int(week) <= 53;
}

bool valid_time(std::string_view s) {
  if (s.size() < 5 || !all_digits(s.substr(0, 2), 2) || s[2] != ':' || !all_digits(s.substr(3, 2), 2)) return false;
  if (to_int(s.substr(0, 2)) > 23 || to_int(s.substr(3, 2)) > 59) return false;
  if (s.size() == 5) return true;
  if (s.size() < 8 || s[5] != ':' || !all_digits(s.substr(6, 2), 2) || to_int(s.substr(6, 2)) > 59) return false;
  if (s.size() == 8) return true;
  const std::string_view frac = s.substr(9);
  return s[8] == '.' && !frac.empty() && frac.size() <= 3 && std::all_of(frac.begin(), frac.end(), is_digit);
}

bool valid_datetime_local(std::string_view s) {
  const std::size_t sep = s.find_first_of("T ");
  return sep != std::string_view::npos && valid_date(s.substr(0, sep)) && valid_time(s.substr(sep + 1));
}

bool valid_email(std::string_view s) {
  const std::size_t at = s.find('@');
  if (at == std::string_view::npos || at == 0 || at + 1 == s.size()) return false;
  if (s.find('@', at + 1) != std::string_view::npos) return false;
  return std::none_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

bool valid_url(std::string_view s) {
  const std::size_t colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == s.size()) return false;
  const auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(colon), [&](char c) {
    return alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.';
  });
}

bool valid_color(std::string_view s) {
  return s.size() == 7 && s[0] == '#' && std::all_of(s.begin() + 1, s.end(), [](char c) {
           return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
         });
}

bool pattern_applies(std::string_view type) {
  constexpr std::string_view kExempt[] = {"number", "range", "date", "month", "week", "time",
                                          "datetime-local", "color", "checkbox", "radio", "file",
                                          "submit", "button", "reset", "image", "hidden", "textarea"};
  return std::find(std::begin(kExempt), std::end(kExempt), type) == std::end(kExempt);
}

bool is_temporal(std::string_view type) {
  return type == "date" || type == "month" || type == "week" || type == "time" || type == "datetime-local";
}

// nullopt: no format rule for this type.
std::optional<bool> check_format(std::string_view type, std::string_view value) {
  if (type == "email") return valid_email(value);
  if (type == "url") return valid_url(value);
  if (type == "number" || type == "range") return parse_number(value).has_value();
  if (type == "date") return valid_date(value);
  if (type == "month") return valid_month(value);
  if (type == "week") return valid_week(value);
  if (type == "time") return valid_time(value);
  if (type == "datetime-local") return valid_datetime_local(value);
  if (type == "color") return valid_color(value);
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::kRequired: return "required";
    case Constraint::kMinLength: return "minlength";
    case Constraint::kMaxLength: return "maxlength";
    case Constraint::kPattern: return "pattern";
    case Constraint::kTypeFormat: return "type_format";
    case Constraint::kMin: return "min";
    case Constraint::kMax: return "max";
  }
  return "unknown";
}

bool ValidationVerdict::violates(Constraint c) const {
  return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.constraint == c; });
}

void to_json(nlohmann::json& j, const ValidationVerdict& verdict) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : verdict.violations) {
    violations.push_back({{"constraint", to_string(v.constraint)}, {"detail", v.detail}});
  }
  j = nlohmann::json{{"valid", verdict.valid}, {"violations", violations}, {"warnings", verdict.warnings}};
}

ValidationVerdict validate_value(std::string_view value, const FieldDescriptor& field) {
  ValidationVerdict verdict;
  auto violate = [&](Constraint c, std::string detail) { verdict.violations.push_back({c, std::move(detail)}); };
  const std::string& type = field.input_type;

  if (field.has_attribute("required") && value.empty()) violate(Constraint::kRequired, "value is required");

  if (!value.empty()) {
    const std::size_t length = text::scalar_length(value);
    for (const auto& [key, kind] : {std::pair{"minlength", Constraint::kMinLength},
                                   std::pair{"maxlength", Constraint::kMaxLength}}) {
      const auto raw = field.attribute(key);
      if (!raw) continue;
      const auto bound = parse_length(*raw);
      if (!bound) {
        verdict.warnings.push_back(fmt::format("ignored-attribute:{}={}", key, *raw));
        continue;
      }
      if (kind == Constraint::kMinLength && length < *bound) {
        violate(kind, fmt::format("length {} < minlength {}", length, *bound));
      } else if (kind == Constraint::kMaxLength && length > *bound) {
        violate(kind, fmt::format("length {} > maxlength {}", length, *bound));
      }
    }

    if (const auto source = field.attribute("pattern"); source && pattern_applies(type)) {
      std::string error;
      if (const auto pattern = Pattern::compile(*source, &error)) {
        if (!pattern->full_match(value)) violate(Constraint::kPattern, fmt::format("does not match /{}/", *source));
      } else {
        verdict.warnings.push_back(fmt::format("unsupported-pattern: {} ({})", *source, error));
      }
    }

    const auto format_ok = check_format(type, value);
    if (format_ok && !*format_ok) violate(Constraint::kTypeFormat, fmt::format("not a valid {} value", type));

    if (format_ok.value_or(false)) {
      for (const auto& [key, kind] : {std::pair{"min", Constraint::kMin}, std::pair{"max", Constraint::kMax}}) {
        const auto raw = field.attribute(key);
        if (!raw) continue;
        if (type == "number" || type == "range") {
          const auto bound = parse_number(text::trim(*raw));
          if (!bound) {
            verdict.warnings.push_back(fmt::format("ignored-attribute:{}={}", key, *raw));
            continue;
          }
          const double v = *parse_number(value);
          if (kind == Constraint::kMin && v < *bound) violate(kind, fmt::format("{} < min {}", value, *raw));
          if (kind == Constraint::kMax && v > *bound) violate(kind, fmt::format("{} > max {}", value, *raw));
        } else if (is_temporal(type)) {
          // Same-format ISO strings order lexicographically.
          const std::string_view bound = text::trim(*raw);
          if (kind == Constraint::kMin && value < bound) violate(kind, fmt::format("{} < min {}", value, bound));
          if (kind == Constraint::kMax && value > bound) violate(kind, fmt::format("{} > max {}", value, bound));
        }
      }
    }
  }

  verdict.valid = verdict.violations.empty();
  return verdict;
}

std::vector<bool> verify_bad_examples(const SuggestionRecord& record, const FieldDescriptor& field) {
  std::vector<bool> rejected;
  rejected.reserve(record.bad_examples.size());
  for (const auto& bad : record.bad_examples) rejected.push_back(!validate_value(bad, field).valid);
  return rejected;
}

}  // namespace formforge
