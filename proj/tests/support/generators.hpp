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

// Hand-rolled random generators for property tests. Header-only so the
// gtest suites and the plain acceptance binary can share them.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace formforge::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi].
  std::size_t range(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[range(0, items.size() - 1)];
  }
  std::string word(std::size_t lo = 1, std::size_t hi = 8) {
    static constexpr std::string_view kAlpha = "abcdefghijklmnopqrstuvwxyz";
    std::string out;
    for (std::size_t n = range(lo, hi); n > 0; --n) out.push_back(kAlpha[range(0, kAlpha.size() - 1)]);
    return out;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Randomly cased copy, for tag and attribute names.
inline std::string random_case(Gen& g, std::string_view s) {
  std::string out(s);
  if (g.chance(0.2)) {
    for (char& c : out) {
      if (c >= 'a' && c <= 'z' && g.chance(0.5)) c = static_cast<char>(c - 'a' + 'A');
    }
  }
  return out;
}

/// name=value with a random quoting style. `value` must not need escaping
/// for the chosen style; callers pass plain words.
inline std::string attribute(Gen& g, std::string_view name, std::string_view value) {
  const std::string key = random_case(g, name);
  switch (g.range(0, 2)) {
    case 0: return key + "=\"" + std::string(value) + "\"";
    case 1: return key + "='" + std::string(value) + "'";
    default:
      if (value.empty()) return key + "=\"\"";
      return key + "=" + std::string(value);
  }
}

/// Random document mixing visible and hidden inputs, textareas, selects,
/// buttons, comments and scripts inside nested containers. Decoy markup
/// inside comments, scripts and textarea bodies must not be detected.
inline std::string random_form_document(Gen& g) {
  std::string out = g.chance(0.5) ? "<!DOCTYPE html>\n" : "";
  out += "<html><body>";
  std::vector<std::string> ids;
  const auto id_value = [&] {
    // Occasional duplicates exercise the positional selector fallback.
    if (!ids.empty() && g.chance(0.15)) return g.pick(ids);
    ids.push_back("f" + g.word(1, 4) + std::to_string(ids.size()));
    return ids.back();
  };
  const auto identity = [&] {
    std::string attrs;
    const std::size_t which = g.range(0, 3);
    if (which == 0 || which == 2) attrs += " " + attribute(g, "id", id_value());
    if (which == 1 || which == 2) attrs += " " + attribute(g, "name", g.word());
    return attrs;
  };
  const auto input = [&] {
    std::string tag = "<" + random_case(g, "input") + identity();
    static const std::vector<std::string> kTypes{"text", "email", "password", "number", "hidden",
                                                 "url",  "tel",   "date",     "HIDDEN", "checkbox"};
    if (g.chance(0.8)) tag += " " + attribute(g, "type", g.pick(kTypes));
    if (g.chance(0.1)) tag += " hidden";
    if (g.chance(0.1)) tag += " " + attribute(g, "aria-hidden", g.chance(0.5) ? "true" : "false");
    if (g.chance(0.1)) tag += " style=\"" + std::string(g.chance(0.5) ? "display: none" : "color: red") + "\"";
    if (g.chance(0.3)) tag += " " + attribute(g, "minlength", std::to_string(g.range(0, 12)));
    if (g.chance(0.2)) tag += " required";
    tag += g.chance(0.2) ? " />" : ">";
    return tag;
  };
  const auto leaf = [&]() -> std::string {
    switch (g.range(0, 9)) {
      case 0:
      case 1:
      case 2: return input();
      case 3: {
        std::string body = g.chance(0.3) ? "<input name=\"decoy\">" : g.word();
        std::string t = "<textarea" + identity();
        if (g.chance(0.15)) t += " hidden";
        return t + ">" + body + "</textarea>";
      }
      case 4: return "<select" + identity() + "><option>" + g.word() + "</option><option>x</option></select>";
      case 5: return "<button" + identity() + ">" + g.word() + "</button>";
      case 6: return "<!-- <input name=\"commented\"> -->";
      case 7: return "<script>var s = '<input name=\"scripted\">';</script>";
      case 8: return "<label>" + g.word() + "</label>";
      default: return g.word();
    }
  };
  // Nested containers from a random stack walk.
  static const std::vector<std::string> kContainers{"div", "form", "section", "span", "fieldset", "p"};
  std::vector<std::string> open;
  for (std::size_t steps = g.range(0, 30); steps > 0; --steps) {
    const std::size_t action = g.range(0, 5);
    if (action == 0 && open.size() < 6) {
      std::string tag = g.pick(kContainers);
      // Keep forms un-nested and block elements out of <p>; both would make
      // the tree depend on recovery rules the oracle does not model.
      if (tag == "form" && std::find(open.begin(), open.end(), "form") != open.end()) tag = "div";
      if (!open.empty() && (open.back() == "p" || open.back() == "span")) tag = "span";
      out += "<" + random_case(g, tag) + (g.chance(0.3) ? " class=\"c\"" : "") + ">";
      open.push_back(tag);
    } else if (action == 1 && !open.empty()) {
      out += "</" + open.back() + ">";
      open.pop_back();
    } else {
      out += leaf();
    }
  }
  while (!open.empty()) {
    out += "</" + open.back() + ">";
    open.pop_back();
  }
  out += "</body></html>";
  return out;
}

/// A random tree of nested containers with text padding and at least one
/// input. Used for the context-window properties.
inline std::string random_nested_document(Gen& g) {
  std::string out;
  std::size_t inputs = 0;
  const auto padding = [&] {
    std::string s;
    for (std::size_t n = g.range(0, 6); n > 0; --n) s += g.word(1, 12) + " ";
    return s;
  };
  // Recursive builder with an explicit depth bound.
  struct Builder {
    Gen& g;
    std::size_t& inputs;
    const decltype(padding)& pad;
    std::string build(std::size_t depth) {
      static const std::vector<std::string> kTags{"div", "section", "form", "fieldset", "main", "article"};
      const std::string tag = g.pick(kTags);
      std::string s = "<" + tag + (g.chance(0.4) ? " class=\"" + g.word() + "\"" : "") + ">" + pad();
      for (std::size_t k = g.range(0, 3); k > 0; --k) {
        if (depth > 0 && g.chance(0.6)) {
          s += build(depth - 1);
        } else if (g.chance(0.5)) {
          s += "<input name=\"n" + std::to_string(inputs++) + "\" type=\"text\">";
        } else {
          s += "<label>" + pad() + "</label>";
        }
      }
      return s + "</" + tag + ">";
    }
  } builder{g, inputs, padding};
  out = "<html><body>" + builder.build(g.range(1, 7));
  if (inputs == 0) out += "<div><input name=\"n0\"></div>";
  return out + "</body></html>";
}

}  // namespace formforge::testing
