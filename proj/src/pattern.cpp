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

#include "formforge/pattern.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "formforge/text.hpp"

namespace formforge {
namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kMaxRepeat = 1000;
constexpr std::size_t kMaxStates = 200000;
constexpr char32_t kMaxCodePoint = 0x10FFFF;

using Range = std::pair<char32_t, char32_t>;

struct CharSet {
  std::vector<Range> ranges;
  bool negated = false;

  bool contains(char32_t c) const {
    const bool in = std::any_of(ranges.begin(), ranges.end(),
                                [c](const Range& r) { return c >= r.first && c <= r.second; });
    return in != negated;
  }
};

std::vector<Range> normalize(std::vector<Range> ranges) {
  std::sort(ranges.begin(), ranges.end());
  std::vector<Range> out;
  for (const Range& r : ranges) {
    if (!out.empty() && r.first <= out.back().second + 1) {
      out.back().second = std::max(out.back().second, r.second);
    } else {
      out.push_back(r);
    }
  }
  return out;
}

std::vector<Range> complement(std::vector<Range> ranges) {
  ranges = normalize(std::move(ranges));
  std::vector<Range> out;
  char32_t next = 0;
  for (const Range& r : ranges) {
    if (r.first > next) out.emplace_back(next, r.first - 1);
    next = r.second + 1;
  }
  if (next <= kMaxCodePoint) out.emplace_back(next, kMaxCodePoint);
  return out;
}

const std::vector<Range>& digit_ranges() {
  static const std::vector<Range> r{{U'0', U'9'}};
  return r;
}
const std::vector<Range>& word_ranges() {
  static const std::vector<Range> r{{U'0', U'9'}, {U'A', U'Z'}, {U'_', U'_'}, {U'a', U'z'}};
  return r;
}
const std::vector<Range>& space_ranges() {
  static const std::vector<Range> r{{0x09, 0x0D}, {0x20, 0x20}, {0xA0, 0xA0}, {0x1680, 0x1680},
                                    {0x2000, 0x200A}, {0x2028, 0x2029}, {0x202F, 0x202F},
                                    {0x205F, 0x205F}, {0x3000, 0x3000}, {0xFEFF, 0xFEFF}};
  return r;
}

struct Ast {
  enum class Kind { kEmpty, kChar, kSeq, kAlt, kRepeat };
  Kind kind = Kind::kEmpty;
  CharSet set;
  std::vector<Ast> children;
  std::size_t min = 0;
  std::size_t max = 0;
};

struct Rejected {
  std::string reason;
};

class Parser {
 public:
  explicit Parser(std::u32string src) : s_(std::move(src)) {}

  Ast parse() {
    if (!s_.empty() && s_.front() == U'^') pos_ = 1;
    Ast ast = parse_alternation();
    if (pos_ != s_.size()) throw Rejected{"unbalanced ')'"};
    return ast;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char32_t peek() const { return s_[pos_]; }

  Ast parse_alternation() {
    Ast first = parse_sequence();
    if (at_end() || peek() != U'|') return first;
    Ast alt;
    alt.kind = Ast::Kind::kAlt;
    alt.children.push_back(std::move(first));
    while (!at_end() && peek() == U'|') {
      ++pos_;
      alt.children.push_back(parse_sequence());
    }
    return alt;
  }

  Ast parse_sequence() {
    Ast seq;
    seq.kind = Ast::Kind::kSeq;
    while (!at_end() && peek() != U'|' && peek() != U')') {
      if (peek() == U'$') {
        if (depth_ == 0 && pos_ + 1 == s_.size()) {
          ++pos_;
          continue;
        }
        throw Rejected{"'$' is only supported at the end"};
      }
      Ast atom = parse_atom();
      seq.children.push_back(parse_quantifier(std::move(atom)));
    }
    if (seq.children.size() == 1) return std::move(seq.children.front());
    if (seq.children.empty()) seq.kind = Ast::Kind::kEmpty;
    return seq;
  }

  static Ast literal(char32_t c) {
    Ast a;
    a.kind = Ast::Kind::kChar;
    a.set.ranges = {{c, c}};
    return a;
  }

  static Ast from_ranges(std::vector<Range> ranges, bool negated = false) {
    Ast a;
    a.kind = Ast::Kind::kChar;
    a.set.ranges = std::move(ranges);
    a.set.negated = negated;
    return a;
  }

  Ast parse_atom() {
    const char32_t c = s_[pos_++];
    switch (c) {
      case U'(': {
        if (!at_end() && peek() == U'?') {
          if (pos_ + 1 < s_.size() && s_[pos_ + 1] == U':') {
            pos_ += 2;
          } else {
            throw Rejected{"lookaround and named groups are unsupported"};
          }
        }
        ++depth_;
        Ast inner = parse_alternation();
        --depth_;
        if (at_end() || peek() != U')') throw Rejected{"missing ')'"};
        ++pos_;
        return inner;
      }
      case U'[':
        return parse_class();
      case U'.':
        return from_ranges({{U'\n', U'\n'}, {U'\r', U'\r'}, {0x2028, 0x2029}}, /*negated=*/true);
      case U'\\':
        return parse_escape();
      case U'^':
        throw Rejected{"'^' is only supported at the start"};
      case U'*':
      case U'+':
      case U'?':
      case U'{':
        throw Rejected{"quantifier without a target"};
      case U']':
      case U'}':
        throw Rejected{"unescaped bracket"};
      default:
        return literal(c);
    }
  }

  char32_t read_hex(std::size_t digits) {
    if (pos_ + digits > s_.size()) throw Rejected{"truncated hex escape"};
    char32_t value = 0;
    for (std::size_t k = 0; k < digits; ++k) {
      const char32_t h = s_[pos_++];
      value <<= 4;
      if (h >= U'0' && h <= U'9') {
        value |= h - U'0';
      } else if (h >= U'a' && h <= U'f') {
        value |= h - U'a' + 10;
      } else if (h >= U'A' && h <= U'F') {
        value |= h - U'A' + 10;
      } else {
        throw Rejected{"bad hex escape"};
      }
    }
    return value;
  }

  // Shared by top-level and class escapes. Returns either a single code
  // point (ranges of size one) or a predefined class.
  std::pair<std::vector<Range>, bool> read_escape(bool in_class) {
    if (at_end()) throw Rejected{"trailing backslash"};
    const char32_t e = s_[pos_++];
    switch (e) {
      case U'd': return {digit_ranges(), false};
      case U'D': return {complement(digit_ranges()), false};
      case U'w': return {word_ranges(), false};
      case U'W': return {complement(word_ranges()), false};
      case U's': return {space_ranges(), false};
      case U'S': return {complement(space_ranges()), false};
      case U't': return {{{U'\t', U'\t'}}, true};
      case U'n': return {{{U'\n', U'\n'}}, true};
      case U'r': return {{{U'\r', U'\r'}}, true};
      case U'f': return {{{U'\f', U'\f'}}, true};
      case U'v': return {{{U'\v', U'\v'}}, true};
      case U'0':
        if (!at_end() && peek() >= U'0' && peek() <= U'9') throw Rejected{"octal escapes are unsupported"};
        return {{{0, 0}}, true};
      case U'x': {
        const char32_t v = read_hex(2);
        return {{{v, v}}, true};
      }
      case U'u': {
        char32_t v = 0;
        if (!at_end() && peek() == U'{') {
          ++pos_;
          const std::size_t close = s_.find(U'}', pos_);
          if (close == std::u32string::npos || close == pos_ || close - pos_ > 6) throw Rejected{"bad \\u{} escape"};
          v = read_hex(close - pos_);
          ++pos_;
        } else {
          v = read_hex(4);
        }
        if (v > kMaxCodePoint) throw Rejected{"code point out of range"};
        return {{{v, v}}, true};
      }
      case U'b':
        if (in_class) return {{{0x08, 0x08}}, true};
        throw Rejected{"word boundaries are unsupported"};
      default:
        break;
    }
    constexpr std::u32string_view kSyntax = U"^$\\.*+?()[]{}|/-";
    if (kSyntax.find(e) != std::u32string_view::npos) return {{{e, e}}, true};
    if (e >= U'1' && e <= U'9') throw Rejected{"backreferences are unsupported"};
    throw Rejected{"unsupported escape"};
  }

  Ast parse_escape() {
    auto [ranges, single] = read_escape(false);
    (void)single;
    return from_ranges(std::move(ranges));
  }

  Ast parse_class() {
    CharSet set;
    if (!at_end() && peek() == U'^') {
      set.negated = true;
      ++pos_;
    }
    bool first = true;
    while (true) {
      if (at_end()) throw Rejected{"missing ']'"};
      char32_t c = peek();
      if (c == U']' && !first) {
        ++pos_;
        break;
      }
      if (c == U'[') throw Rejected{"nested classes are unsupported"};
      if ((c == U'&' || c == U'-') && pos_ + 1 < s_.size() && s_[pos_ + 1] == c && !first) {
        throw Rejected{"class set operations are unsupported"};
      }
      first = false;
      ++pos_;
      std::vector<Range> lhs;
      bool lhs_single = true;
      if (c == U'\\') {
        std::tie(lhs, lhs_single) = read_escape(true);
      } else {
        lhs = {{c, c}};
      }
      // Range "a-z"; a '-' before ']' is literal.
      if (lhs_single && pos_ + 1 < s_.size() && peek() == U'-' && s_[pos_ + 1] != U']') {
        ++pos_;
        char32_t hi = s_[pos_++];
        if (hi == U'\\') {
          auto [rhs, rhs_single] = read_escape(true);
          if (!rhs_single) throw Rejected{"class escape used as range bound"};
          hi = rhs.front().first;
        }
        if (hi < lhs.front().first) throw Rejected{"range out of order"};
        set.ranges.emplace_back(lhs.front().first, hi);
      } else {
        set.ranges.insert(set.ranges.end(), lhs.begin(), lhs.end());
      }
    }
    set.ranges = normalize(std::move(set.ranges));
    Ast a;
    a.kind = Ast::Kind::kChar;
    a.set = std::move(set);
    return a;
  }

  std::optional<std::size_t> read_number() {
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (!at_end() && peek() >= U'0' && peek() <= U'9') {
      value = std::min<std::size_t>(value * 10 + (peek() - U'0'), kMaxRepeat + 1);
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return value;
  }

  Ast parse_quantifier(Ast atom) {
    if (at_end()) return atom;
    std::size_t lo = 0;
    std::size_t hi = 0;
    const char32_t q = peek();
    if (q == U'*') {
      lo = 0, hi = kUnbounded, ++pos_;
    } else if (q == U'+') {
      lo = 1, hi = kUnbounded, ++pos_;
    } else if (q == U'?') {
      lo = 0, hi = 1, ++pos_;
    } else if (q == U'{') {
      ++pos_;
      const auto n = read_number();
      if (!n) throw Rejected{"malformed {n,m} quantifier"};
      lo = hi = *n;
      if (!at_end() && peek() == U',') {
        ++pos_;
        const auto m = read_number();
        hi = m ? *m : kUnbounded;
      }
      if (at_end() || peek() != U'}') throw Rejected{"malformed {n,m} quantifier"};
      ++pos_;
      if (hi < lo) throw Rejected{"quantifier bounds out of order"};
      if (lo > kMaxRepeat || (hi != kUnbounded && hi > kMaxRepeat)) throw Rejected{"repeat count too large"};
    } else {
      return atom;
    }
    if (!at_end() && peek() == U'?') ++pos_;  // lazy: same language
    if (!at_end() && (peek() == U'*' || peek() == U'+' || peek() == U'?' || peek() == U'{')) {
      throw Rejected{"nothing to repeat"};
    }
    Ast rep;
    rep.kind = Ast::Kind::kRepeat;
    rep.min = lo;
    rep.max = hi;
    rep.children.push_back(std::move(atom));
    return rep;
  }

  std::u32string s_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// Thompson NFA.
struct State {
  enum class Type : std::uint8_t { kSet, kSplit, kEps, kMatch };
  Type type;
  int set = -1;
  int out = -1;
  int out1 = -1;
};

struct Fragment {
  int start;
  std::vector<std::pair<int, int>> outs;  // (state, 0 = out / 1 = out1)
};

class NfaBuilder {
 public:
  NfaBuilder(std::vector<State>& states, std::vector<CharSet>& sets) : states_(states), sets_(sets) {}

  Fragment build(const Ast& ast) {
    switch (ast.kind) {
      case Ast::Kind::kEmpty:
        return epsilon();
      case Ast::Kind::kChar: {
        sets_.push_back(ast.set);
        const int s = add({State::Type::kSet, static_cast<int>(sets_.size()) - 1});
        return {s, {{s, 0}}};
      }
      case Ast::Kind::kSeq: {
        Fragment f = build(ast.children.front());
        for (std::size_t i = 1; i < ast.children.size(); ++i) f = concat(std::move(f), build(ast.children[i]));
        return f;
      }
      case Ast::Kind::kAlt: {
        Fragment f = build(ast.children.front());
        for (std::size_t i = 1; i < ast.children.size(); ++i) {
          Fragment g = build(ast.children[i]);
          const int sp = add({State::Type::kSplit, -1, f.start, g.start});
          f.start = sp;
          f.outs.insert(f.outs.end(), g.outs.begin(), g.outs.end());
        }
        return f;
      }
      case Ast::Kind::kRepeat:
        return repeat(ast);
    }
    return epsilon();
  }

  void patch(const std::vector<std::pair<int, int>>& outs, int target) {
    for (const auto& [state, which] : outs) {
      (which == 0 ? states_[state].out : states_[state].out1) = target;
    }
  }

  int add(State s) {
    if (states_.size() >= kMaxStates) throw Rejected{"pattern too large"};
    states_.push_back(s);
    return static_cast<int>(states_.size()) - 1;
  }

 private:
  Fragment epsilon() {
    const int s = add({State::Type::kEps});
    return {s, {{s, 0}}};
  }

  Fragment concat(Fragment a, Fragment b) {
    patch(a.outs, b.start);
    return {a.start, std::move(b.outs)};
  }

  Fragment repeat(const Ast& ast) {
    const Ast& child = ast.children.front();
    std::optional<Fragment> result;
    auto append = [&](Fragment f) { result = result ? concat(std::move(*result), std::move(f)) : std::move(f); };
    for (std::size_t k = 0; k < ast.min; ++k) append(build(child));
    if (ast.max == kUnbounded) {
      Fragment body = build(child);
      const int sp = add({State::Type::kSplit, -1, body.start, -1});
      patch(body.outs, sp);
      append({sp, {{sp, 1}}});
    } else {
      for (std::size_t k = ast.min; k < ast.max; ++k) {
        Fragment body = build(child);
        const int sp = add({State::Type::kSplit, -1, body.start, -1});
        body.outs.emplace_back(sp, 1);
        append({sp, std::move(body.outs)});
      }
    }
    return result ? std::move(*result) : epsilon();
  }

  std::vector<State>& states_;
  std::vector<CharSet>& sets_;
};

constexpr std::u32string_view kSamplePool =
    U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._-@!#$%&*+=?~ ";

}  // namespace

struct Pattern::Compiled {
  Ast ast;
  std::vector<State> states;
  std::vector<CharSet> sets;
  int start = -1;

  bool matches(std::u32string_view input) const {
    std::vector<int> current;
    std::vector<int> next;
    std::vector<std::size_t> mark(states.size(), std::numeric_limits<std::size_t>::max());
    std::vector<int> stack;
    auto add_state = [&](std::vector<int>& list, int s, std::size_t generation) {
      stack.push_back(s);
      while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        if (id < 0 || mark[id] == generation) continue;
        mark[id] = generation;
        const State& st = states[id];
        if (st.type == State::Type::kSplit) {
          stack.push_back(st.out1);
          stack.push_back(st.out);
        } else if (st.type == State::Type::kEps) {
          stack.push_back(st.out);
        } else {
          list.push_back(id);
        }
      }
    };
    add_state(current, start, 0);
    for (std::size_t i = 0; i < input.size(); ++i) {
      next.clear();
      for (const int id : current) {
        const State& st = states[id];
        if (st.type == State::Type::kSet && sets[st.set].contains(input[i])) add_state(next, st.out, i + 1);
      }
      std::swap(current, next);
      if (current.empty()) return false;
    }
    return std::any_of(current.begin(), current.end(),
                       [&](int id) { return states[id].type == State::Type::kMatch; });
  }

  void generate(const Ast& node, std::size_t variant, std::size_t boost, std::u32string& out) const {
    if (out.size() > 4096) return;
    switch (node.kind) {
      case Ast::Kind::kEmpty:
        return;
      case Ast::Kind::kChar: {
        std::u32string candidates;
        for (const char32_t c : kSamplePool) {
          if (node.set.contains(c)) candidates.push_back(c);
        }
        if (candidates.empty()) {
          // Nothing printable ASCII qualifies, e.g. a Persian-letter class.
          if (!node.set.negated && !node.set.ranges.empty()) {
            const Range& r = node.set.ranges[variant % node.set.ranges.size()];
            out.push_back(r.first + static_cast<char32_t>((variant + out.size()) % (r.second - r.first + 1)));
          } else {
            char32_t c = 0xC0;
            while (c < kMaxCodePoint && !node.set.contains(c)) ++c;
            out.push_back(c);
          }
          return;
        }
        out.push_back(candidates[(variant + out.size()) % candidates.size()]);
        return;
      }
      case Ast::Kind::kSeq:
        for (const Ast& child : node.children) generate(child, variant, boost, out);
        return;
      case Ast::Kind::kAlt:
        generate(node.children[variant % node.children.size()], variant / node.children.size(), boost, out);
        return;
      case Ast::Kind::kRepeat: {
        std::size_t extra = variant % 3 + boost;
        if (node.max != kUnbounded) extra = std::min(extra, node.max - node.min);
        for (std::size_t k = 0; k < node.min + extra && out.size() <= 4096; ++k) {
          generate(node.children.front(), variant + k, boost, out);
        }
        return;
      }
    }
  }
};

std::optional<Pattern> Pattern::compile(std::string_view source, std::string* error) {
  try {
    auto compiled = std::make_shared<Compiled>();
    compiled->ast = Parser(text::decode_utf8(source)).parse();
    NfaBuilder builder(compiled->states, compiled->sets);
    Fragment f = builder.build(compiled->ast);
    const int match = builder.add({State::Type::kMatch});
    builder.patch(f.outs, match);
    compiled->start = f.start;
    Pattern p;
    p.source_ = std::string(source);
    p.compiled_ = std::move(compiled);
    return p;
  } catch (const Rejected& r) {
    if (error != nullptr) *error = r.reason;
    return std::nullopt;
  }
}

bool Pattern::full_match(std::string_view value) const {
  return compiled_->matches(text::decode_utf8(value));
}

std::vector<std::string> Pattern::sample(std::size_t count, std::size_t min_length,
                                         std::size_t max_length) const {
  std::vector<std::string> out;
  std::set<std::u32string> seen;
  for (std::size_t variant = 0; variant < count * 16 + 16 && out.size() < count; ++variant) {
    std::size_t previous_length = 0;
    for (std::size_t boost = 0; boost <= 64; ++boost) {
      std::u32string candidate;
      compiled_->generate(compiled_->ast, variant, boost, candidate);
      if (candidate.size() > max_length) break;
      if (candidate.size() < min_length) {
        // Stop once boosting no longer grows the sample.
        if (boost > 0 && candidate.size() <= previous_length) break;
        previous_length = candidate.size();
        continue;
      }
      if (compiled_->matches(candidate) && seen.insert(candidate).second) out.push_back(text::encode_utf8(candidate));
      break;
    }
  }
  return out;
}

std::optional<std::string> Pattern::counterexample() const {
  for (const char* probe : {"!", "~~", "#x#", "a", "0", "A", "-", "zz99!!", " ", "\xD8\xA7"}) {
    if (!full_match(probe)) return std::string(probe);
  }
  return std::nullopt;
}

}  // namespace formforge
