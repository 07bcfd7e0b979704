/*
 * Copyright 2026 The lxq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lxq/pattern.h"

#include <cctype>
#include <charconv>

#include "lxq/errors.h"
#include "lxq/text_util.h"

namespace lxq {

int Quantifier::MinCount() const {
  switch (kind) {
    case Kind::kOne: return 1;
    case Kind::kOptional:
    case Kind::kStar: return 0;
    case Kind::kRange: return min;
  }
  return 1;
}

std::optional<int> Quantifier::MaxCount() const {
  switch (kind) {
    case Kind::kOne:
    case Kind::kOptional: return 1;
    case Kind::kStar: return std::nullopt;
    case Kind::kRange: return max;
  }
  return 1;
}

std::size_t PatternQuery::KeywordSlot() const {
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (slots[i].is_keyword) return i;
  throw InvalidQueryError("query has no keyword slot");
}

namespace {

class DslParser {
 public:
  explicit DslParser(std::string_view text) : text_(text) {}

  PatternQuery Parse() {
    PatternQuery query;
    SkipSpace();
    while (Peek() == '@') {
      ParseDocFilter(query.filters);
      SkipSpace();
    }
    if (AtEnd()) Fail("expected a slot '[...]'");
    std::size_t keyword_column = 0;
    while (!AtEnd()) {
      if (Peek() == '@') Fail("document filters must precede all slots");
      const std::size_t slot_start = pos_;
      Slot slot = ParseSlot();
      if (slot.is_keyword) {
        if (keyword_column != 0) {
          FailAt(slot_start, "second keyword marker '!' (keyword marked at column " +
                                 std::to_string(keyword_column) + ")");
        }
        keyword_column = Column(slot_start);
      }
      query.slots.push_back(std::move(slot));
      SkipSpace();
    }
    if (keyword_column == 0) Fail("no keyword slot: mark exactly one slot with '!'");
    try {
      CheckQuery(query);
    } catch (const InvalidQueryError& e) {
      Fail(e.what());
    }
    return query;
  }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return AtEnd() ? '\0' : text_[pos_]; }

  void SkipSpace() {
    while (!AtEnd() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::size_t Column(std::size_t byte_pos) const {
    return Utf8Length(text_.substr(0, byte_pos)) + 1;
  }

  [[noreturn]] void FailAt(std::size_t byte_pos, const std::string& message) const {
    const auto column = Column(byte_pos);
    throw QuerySyntaxError("column " + std::to_string(column) + ": " + message,
                           static_cast<int>(column));
  }
  [[noreturn]] void Fail(const std::string& message) const { FailAt(pos_, message); }

  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) {
      if (AtEnd()) Fail(std::string("expected '") + c + "' but the query ended");
      Fail(std::string("expected '") + c + "' but found '" + Peek() + "'");
    }
    ++pos_;
  }

  std::string Identifier() {
    SkipSpace();
    const std::size_t start = pos_;
    while (!AtEnd() && (std::isalnum(static_cast<unsigned char>(Peek())) || Peek() == '_'))
      ++pos_;
    if (start == pos_) Fail("expected a field name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string QuotedString() {
    SkipSpace();
    if (Peek() != '"') Fail("expected a double-quoted string");
    const std::size_t open = pos_++;
    std::string out;
    while (true) {
      if (AtEnd()) FailAt(open, "unterminated string");
      const char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (AtEnd()) FailAt(open, "unterminated string");
        const char e = text_[pos_];
        if (e != '"' && e != '\\') Fail(std::string("unknown escape '\\") + e + "'");
        out.push_back(e);
        ++pos_;
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  int Integer() {
    SkipSpace();
    const std::size_t start = pos_;
    while (!AtEnd() && std::isdigit(static_cast<unsigned char>(Peek()))) ++pos_;
    if (start == pos_) Fail("expected an integer");
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) FailAt(start, "integer out of range");
    return value;
  }

  void ParseDocFilter(DocFilters& filters) {
    ++pos_;  // '@'
    const std::size_t name_pos = pos_;
    const std::string name = Identifier();
    Expect('=');
    std::string value = QuotedString();
    if (value.empty()) FailAt(name_pos, "empty document filter value");
    if (name == "l1") {
      filters.mothertongues.insert(std::move(value));
    } else if (name == "level") {
      filters.levels.insert(std::move(value));
    } else {
      FailAt(name_pos, "unknown document filter '" + name + "' (expected l1 or level)");
    }
  }

  Slot ParseSlot() {
    Slot slot;
    if (Peek() == '!') {
      slot.is_keyword = true;
      ++pos_;
      SkipSpace();
    }
    if (Peek() == ']') Fail("unbalanced ']'");
    if (Peek() != '[') Fail(AtEnd() ? "expected '[' but the query ended"
                                    : std::string("expected '[' but found '") + Peek() + "'");
    const std::size_t open = pos_++;
    while (true) {
      slot.constraints.push_back(ParseConstraint());
      SkipSpace();
      if (Peek() == '&') {
        ++pos_;
        continue;
      }
      if (Peek() == ']') {
        ++pos_;
        break;
      }
      if (AtEnd() || Peek() == '[') FailAt(open, "unbalanced '[': missing ']'");
      Fail(std::string("expected '&' or ']' but found '") + Peek() + "'");
    }
    const std::size_t quant_pos = pos_;
    slot.quantifier = ParseQuantifier();
    if (slot.is_keyword && slot.quantifier.kind != Quantifier::Kind::kOne)
      FailAt(quant_pos, "the keyword slot cannot carry a quantifier");
    return slot;
  }

  Constraint ParseConstraint() {
    SkipSpace();
    const std::size_t key_pos = pos_;
    const std::string name = Identifier();
    const auto key = FieldKeyFromName(name);
    if (!key) {
      FailAt(key_pos, "unknown key '" + name +
                          "' (expected surface, lemma, pos, trait, error, cat or corr)");
    }
    Constraint c;
    c.key = *key;
    SkipSpace();
    if (Peek() == '!' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      c.op = CompareOp::kNeq;
      pos_ += 2;
    } else if (Peek() == '=') {
      c.op = CompareOp::kEq;
      ++pos_;
    } else {
      Fail("expected '=' or '!='");
    }
    const std::size_t value_pos = pos_;
    c.value = QuotedString();
    if (c.value.empty()) FailAt(value_pos, "empty constraint value");
    if (c.key == FieldKey::kError) {
      const auto v = FoldCase(c.value);
      if (v != "yes" && v != "no")
        FailAt(value_pos, "error takes \"yes\" or \"no\", not \"" + c.value + "\"");
    }
    return c;
  }

  Quantifier ParseQuantifier() {
    switch (Peek()) {
      case '?':
        ++pos_;
        return Quantifier::Optional();
      case '*':
        ++pos_;
        return Quantifier::Star();
      case '{': {
        const std::size_t open = pos_++;
        const int m = Integer();
        Expect(',');
        const int n = Integer();
        SkipSpace();
        if (Peek() != '}') FailAt(open, "unbalanced '{': missing '}'");
        ++pos_;
        if (m > n) FailAt(open, "range lower bound exceeds upper bound");
        if (n < 1) FailAt(open, "range upper bound must be at least 1");
        if (n > kMaxRepeat)
          FailAt(open, "range upper bound exceeds " + std::to_string(kMaxRepeat));
        return Quantifier::Range(m, n);
      }
      default:
        return Quantifier::One();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void AppendQuoted(std::string& out, std::string_view value) {
  out.push_back('"');
  for (char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

PatternQuery ParseQuery(std::string_view dsl) { return DslParser(dsl).Parse(); }

void CheckQuery(const PatternQuery& query) {
  if (query.slots.empty()) throw InvalidQueryError("query has no slots");
  int keywords = 0;
  for (std::size_t i = 0; i < query.slots.size(); ++i) {
    const Slot& slot = query.slots[i];
    const std::string where = "slot " + std::to_string(i + 1) + ": ";
    if (slot.constraints.empty()) throw InvalidQueryError(where + "no constraints");
    for (const auto& c : slot.constraints) {
      if (c.value.empty()) throw InvalidQueryError(where + "empty constraint value");
      if (c.key == FieldKey::kError) {
        const auto v = FoldCase(c.value);
        if (v != "yes" && v != "no")
          throw InvalidQueryError(where + "error takes \"yes\" or \"no\"");
      }
    }
    const Quantifier& q = slot.quantifier;
    if (q.kind == Quantifier::Kind::kRange &&
        (q.min < 0 || q.min > q.max || q.max < 1 || q.max > kMaxRepeat)) {
      throw InvalidQueryError(where + "range must satisfy 0 <= m <= n, 1 <= n <= " +
                              std::to_string(kMaxRepeat));
    }
    if (slot.is_keyword) {
      ++keywords;
      if (q.kind != Quantifier::Kind::kOne)
        throw InvalidQueryError(where + "the keyword slot cannot carry a quantifier");
    }
  }
  if (keywords != 1) {
    throw InvalidQueryError("query must have exactly one keyword slot, found " +
                            std::to_string(keywords));
  }
  for (const auto& v : query.filters.mothertongues)
    if (v.empty()) throw InvalidQueryError("empty l1 filter value");
  for (const auto& v : query.filters.levels)
    if (v.empty()) throw InvalidQueryError("empty level filter value");
}

std::string ToDsl(const PatternQuery& query) {
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out.push_back(' ');
  };
  for (const auto& v : query.filters.mothertongues) {
    sep();
    out += "@l1=";
    AppendQuoted(out, v);
  }
  for (const auto& v : query.filters.levels) {
    sep();
    out += "@level=";
    AppendQuoted(out, v);
  }
  for (const auto& slot : query.slots) {
    sep();
    if (slot.is_keyword) out.push_back('!');
    out.push_back('[');
    for (std::size_t i = 0; i < slot.constraints.size(); ++i) {
      const auto& c = slot.constraints[i];
      if (i > 0) out += " & ";
      out += FieldKeyName(c.key);
      out += c.op == CompareOp::kEq ? "=" : "!=";
      AppendQuoted(out, c.value);
    }
    out.push_back(']');
    switch (slot.quantifier.kind) {
      case Quantifier::Kind::kOne: break;
      case Quantifier::Kind::kOptional: out.push_back('?'); break;
      case Quantifier::Kind::kStar: out.push_back('*'); break;
      case Quantifier::Kind::kRange:
        out += "{" + std::to_string(slot.quantifier.min) + "," +
               std::to_string(slot.quantifier.max) + "}";
        break;
    }
  }
  return out;
}

}  // namespace lxq
