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

#ifndef LXQ_PATTERN_H_
#define LXQ_PATTERN_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lxq/field.h"

namespace lxq {

enum class CompareOp { kEq, kNeq };

struct Constraint {
  FieldKey key = FieldKey::kSurface;
  CompareOp op = CompareOp::kEq;
  std::string value;

  bool operator==(const Constraint&) const = default;
};

struct Quantifier {
  enum class Kind { kOne, kOptional, kStar, kRange };

  Kind kind = Kind::kOne;
  int min = 1;  // meaningful for kRange
  int max = 1;

  static Quantifier One() { return {}; }
  static Quantifier Optional() { return {Kind::kOptional, 0, 1}; }
  static Quantifier Star() { return {Kind::kStar, 0, 0}; }
  static Quantifier Range(int m, int n) { return {Kind::kRange, m, n}; }

  int MinCount() const;
  std::optional<int> MaxCount() const;  // nullopt: unbounded

  bool operator==(const Quantifier&) const = default;
};

// A conjunction of constraints on one token position, repeated per the
// quantifier.
struct Slot {
  std::vector<Constraint> constraints;
  Quantifier quantifier;
  bool is_keyword = false;

  bool operator==(const Slot&) const = default;
};

// Empty sets do not filter.
struct DocFilters {
  std::set<std::string> mothertongues;
  std::set<std::string> levels;

  bool empty() const { return mothertongues.empty() && levels.empty(); }
  bool operator==(const DocFilters&) const = default;
};

struct PatternQuery {
  DocFilters filters;
  std::vector<Slot> slots;

  std::size_t KeywordSlot() const;
  bool operator==(const PatternQuery&) const = default;
};

// Upper bound accepted for {m,n} quantifiers.
inline constexpr int kMaxRepeat = 64;

// Parses the query DSL:
//
//   query      := docfilter* slot+
//   docfilter  := '@' ('l1' | 'level') '=' STRING
//   slot       := '!'? '[' conj ']' quant?
//   conj       := constraint ('&' constraint)*
//   constraint := KEY ('=' | '!=') STRING
//   quant      := '?' | '*' | '{' INT ',' INT '}'
//
// KEY is one of surface, lemma, pos, trait, error, cat, corr. STRING is
// double-quoted with \" and \\ escapes. Exactly one slot carries '!'.
// Throws QuerySyntaxError with a 1-based column.
PatternQuery ParseQuery(std::string_view dsl);

// Checks the semantic rules shared by DSL and structured queries: one
// keyword slot with unit quantifier, non-empty constraint values, error
// values "yes"/"no", 0 <= m <= n <= kMaxRepeat and n >= 1.
// Throws InvalidQueryError.
void CheckQuery(const PatternQuery& query);

// Canonical DSL text; ParseQuery(ToDsl(q)) == q for every valid q.
std::string ToDsl(const PatternQuery& query);

}  // namespace lxq

#endif  // LXQ_PATTERN_H_
