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

#include "lxq/automaton.h"

#include <algorithm>
#include <utility>

#include "lxq/text_util.h"

namespace lxq {

int TokenAutomaton::AddState() {
  states_.emplace_back();
  return static_cast<int>(states_.size()) - 1;
}

void TokenAutomaton::AddEdge(int from, int to, int slot, bool keyword) {
  states_[from].push_back({to, slot, keyword});
}

TokenAutomaton TokenAutomaton::Compile(const PatternQuery& query) {
  TokenAutomaton a;
  for (const Slot& slot : query.slots) {
    std::vector<CompiledConstraint> compiled;
    for (const Constraint& c : slot.constraints) {
      compiled.push_back({c.key, c.op == CompareOp::kNeq, NormalizeValue(c.key, c.value)});
      if (c.key == FieldKey::kError || c.key == FieldKey::kCategory || c.key == FieldKey::kCorrected)
        a.uses_spans_ = true;
    }
    a.slots_.push_back(std::move(compiled));
  }

  a.start_ = a.AddState();
  int tail = a.start_;
  for (std::size_t i = 0; i < query.slots.size(); ++i) {
    const Slot& slot = query.slots[i];
    const int si = static_cast<int>(i);
    const Quantifier& q = slot.quantifier;
    auto one = [&] {
      const int next = a.AddState();
      a.AddEdge(tail, next, si, slot.is_keyword);
      tail = next;
    };
    auto optional = [&] {
      const int next = a.AddState();
      a.AddEdge(tail, next, si, false);
      a.AddEdge(tail, next, -1, false);
      tail = next;
    };
    switch (q.kind) {
      case Quantifier::Kind::kOne:
        one();
        break;
      case Quantifier::Kind::kOptional:
        optional();
        break;
      case Quantifier::Kind::kStar: {
        const int next = a.AddState();
        a.AddEdge(tail, tail, si, false);
        a.AddEdge(tail, next, -1, false);
        tail = next;
        break;
      }
      case Quantifier::Kind::kRange:
        for (int k = 0; k < q.min; ++k) one();
        for (int k = q.min; k < q.max; ++k) optional();
        break;
    }
  }
  a.accept_ = tail;
  return a;
}

bool TokenAutomaton::SlotHolds(std::size_t slot, const MorphoToken& token,
                               std::span<const ErrorSpan* const> covering) const {
  for (const CompiledConstraint& c : slots_[slot]) {
    bool holds = false;
    switch (c.key) {
      case FieldKey::kSurface:
        holds = token.surface == c.value;
        break;
      case FieldKey::kLemma:
        holds = FoldedEquals(token.lemma, c.value);
        break;
      case FieldKey::kPos:
        holds = FoldedEquals(token.pos, c.value);
        break;
      case FieldKey::kTrait:
        holds = std::any_of(token.traits.begin(), token.traits.end(),
                            [&](const std::string& t) { return FoldedEquals(t, c.value); });
        break;
      case FieldKey::kError:
        holds = covering.empty() == (c.value == "no");
        break;
      case FieldKey::kCategory:
        holds = std::any_of(covering.begin(), covering.end(), [&](const ErrorSpan* s) {
          return IsSegmentPrefix(c.value, FoldCase(s->category));
        });
        break;
      case FieldKey::kCorrected:
        holds = std::any_of(covering.begin(), covering.end(), [&](const ErrorSpan* s) {
          return s->corrected_form == c.value;
        });
        break;
    }
    if (holds == c.negate) return false;
  }
  return true;
}

std::vector<Match> TokenAutomaton::MatchSentence(
    std::span<const MorphoToken> tokens, std::span<const ErrorSpan> errors) const {
  std::vector<Match> matches;
  const int n = static_cast<int>(tokens.size());
  if (n == 0) return matches;

  // Spans covering token t: covering[offsets[t], offsets[t + 1]).
  std::vector<int> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<const ErrorSpan*> covering;
  if (uses_spans_) {
    for (const ErrorSpan& span : errors)
      for (int t = std::max(span.first_token, 0); t <= span.last_token && t < n; ++t) ++offsets[t + 1];
    for (int t = 0; t < n; ++t) offsets[t + 1] += offsets[t];
    covering.resize(static_cast<std::size_t>(offsets[n]));
    std::vector<int> fill(offsets.begin(), offsets.end() - 1);
    for (const ErrorSpan& span : errors)
      for (int t = std::max(span.first_token, 0); t <= span.last_token && t < n; ++t)
        covering[static_cast<std::size_t>(fill[t]++)] = &span;
  }
  // Memoized slot predicates, evaluated on first use: -1 unknown.
  std::vector<signed char> memo(slots_.size() * n, -1);
  auto holds = [&](int slot, int t) {
    signed char& m = memo[static_cast<std::size_t>(slot) * n + t];
    if (m < 0) {
      const std::span<const ErrorSpan* const> cover(covering.data() + offsets[t],
                                                    static_cast<std::size_t>(offsets[t + 1] - offsets[t]));
      m = SlotHolds(static_cast<std::size_t>(slot), tokens[t], cover) ? 1 : 0;
    }
    return m == 1;
  };

  // A configuration is (state, keyword position or -1). `stamp` deduplicates
  // configurations within one step.
  using Config = std::pair<int, int>;
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  std::vector<unsigned> stamp(states_.size() * width, 0);
  unsigned generation = 0;
  std::vector<Config> current, next, stack;

  auto closure = [&](std::vector<Config>& configs) {
    ++generation;
    stack.assign(configs.begin(), configs.end());
    configs.clear();
    while (!stack.empty()) {
      const Config c = stack.back();
      stack.pop_back();
      unsigned& mark = stamp[c.first * width + (c.second + 1)];
      if (mark == generation) continue;
      mark = generation;
      configs.push_back(c);
      for (const Transition& tr : states_[c.first])
        if (tr.slot < 0) stack.push_back({tr.target, c.second});
    }
  };

  for (int start = 0; start < n; ++start) {
    current.assign(1, {start_, -1});
    closure(current);
    for (int p = start;; ++p) {
      if (p > start) {
        for (const Config& c : current)
          if (c.first == accept_ && c.second >= 0) matches.push_back({start, p - 1, c.second});
      }
      if (p == n) break;
      next.clear();
      for (const Config& c : current) {
        for (const Transition& tr : states_[c.first]) {
          if (tr.slot >= 0 && holds(tr.slot, p))
            next.push_back({tr.target, tr.keyword ? p : c.second});
        }
      }
      if (next.empty()) break;
      current.swap(next);
      closure(current);
    }
  }
  std::sort(matches.begin(), matches.end());
  matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
  return matches;
}

}  // namespace lxq
