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

#ifndef LXQ_AUTOMATON_H_
#define LXQ_AUTOMATON_H_

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "lxq/corpus.h"
#include "lxq/pattern.h"

namespace lxq {

// Token range [start, end] (inclusive) matched by a pattern, with the
// position of the token consumed by the keyword slot.
struct Match {
  int start = 0;
  int end = 0;
  int keyword = 0;

  auto operator<=>(const Match&) const = default;
};

// Thompson-style NFA over token positions. Transitions either consume one
// token satisfying a slot's constraint conjunction or are epsilon moves:
//
//   one         s --slot--> t
//   optional    s --slot--> t,  s --eps--> t
//   star        s --slot--> s,  s --eps--> t
//   {m,n}       m copies of "one" followed by n-m copies of "optional"
//
// The keyword slot is always "one", so every accepting path crosses exactly
// one keyword-marked transition.
class TokenAutomaton {
 public:
  struct Transition {
    int target = 0;
    int slot = -1;  // -1: epsilon
    bool keyword = false;
  };

  static TokenAutomaton Compile(const PatternQuery& query);

  // All matches inside one sentence, ordered by start, then end, then
  // keyword position. Several automaton paths reaching the same triple are
  // reported once.
  std::vector<Match> MatchSentence(std::span<const MorphoToken> tokens,
                                   std::span<const ErrorSpan> errors) const;
  std::vector<Match> MatchSentence(const Sentence& sentence) const {
    return MatchSentence(sentence.tokens, sentence.errors);
  }

  const std::vector<std::vector<Transition>>& states() const { return states_; }
  int start_state() const { return start_; }
  int accept_state() const { return accept_; }
  std::size_t slot_count() const { return slots_.size(); }

 private:
  struct CompiledConstraint {
    FieldKey key;
    bool negate;
    std::string value;  // normalized per NormalizeValue
  };

  int AddState();
  void AddEdge(int from, int to, int slot, bool keyword);
  bool SlotHolds(std::size_t slot, const MorphoToken& token,
                 std::span<const ErrorSpan* const> covering) const;

  std::vector<std::vector<Transition>> states_;
  std::vector<std::vector<CompiledConstraint>> slots_;
  int start_ = 0;
  int accept_ = 0;
  bool uses_spans_ = false;  // some constraint reads error/cat/corr
};

}  // namespace lxq

#endif  // LXQ_AUTOMATON_H_
