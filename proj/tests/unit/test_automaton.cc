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

#include <gtest/gtest.h>

#include <queue>
#include <random>
#include <set>

#include "fixture.h"
#include "oracle.h"
#include "random_corpus.h"

namespace lxq {
namespace {

std::set<testing::OracleMatch> AsSet(const std::vector<Match>& ms) {
  std::set<testing::OracleMatch> out;
  for (const auto& m : ms) out.insert({m.start, m.end, m.keyword});
  return out;
}

const Sentence& FixtureSentence(const std::string& id, int s) {
  for (const auto& t : testing::FixtureCorpus()->texts)
    if (t.id == id) return t.sentences.at(static_cast<std::size_t>(s));
  throw std::out_of_range(id);
}

// (state, keyword edges crossed) pairs reachable from the start, capped at 2.
std::set<std::pair<int, int>> Reachable(const TokenAutomaton& a) {
  std::set<std::pair<int, int>> seen{{a.start_state(), 0}};
  std::queue<std::pair<int, int>> todo;
  todo.push({a.start_state(), 0});
  while (!todo.empty()) {
    const auto [s, k] = todo.front();
    todo.pop();
    for (const auto& t : a.states()[static_cast<std::size_t>(s)]) {
      const std::pair<int, int> next{t.target, std::min(2, k + (t.keyword ? 1 : 0))};
      if (seen.insert(next).second) todo.push(next);
    }
  }
  return seen;
}

TEST(Automaton, FixtureQueryOnFirstRow) {
  const auto a = TokenAutomaton::Compile(ParseQuery(testing::kFixtureQuery));
  const Sentence& s = FixtureSentence("2180", 0);
  const auto matches = a.MatchSentence(s);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(s.tokens[static_cast<std::size_t>(matches[0].keyword)].surface, "connais");
  EXPECT_EQ(matches[0].keyword, 6);
  EXPECT_EQ(matches[0].start, 5);
  EXPECT_EQ(matches[0].end, 6);
}

TEST(Automaton, FixtureQueryShortestAcceptingPathHasTwoSlotEdges) {
  const auto a = TokenAutomaton::Compile(ParseQuery(testing::kFixtureQuery));
  EXPECT_EQ(a.slot_count(), 2u);
  // BFS over slot edges (epsilon edges cost 0).
  std::vector<int> dist(a.states().size(), 1 << 20);
  std::deque<int> q{a.start_state()};
  dist[static_cast<std::size_t>(a.start_state())] = 0;
  while (!q.empty()) {
    const int s = q.front();
    q.pop_front();
    for (const auto& t : a.states()[static_cast<std::size_t>(s)]) {
      const int w = t.slot < 0 ? 0 : 1;
      auto& d = dist[static_cast<std::size_t>(t.target)];
      if (dist[static_cast<std::size_t>(s)] + w < d) {
        d = dist[static_cast<std::size_t>(s)] + w;
        w == 0 ? q.push_front(t.target) : q.push_back(t.target);
      }
    }
  }
  EXPECT_EQ(dist[static_cast<std::size_t>(a.accept_state())], 2);
}

TEST(Automaton, StarThenKeywordAcceptsAnyOffset) {
  const auto a = TokenAutomaton::Compile(ParseQuery("[pos!=\"zzz\"]* ![lemma=\"avoir\"]"));
  const Sentence& s = FixtureSentence("2180", 0);  // avons at 5, ont at 16, a at 24
  std::set<int> keywords;
  for (const auto& m : a.MatchSentence(s)) {
    keywords.insert(m.keyword);
    EXPECT_LE(m.start, m.keyword);
    EXPECT_EQ(m.end, m.keyword);
  }
  EXPECT_EQ(keywords, (std::set<int>{5, 16, 24}));
  // starts 0..5 for avons alone
  int avons = 0;
  for (const auto& m : a.MatchSentence(s)) avons += m.keyword == 5;
  EXPECT_EQ(avons, 6);
}

TEST(Automaton, EmptySentence) {
  const auto a = TokenAutomaton::Compile(ParseQuery("[pos=\"a\"]* ![error=\"no\"]"));
  EXPECT_TRUE(a.MatchSentence(Sentence{}).empty());
}

TEST(Automaton, RangeBounds) {
  Sentence s;
  for (int i = 0; i < 5; ++i) s.tokens.push_back({"d", "d", "det", {}, 0, i});
  s.tokens.push_back({"n", "n", "nom", {}, 0, 5});
  const auto a = TokenAutomaton::Compile(ParseQuery("[pos=\"det\"]{2,3} ![pos=\"nom\"]"));
  EXPECT_EQ(AsSet(a.MatchSentence(s)),
            (std::set<testing::OracleMatch>{{2, 5, 5}, {3, 5, 5}}));
}

TEST(Automaton, ConstraintSemantics) {
  const Sentence& s = FixtureSentence("2229", 0);  // L' enquêteur a choisi un échantillon représentative
  auto keywords = [&](const std::string& dsl) {
    std::set<int> out;
    for (const auto& m : TokenAutomaton::Compile(ParseQuery(dsl)).MatchSentence(s))
      out.insert(m.keyword);
    return out;
  };
  EXPECT_EQ(keywords("![cat=\"GRA\"]"), (std::set<int>{3, 6}));
  EXPECT_EQ(keywords("![cat=\"gra-adj\"]"), std::set<int>{6});
  EXPECT_EQ(keywords("![cat=\"GRA-A\"]"), std::set<int>{});
  EXPECT_EQ(keywords("![corr=\"représentatif\"]"), std::set<int>{6});
  EXPECT_EQ(keywords("![corr=\"Représentatif\"]"), std::set<int>{});
  EXPECT_EQ(keywords("![surface=\"L'\"]"), std::set<int>{0});
  EXPECT_EQ(keywords("![surface=\"l'\"]"), std::set<int>{});
  EXPECT_EQ(keywords("![lemma=\"LE\"]"), std::set<int>{0});
  EXPECT_EQ(keywords("![trait=\"PARTICIPE PASSÉ\"]"), (std::set<int>{3, 11}));
  EXPECT_EQ(keywords("![error=\"yes\"]"), (std::set<int>{3, 6}));
}

TEST(AutomatonProperty, EveryAcceptingPathCrossesOneKeywordEdge) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = TokenAutomaton::Compile(testing::RandomQuery(rng));
    const auto reach = Reachable(a);
    EXPECT_TRUE(reach.count({a.accept_state(), 1}));
    EXPECT_FALSE(reach.count({a.accept_state(), 0}));
    EXPECT_FALSE(reach.count({a.accept_state(), 2}));
  }
}

TEST(AutomatonProperty, MatchesEqualWindowEnumeration) {
  std::mt19937_64 rng(2025);
  int nonempty = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Corpus c = testing::RandomCorpus(rng, {.max_texts = 2, .max_sentences = 2, .max_tokens = 25});
    const PatternQuery q = testing::RandomQuery(rng);
    const auto a = TokenAutomaton::Compile(q);
    for (const auto& t : c.texts) {
      for (const auto& s : t.sentences) {
        const auto got = a.MatchSentence(s);
        ASSERT_TRUE(std::is_sorted(got.begin(), got.end()));
        ASSERT_EQ(std::adjacent_find(got.begin(), got.end()), got.end());
        for (const auto& m : got) {
          ASSERT_LE(m.start, m.keyword);
          ASSERT_LE(m.keyword, m.end);
          ASSERT_LT(m.end, static_cast<int>(s.tokens.size()));
        }
        const auto want = testing::OracleSentenceMatches(q, s);
        ASSERT_EQ(AsSet(got), want) << ToDsl(q) << "\n" << JoinSurfaces(s);
        nonempty += !want.empty();
      }
    }
  }
  EXPECT_GT(nonempty, 100);
}

TEST(AutomatonProperty, NegationIsComplement) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const Corpus c = testing::RandomCorpus(rng, {.max_texts = 2, .max_sentences = 2, .max_tokens = 20});
    PatternQuery q = testing::RandomQuery(rng, 1);
    q.slots[0].constraints.resize(1);
    q.slots[0].constraints[0].op = CompareOp::kEq;
    PatternQuery neg = q;
    neg.slots[0].constraints[0].op = CompareOp::kNeq;
    const auto pos_a = TokenAutomaton::Compile(q);
    const auto neg_a = TokenAutomaton::Compile(neg);
    for (const auto& t : c.texts) {
      for (const auto& s : t.sentences) {
        std::vector<int> hits(s.tokens.size(), 0);
        for (const auto& m : pos_a.MatchSentence(s)) hits[static_cast<std::size_t>(m.keyword)] += 1;
        for (const auto& m : neg_a.MatchSentence(s)) hits[static_cast<std::size_t>(m.keyword)] += 2;
        for (std::size_t i = 0; i < hits.size(); ++i)
          ASSERT_TRUE(hits[i] == 1 || hits[i] == 2) << ToDsl(q) << " token " << i;
      }
    }
  }
}

}  // namespace
}  // namespace lxq
