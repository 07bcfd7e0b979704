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

#ifndef LXQ_EXERCISE_H_
#define LXQ_EXERCISE_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lxq/concordance.h"
#include "lxq/index.h"
#include "lxq/pattern.h"

namespace lxq {

inline constexpr std::string_view kBlank = "____";

// Sampling uses std::mt19937_64, whose output sequence is fixed by the C++
// standard, with bounded integers drawn by rejection on the raw 64-bit
// output. Results are therefore identical across standard libraries.
inline constexpr std::string_view kGeneratorName = "mt19937_64";

// Uniform integer in [0, bound) from one or more raw draws.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound);

enum class AnswerMode { kAsWritten, kCorrected };
enum class DistractorPolicy { kNone, kSameLemma, kAttestedErrors };

std::string_view AnswerModeName(AnswerMode mode);
std::optional<AnswerMode> AnswerModeFromName(std::string_view name);
std::string_view DistractorPolicyName(DistractorPolicy policy);
std::optional<DistractorPolicy> DistractorPolicyFromName(std::string_view name);

struct ItemSource {
  std::string text_id;
  int sentence = 0;
  int token = 0;

  bool operator==(const ItemSource&) const = default;
};

struct GapFillItem {
  std::string stem;  // the sentence with the keyword replaced by kBlank
  std::string answer;
  std::vector<std::string> distractors;
  ItemSource source;
  AnswerMode answer_mode = AnswerMode::kAsWritten;
  std::string lemma;  // lemma of the blanked token

  bool operator==(const GapFillItem&) const = default;
};

struct ExerciseOptions {
  std::size_t count = 10;
  std::uint64_t seed = 0;
  AnswerMode answer_mode = AnswerMode::kCorrected;
  DistractorPolicy distractor_policy = DistractorPolicy::kAttestedErrors;
  std::size_t distractor_count = 3;
};

struct ExerciseSet {
  std::vector<GapFillItem> items;
  std::uint64_t seed = 0;
  PatternQuery query;
  ExerciseOptions options;
  std::int64_t total_matches = 0;
  bool no_examples = false;  // the query matched nothing

  bool operator==(const ExerciseSet& o) const {
    return items == o.items && seed == o.seed && query == o.query &&
           total_matches == o.total_matches && no_examples == o.no_examples;
  }
};

// Samples min(count, total matches) distinct keyword occurrences uniformly
// without replacement (partial Fisher-Yates over the display-ordered hit
// list) and turns each into a gap-fill item. Items keep draw order.
// Throws ArgumentError when count is 0.
ExerciseSet GenerateItems(const CorpusIndex& index, const PatternQuery& query,
                          const ExerciseOptions& options);

// Builds the item for one keyword occurrence, without distractors.
GapFillItem MakeItem(const Corpus& corpus, std::uint32_t text, int sentence, int token,
                     AnswerMode mode);

// Up to k distractors, most frequent first, ties in byte order; never the
// answer, never repeated.
//   same-lemma       other surface forms of the item's lemma in the corpus
//   attested-errors  erroneous forms whose span is corrected to the answer
std::vector<std::string> BuildDistractors(const CorpusIndex& index, const GapFillItem& item,
                                          DistractorPolicy policy, std::size_t k);

// Remedial companion of `item`: a gap-fill on another occurrence of the same
// lemma, chosen with the seeded generator; nullopt when the lemma occurs
// nowhere else.
std::optional<GapFillItem> MakeRemedialItem(const CorpusIndex& index, const GapFillItem& item,
                                            std::uint64_t seed);

}  // namespace lxq

#endif  // LXQ_EXERCISE_H_
