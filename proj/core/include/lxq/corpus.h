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

#ifndef LXQ_CORPUS_H_
#define LXQ_CORPUS_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lxq {

struct MorphoToken {
  std::string surface;
  std::string lemma;
  std::string pos;
  std::set<std::string> traits;
  int sentence_index = 0;
  int token_index = 0;

  bool operator==(const MorphoToken&) const = default;
};

// An annotated error over tokens [first_token, last_token] of one sentence.
struct ErrorSpan {
  std::string category;  // hierarchical code, e.g. "GRA-PP-AGR"
  int first_token = 0;
  int last_token = 0;
  std::string corrected_form;  // empty when no target form is annotated

  bool Covers(int token) const {
    return token >= first_token && token <= last_token;
  }
  bool operator==(const ErrorSpan&) const = default;
};

struct Sentence {
  std::vector<MorphoToken> tokens;
  // Sorted by (first_token asc, last_token desc); outer spans precede the
  // spans they contain.
  std::vector<ErrorSpan> errors;

  bool operator==(const Sentence&) const = default;
};

struct LearnerText {
  std::string id;
  std::string mothertongue;
  std::string level;
  std::vector<Sentence> sentences;

  std::size_t TokenCount() const;
  bool operator==(const LearnerText&) const = default;
};

struct Catalog {
  std::set<std::string> pos;
  std::set<std::string> traits;
  std::set<std::string> categories;
  std::set<std::string> mothertongues;
  std::set<std::string> levels;

  bool empty() const;
  bool operator==(const Catalog&) const = default;
};

struct Corpus {
  std::string name;
  std::vector<LearnerText> texts;
  Catalog catalog;

  std::size_t TokenCount() const;
  std::size_t SpanCount() const;
  bool operator==(const Corpus&) const = default;
};

Catalog ComputeCatalog(const Corpus& corpus);

// Restores the span ordering documented on Sentence::errors.
void SortSpans(std::vector<ErrorSpan>& spans);

// Innermost-last list of spans covering `token`.
std::vector<const ErrorSpan*> CoveringSpans(const Sentence& sentence,
                                            int token);

// Space-joined surfaces of tokens [first, last].
std::string JoinSurfaces(const Sentence& sentence, int first, int last);
std::string JoinSurfaces(const Sentence& sentence);

enum class Severity { kWarning, kError };

struct ValidationFinding {
  Severity severity = Severity::kError;
  std::string text_id;
  int sentence = -1;  // -1: text level
  int token = -1;     // -1: sentence level
  std::string message;
};

std::string_view SeverityName(Severity severity);
std::string FormatFinding(const ValidationFinding& finding);

// Checks every corpus invariant. Empty result iff the corpus is valid.
std::vector<ValidationFinding> ValidateCorpus(const Corpus& corpus);

bool HasErrors(const std::vector<ValidationFinding>& findings);

}  // namespace lxq

#endif  // LXQ_CORPUS_H_
