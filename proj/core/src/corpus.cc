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

#include "lxq/corpus.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "lxq/text_util.h"

namespace lxq {

std::size_t LearnerText::TokenCount() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

bool Catalog::empty() const {
  return pos.empty() && traits.empty() && categories.empty() &&
         mothertongues.empty() && levels.empty();
}

std::size_t Corpus::TokenCount() const {
  std::size_t n = 0;
  for (const auto& t : texts) n += t.TokenCount();
  return n;
}

std::size_t Corpus::SpanCount() const {
  std::size_t n = 0;
  for (const auto& t : texts)
    for (const auto& s : t.sentences) n += s.errors.size();
  return n;
}

Catalog ComputeCatalog(const Corpus& corpus) {
  Catalog c;
  for (const auto& text : corpus.texts) {
    c.mothertongues.insert(text.mothertongue);
    c.levels.insert(text.level);
    for (const auto& sentence : text.sentences) {
      for (const auto& tok : sentence.tokens) {
        c.pos.insert(tok.pos);
        c.traits.insert(tok.traits.begin(), tok.traits.end());
      }
      for (const auto& span : sentence.errors) c.categories.insert(span.category);
    }
  }
  return c;
}

void SortSpans(std::vector<ErrorSpan>& spans) {
  std::stable_sort(spans.begin(), spans.end(),
                   [](const ErrorSpan& a, const ErrorSpan& b) {
                     if (a.first_token != b.first_token)
                       return a.first_token < b.first_token;
                     return a.last_token > b.last_token;
                   });
}

std::vector<const ErrorSpan*> CoveringSpans(const Sentence& sentence,
                                            int token) {
  std::vector<const ErrorSpan*> out;
  for (const auto& span : sentence.errors) {
    if (span.first_token > token) break;
    if (span.Covers(token)) out.push_back(&span);
  }
  return out;
}

std::string JoinSurfaces(const Sentence& sentence, int first, int last) {
  std::string out;
  for (int i = std::max(first, 0);
       i <= last && i < static_cast<int>(sentence.tokens.size()); ++i) {
    if (!out.empty()) out.push_back(' ');
    out += sentence.tokens[i].surface;
  }
  return out;
}

std::string JoinSurfaces(const Sentence& sentence) {
  return JoinSurfaces(sentence, 0, static_cast<int>(sentence.tokens.size()) - 1);
}

std::string_view SeverityName(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

std::string FormatFinding(const ValidationFinding& f) {
  std::ostringstream out;
  out << SeverityName(f.severity) << ": text " << (f.text_id.empty() ? "?" : f.text_id);
  if (f.sentence >= 0) out << ", sentence " << f.sentence;
  if (f.token >= 0) out << ", token " << f.token;
  out << ": " << f.message;
  return out.str();
}

namespace {

void ValidateSentence(const LearnerText& text, int s_idx,
                      std::vector<ValidationFinding>& out) {
  const Sentence& sentence = text.sentences[s_idx];
  auto add = [&](int token, std::string msg) {
    out.push_back({Severity::kError, text.id, s_idx, token, std::move(msg)});
  };
  if (sentence.tokens.empty()) add(-1, "sentence has no tokens");

  for (int t = 0; t < static_cast<int>(sentence.tokens.size()); ++t) {
    const auto& tok = sentence.tokens[t];
    if (Trim(tok.surface).empty()) add(t, "empty surface");
    if (Trim(tok.lemma).empty()) add(t, "empty lemma");
    if (Trim(tok.pos).empty()) add(t, "empty pos");
    if (tok.sentence_index != s_idx || tok.token_index != t) {
      std::ostringstream msg;
      msg << "token position (" << tok.sentence_index << ", " << tok.token_index
          << ") does not match its place in the text";
      add(t, msg.str());
    }
  }

  const int n = static_cast<int>(sentence.tokens.size());
  for (const auto& span : sentence.errors) {
    if (span.category.empty()) {
      add(-1, "error span without category");
    } else {
      for (const auto& seg : SplitCategory(span.category)) {
        if (seg.empty()) {
          add(-1, "error category '" + span.category + "' has an empty segment");
          break;
        }
      }
    }
    if (span.first_token > span.last_token) {
      add(-1, "error span '" + span.category + "' ends before it starts");
    } else if (span.first_token < 0 || span.last_token >= n) {
      std::ostringstream msg;
      msg << "error span '" << span.category << "' [" << span.first_token << ", "
          << span.last_token << "] lies outside the sentence";
      add(-1, msg.str());
    }
  }
  for (std::size_t i = 0; i < sentence.errors.size(); ++i) {
    for (std::size_t j = i + 1; j < sentence.errors.size(); ++j) {
      const auto& a = sentence.errors[i];
      const auto& b = sentence.errors[j];
      const bool disjoint =
          a.last_token < b.first_token || b.last_token < a.first_token;
      const bool a_in_b =
          a.first_token >= b.first_token && a.last_token <= b.last_token;
      const bool b_in_a =
          b.first_token >= a.first_token && b.last_token <= a.last_token;
      if (!disjoint && !a_in_b && !b_in_a) {
        std::ostringstream msg;
        msg << "error spans '" << a.category << "' [" << a.first_token << ", "
            << a.last_token << "] and '" << b.category << "' ["
            << b.first_token << ", " << b.last_token << "] partially overlap";
        add(-1, msg.str());
      }
    }
  }
}

}  // namespace

std::vector<ValidationFinding> ValidateCorpus(const Corpus& corpus) {
  std::vector<ValidationFinding> out;
  std::map<std::string, int> seen_ids;
  for (const auto& text : corpus.texts) {
    if (Trim(text.id).empty()) {
      out.push_back({Severity::kError, text.id, -1, -1, "empty text id"});
    } else if (++seen_ids[text.id] == 2) {
      out.push_back({Severity::kError, text.id, -1, -1, "duplicate text id"});
    }
    if (Trim(text.mothertongue).empty())
      out.push_back({Severity::kWarning, text.id, -1, -1, "empty l1 tag"});
    if (Trim(text.level).empty())
      out.push_back({Severity::kWarning, text.id, -1, -1, "empty level tag"});
    if (text.sentences.empty())
      out.push_back({Severity::kWarning, text.id, -1, -1, "text has no sentences"});
    for (int s = 0; s < static_cast<int>(text.sentences.size()); ++s)
      ValidateSentence(text, s, out);
  }
  if (corpus.catalog != ComputeCatalog(corpus)) {
    out.push_back({Severity::kError, "", -1, -1,
                   "catalog does not match the values present in the texts"});
  }
  return out;
}

bool HasErrors(const std::vector<ValidationFinding>& findings) {
  return std::any_of(findings.begin(), findings.end(), [](const auto& f) {
    return f.severity == Severity::kError;
  });
}

}  // namespace lxq
