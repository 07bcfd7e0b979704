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

#ifndef LXQ_CORPUS_XML_H_
#define LXQ_CORPUS_XML_H_

#include <string>
#include <string_view>

#include "lxq/corpus.h"

namespace lxq {

// Parses the XML corpus format:
//
//   <corpus name="...">
//     <text id="2180" l1="dutch" level="B2">
//       <s>
//         <tok surface="..." lemma="..." pos="..." traits="t1;t2"/>
//         <err cat="GRA-PP-AGR" corr="connu"> <tok .../> ... </err>
//       </s>
//     </text>
//   </corpus>
//
// `<err>` wraps one or more tokens and may nest. A standoff form
// `<err cat=".." from="i" to="j"/>` addresses tokens of the enclosing
// sentence by index and is the only way to express overlapping spans, which
// are rejected.
//
// Throws ParseError for malformed XML and ValidationError for schema or
// invariant violations.
Corpus ParseCorpus(std::string_view xml);

Corpus ParseCorpusFile(const std::string& path);

// Well-formedness and schema checks only; invariants are left to
// ValidateCorpus so every finding can be reported.
Corpus ParseCorpusUnchecked(std::string_view xml);

// Whole file as bytes; throws std::runtime_error.
std::string ReadFile(const std::string& path);

// Inverse of ParseCorpus for valid corpora; always emits the wrapping form.
std::string SerializeCorpus(const Corpus& corpus);

}  // namespace lxq

#endif  // LXQ_CORPUS_XML_H_
