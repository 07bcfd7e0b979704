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

#ifndef LXQ_JSON_IO_H_
#define LXQ_JSON_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lxq/concordance.h"
#include "lxq/corpus.h"
#include "lxq/exercise.h"
#include "lxq/pattern.h"
#include "lxq/session.h"
#include "lxq/stats.h"

// Response bodies shared by the HTTP service and `lxq ... --format json`.
// Every body is pretty-printed JSON terminated by a newline.
namespace lxq {

// Malformed JSON or a field of the wrong type.
class JsonShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string CorpusSummaryBody(std::string_view id, const Corpus& corpus);
std::string QueryResponseBody(const ResultPage& page, const PatternQuery& query);
std::string ExerciseSetBody(const ExerciseSet& set);
std::string StatsBody(const std::vector<FrequentError>& rows, int depth,
                      const std::optional<std::string>& mothertongue,
                      const std::optional<std::string>& level, std::int64_t min_count);
std::string ValidationBody(const std::vector<ValidationFinding>& findings);

// Structured query form:
//   {"docFilters": {"l1": [...], "level": [...]},
//    "slots": [{"keyword": true, "quantifier": "one"|"optional"|"star"|"range",
//               "min": m, "max": n,
//               "constraints": [{"key": "lemma", "op": "=", "value": "avoir"}]}]}
// Throws JsonShapeError for wrong types and InvalidQueryError for values
// outside the query model.
PatternQuery QueryFromJson(std::string_view json);
std::string QueryToJson(const PatternQuery& query);

// Full session record for persistence.
std::string SessionStateToJson(const SessionState& state);
SessionState SessionStateFromJson(std::string_view json);

}  // namespace lxq

#endif  // LXQ_JSON_IO_H_
