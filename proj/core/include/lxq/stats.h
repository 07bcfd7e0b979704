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

#ifndef LXQ_STATS_H_
#define LXQ_STATS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lxq/corpus.h"
#include "lxq/index.h"

namespace lxq {

struct ProfileKey {
  std::string category;  // truncated to the profile depth
  std::string mothertongue;
  std::string level;

  auto operator<=>(const ProfileKey&) const = default;
};

// Error spans counted per (category prefix, L1, level). Spans are the unit
// here; detection benchmarking counts tokens instead.
struct ErrorProfile {
  int depth = 1;
  std::map<ProfileKey, std::int64_t> counts;
  std::int64_t total_spans = 0;
  std::int64_t total_tokens = 0;
};

// Throws ArgumentError when depth < 1.
ErrorProfile BuildProfile(const Corpus& corpus, int depth);

struct FrequentError {
  std::string category;
  std::int64_t count = 0;
  double relative_frequency = 0.0;  // count / spans passing the same filter

  bool operator==(const FrequentError&) const = default;
};

// Descending by count, ties by category in byte order. L1 and level filters
// compare case-insensitively. Throws ArgumentError
// when min_count < 1.
std::vector<FrequentError> FrequentErrors(const ErrorProfile& profile,
                                          const std::optional<std::string>& mothertongue,
                                          const std::optional<std::string>& level,
                                          std::int64_t min_count);

// `category,l1,level,count` with a header row, rows in key order.
std::string ProfileCsv(const ErrorProfile& profile);

struct DetectionScore {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
};

// Gold positions are the tokens covered by any span. Precision of an empty
// prediction set and recall of an empty gold set are 1; F1 is 0 whenever
// precision + recall is 0. Throws ArgumentError for positions that do not
// address a token.
DetectionScore BenchmarkDetection(const Corpus& corpus, const std::set<Posting>& predicted);

}  // namespace lxq

#endif  // LXQ_STATS_H_
