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

#ifndef LXQ_SRC_JSON_INTERNAL_H_
#define LXQ_SRC_JSON_INTERNAL_H_

#include <json.hpp>

#include "lxq/json_io.h"

namespace lxq::json_internal {

using nlohmann::json;

std::string Dump(const json& value);

json CatalogJson(const Catalog& catalog);
json CorpusSummary(std::string_view id, const Corpus& corpus);
json QueryJson(const PatternQuery& query);
PatternQuery QueryFromJsonValue(const json& value);
json LineJson(const ConcordanceLine& line);
json ItemJson(const GapFillItem& item);
GapFillItem ItemFromJson(const json& value);
json ReportJson(const SessionReport& report, double threshold);
json ConfigJson(const SessionConfig& config);
SessionConfig ConfigFromJson(const json& value);
json SessionJson(const SessionState& state);
SessionState SessionFromJson(const json& value);

// Learner-facing view of an item: no answer, options only when the item
// has distractors (answer and distractors in byte order).
json PresentItem(const GapFillItem& item, ItemRef ref);

}  // namespace lxq::json_internal

#endif  // LXQ_SRC_JSON_INTERNAL_H_
