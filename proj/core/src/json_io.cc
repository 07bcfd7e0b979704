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

#include <algorithm>

#include "json_internal.h"
#include "lxq/errors.h"

namespace lxq {
namespace json_internal {
namespace {

const json& Field(const json& obj, const char* name) {
  if (!obj.is_object()) throw JsonShapeError("expected a JSON object");
  const auto it = obj.find(name);
  if (it == obj.end()) throw JsonShapeError(std::string("missing field '") + name + "'");
  return *it;
}

std::string StringField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_string()) throw JsonShapeError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::int64_t IntField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_number_integer())
    throw JsonShapeError(std::string("field '") + name + "' must be an integer");
  return v.get<std::int64_t>();
}

bool BoolField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_boolean()) throw JsonShapeError(std::string("field '") + name + "' must be a boolean");
  return v.get<bool>();
}

std::string_view QuantifierName(Quantifier::Kind kind) {
  switch (kind) {
    case Quantifier::Kind::kOne: return "one";
    case Quantifier::Kind::kOptional: return "optional";
    case Quantifier::Kind::kStar: return "star";
    case Quantifier::Kind::kRange: return "range";
  }
  return "one";
}

json SourceJson(const ItemSource& s) {
  return {{"textId", s.text_id}, {"sentenceIndex", s.sentence}, {"tokenIndex", s.token}};
}

json LogJson(const LogEntry& e) {
  return {{"item", {{"index", e.item.index}, {"remedial", e.item.remedial}}},
          {"given", e.given},
          {"correct", e.correct},
          {"timestamp", e.timestamp_ms}};
}

LogEntry LogFromJson(const json& v) {
  LogEntry e;
  const json& item = Field(v, "item");
  e.item.index = static_cast<std::size_t>(IntField(item, "index"));
  e.item.remedial = BoolField(item, "remedial");
  e.given = StringField(v, "given");
  e.correct = BoolField(v, "correct");
  e.timestamp_ms = IntField(v, "timestamp");
  return e;
}

}  // namespace

std::string Dump(const json& value) {
  return value.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

json CatalogJson(const Catalog& c) {
  return {{"pos", c.pos},
          {"traits", c.traits},
          {"categories", c.categories},
          {"l1", c.mothertongues},
          {"levels", c.levels}};
}

json CorpusSummary(std::string_view id, const Corpus& corpus) {
  return {{"id", id},
          {"name", corpus.name},
          {"textCount", corpus.texts.size()},
          {"tokenCount", corpus.TokenCount()},
          {"spanCount", corpus.SpanCount()},
          {"catalog", CatalogJson(corpus.catalog)}};
}

json QueryJson(const PatternQuery& query) {
  json slots = json::array();
  for (const Slot& slot : query.slots) {
    json constraints = json::array();
    for (const Constraint& c : slot.constraints) {
      constraints.push_back({{"key", FieldKeyName(c.key)},
                             {"op", c.op == CompareOp::kEq ? "=" : "!="},
                             {"value", c.value}});
    }
    json s = {{"keyword", slot.is_keyword},
              {"quantifier", QuantifierName(slot.quantifier.kind)},
              {"constraints", constraints}};
    if (slot.quantifier.kind == Quantifier::Kind::kRange) {
      s["min"] = slot.quantifier.min;
      s["max"] = slot.quantifier.max;
    }
    slots.push_back(std::move(s));
  }
  return {{"docFilters",
           {{"l1", query.filters.mothertongues}, {"level", query.filters.levels}}},
          {"slots", slots}};
}

PatternQuery QueryFromJsonValue(const json& value) {
  PatternQuery query;
  if (!value.is_object()) throw JsonShapeError("query must be a JSON object");
  if (const auto it = value.find("docFilters"); it != value.end() && !it->is_null()) {
    if (!it->is_object()) throw JsonShapeError("docFilters must be an object");
    auto read_set = [&](const char* name, std::set<std::string>& out) {
      const auto f = it->find(name);
      if (f == it->end() || f->is_null()) return;
      if (f->is_string()) {
        out.insert(f->get<std::string>());
        return;
      }
      if (!f->is_array()) throw JsonShapeError(std::string("docFilters.") + name + " must be an array");
      for (const auto& v : *f) {
        if (!v.is_string())
          throw JsonShapeError(std::string("docFilters.") + name + " must hold strings");
        out.insert(v.get<std::string>());
      }
    };
    read_set("l1", query.filters.mothertongues);
    read_set("level", query.filters.levels);
  }
  const json& slots = Field(value, "slots");
  if (!slots.is_array()) throw JsonShapeError("slots must be an array");
  for (const json& s : slots) {
    Slot slot;
    if (const auto k = s.find("keyword"); s.is_object() && k != s.end()) {
      if (!k->is_boolean()) throw JsonShapeError("slot keyword must be a boolean");
      slot.is_keyword = k->get<bool>();
    }
    std::string quant = "one";
    if (s.is_object() && s.contains("quantifier")) quant = StringField(s, "quantifier");
    if (quant == "one") {
      slot.quantifier = Quantifier::One();
    } else if (quant == "optional") {
      slot.quantifier = Quantifier::Optional();
    } else if (quant == "star") {
      slot.quantifier = Quantifier::Star();
    } else if (quant == "range") {
      slot.quantifier = Quantifier::Range(static_cast<int>(IntField(s, "min")),
                                          static_cast<int>(IntField(s, "max")));
    } else {
      throw InvalidQueryError("unknown quantifier '" + quant + "'");
    }
    const json& constraints = Field(s, "constraints");
    if (!constraints.is_array()) throw JsonShapeError("constraints must be an array");
    for (const json& c : constraints) {
      const std::string key_name = StringField(c, "key");
      const auto key = FieldKeyFromName(key_name);
      if (!key) throw InvalidQueryError("unknown key '" + key_name + "'");
      const std::string op = c.contains("op") ? StringField(c, "op") : "=";
      if (op != "=" && op != "!=") throw InvalidQueryError("unknown operator '" + op + "'");
      slot.constraints.push_back(
          {*key, op == "=" ? CompareOp::kEq : CompareOp::kNeq, StringField(c, "value")});
    }
    query.slots.push_back(std::move(slot));
  }
  CheckQuery(query);
  return query;
}

json LineJson(const ConcordanceLine& line) {
  return {{"no", line.row},
          {"textId", line.text_id},
          {"left", line.left},
          {"keyword", line.keyword},
          {"right", line.right},
          {"sentenceIndex", line.sentence},
          {"tokenIndex", line.token},
          {"matchStart", line.match.start},
          {"matchEnd", line.match.end}};
}

json ItemJson(const GapFillItem& item) {
  return {{"stem", item.stem},
          {"answer", item.answer},
          {"distractors", item.distractors},
          {"source", SourceJson(item.source)},
          {"answerMode", AnswerModeName(item.answer_mode)},
          {"lemma", item.lemma}};
}

GapFillItem ItemFromJson(const json& v) {
  GapFillItem item;
  item.stem = StringField(v, "stem");
  item.answer = StringField(v, "answer");
  for (const auto& d : Field(v, "distractors")) {
    if (!d.is_string()) throw JsonShapeError("distractors must hold strings");
    item.distractors.push_back(d.get<std::string>());
  }
  const json& src = Field(v, "source");
  item.source.text_id = StringField(src, "textId");
  item.source.sentence = static_cast<int>(IntField(src, "sentenceIndex"));
  item.source.token = static_cast<int>(IntField(src, "tokenIndex"));
  const auto mode = AnswerModeFromName(StringField(v, "answerMode"));
  if (!mode) throw JsonShapeError("unknown answerMode");
  item.answer_mode = *mode;
  item.lemma = StringField(v, "lemma");
  return item;
}

json ReportJson(const SessionReport& r, double threshold) {
  json history = json::array();
  for (const auto& e : r.history) history.push_back(LogJson(e));
  return {{"totalResponses", r.total_responses},
          {"errorCount", r.error_count},
          {"errorRate", r.error_rate},
          {"threshold", threshold},
          {"thresholdExceeded", r.threshold_exceeded},
          {"history", history}};
}

json ConfigJson(const SessionConfig& c) {
  return {{"mode", SessionModeName(c.mode)},
          {"shortcutStreak", c.shortcut_streak},
          {"skipCount", c.skip_count},
          {"errorRateThreshold", c.error_rate_threshold},
          {"caseSensitive", c.case_sensitive}};
}

SessionConfig ConfigFromJson(const json& v) {
  SessionConfig c;
  if (v.is_null()) return c;
  if (!v.is_object()) throw JsonShapeError("config must be an object");
  if (v.contains("mode")) {
    const auto mode = SessionModeFromName(StringField(v, "mode"));
    if (!mode) throw ArgumentError("mode must be 'linear' or 'branched'");
    c.mode = *mode;
  }
  if (v.contains("shortcutStreak")) c.shortcut_streak = static_cast<int>(IntField(v, "shortcutStreak"));
  if (v.contains("skipCount")) c.skip_count = static_cast<int>(IntField(v, "skipCount"));
  if (v.contains("errorRateThreshold")) {
    const json& t = v["errorRateThreshold"];
    if (!t.is_number()) throw JsonShapeError("errorRateThreshold must be a number");
    c.error_rate_threshold = t.get<double>();
  }
  if (v.contains("caseSensitive")) c.case_sensitive = BoolField(v, "caseSensitive");
  CheckConfig(c);
  return c;
}

json SessionJson(const SessionState& s) {
  json items = json::array();
  for (const auto& item : s.items) items.push_back(ItemJson(item));
  json remedials = json::array();
  for (const auto& r : s.remedials) remedials.push_back(r ? ItemJson(*r) : json(nullptr));
  json log = json::array();
  for (const auto& e : s.log) log.push_back(LogJson(e));
  return {{"items", items},       {"remedials", remedials}, {"config", ConfigJson(s.config)},
          {"cursor", s.cursor},   {"inRemedial", s.in_remedial}, {"log", log},
          {"streak", s.streak},   {"finished", s.finished}};
}

SessionState SessionFromJson(const json& v) {
  SessionState s;
  for (const auto& item : Field(v, "items")) s.items.push_back(ItemFromJson(item));
  for (const auto& r : Field(v, "remedials")) {
    s.remedials.push_back(r.is_null() ? std::nullopt : std::optional(ItemFromJson(r)));
  }
  s.config = ConfigFromJson(Field(v, "config"));
  s.cursor = static_cast<std::size_t>(IntField(v, "cursor"));
  s.in_remedial = BoolField(v, "inRemedial");
  for (const auto& e : Field(v, "log")) s.log.push_back(LogFromJson(e));
  s.streak = static_cast<int>(IntField(v, "streak"));
  s.finished = BoolField(v, "finished");
  if (s.remedials.size() != s.items.size() || s.cursor > s.items.size())
    throw JsonShapeError("inconsistent session record");
  return s;
}

json PresentItem(const GapFillItem& item, ItemRef ref) {
  json out = {{"stem", item.stem},
              {"index", ref.index},
              {"remedial", ref.remedial},
              {"source", SourceJson(item.source)}};
  if (!item.distractors.empty()) {
    std::vector<std::string> options = item.distractors;
    options.push_back(item.answer);
    std::sort(options.begin(), options.end());
    out["options"] = options;
  }
  return out;
}

}  // namespace json_internal

using json_internal::Dump;
using json_internal::json;

std::string CorpusSummaryBody(std::string_view id, const Corpus& corpus) {
  return Dump(json_internal::CorpusSummary(id, corpus));
}

std::string QueryResponseBody(const ResultPage& page, const PatternQuery& query) {
  json lines = json::array();
  for (const auto& line : page.lines) lines.push_back(json_internal::LineJson(line));
  return Dump({{"total", page.total},
               {"offset", page.offset},
               {"limit", page.limit},
               {"query", json_internal::QueryJson(query)},
               {"dsl", ToDsl(query)},
               {"lines", lines}});
}

std::string ExerciseSetBody(const ExerciseSet& set) {
  json items = json::array();
  for (const auto& item : set.items) items.push_back(json_internal::ItemJson(item));
  return Dump({{"generator", kGeneratorName},
               {"seed", set.seed},
               {"count", set.options.count},
               {"answerMode", AnswerModeName(set.options.answer_mode)},
               {"distractorPolicy", DistractorPolicyName(set.options.distractor_policy)},
               {"k", set.options.distractor_count},
               {"query", json_internal::QueryJson(set.query)},
               {"dsl", ToDsl(set.query)},
               {"totalMatches", set.total_matches},
               {"noExamples", set.no_examples},
               {"items", items}});
}

std::string StatsBody(const std::vector<FrequentError>& rows, int depth,
                      const std::optional<std::string>& mothertongue,
                      const std::optional<std::string>& level, std::int64_t min_count) {
  json out_rows = json::array();
  for (const auto& r : rows) {
    out_rows.push_back(
        {{"category", r.category}, {"count", r.count}, {"relativeFrequency", r.relative_frequency}});
  }
  return Dump({{"depth", depth},
               {"l1", mothertongue ? json(*mothertongue) : json(nullptr)},
               {"level", level ? json(*level) : json(nullptr)},
               {"min", min_count},
               {"rows", out_rows}});
}

std::string ValidationBody(const std::vector<ValidationFinding>& findings) {
  json list = json::array();
  for (const auto& f : findings) {
    list.push_back({{"severity", SeverityName(f.severity)},
                    {"textId", f.text_id},
                    {"sentence", f.sentence},
                    {"token", f.token},
                    {"message", f.message}});
  }
  return Dump({{"valid", !HasErrors(findings)}, {"findings", list}});
}

PatternQuery QueryFromJson(std::string_view text) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonShapeError(std::string("malformed JSON: ") + e.what());
  }
  return json_internal::QueryFromJsonValue(value);
}

std::string QueryToJson(const PatternQuery& query) {
  return Dump(json_internal::QueryJson(query));
}

std::string SessionStateToJson(const SessionState& state) {
  return Dump(json_internal::SessionJson(state));
}

SessionState SessionStateFromJson(std::string_view text) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonShapeError(std::string("malformed JSON: ") + e.what());
  }
  return json_internal::SessionFromJson(value);
}

}  // namespace lxq
