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

#include "lxq/session.h"

#include <chrono>

#include "lxq/errors.h"
#include "lxq/text_util.h"

namespace lxq {

std::string_view SessionModeName(SessionMode mode) {
  return mode == SessionMode::kLinear ? "linear" : "branched";
}

std::optional<SessionMode> SessionModeFromName(std::string_view name) {
  if (name == "linear") return SessionMode::kLinear;
  if (name == "branched") return SessionMode::kBranched;
  return std::nullopt;
}

void CheckConfig(const SessionConfig& config) {
  if (config.shortcut_streak < 2) throw ArgumentError("shortcutStreak must be at least 2");
  if (config.skip_count < 1) throw ArgumentError("skipCount must be at least 1");
  if (!(config.error_rate_threshold > 0.0 && config.error_rate_threshold <= 1.0))
    throw ArgumentError("errorRateThreshold must be in (0, 1]");
}

const GapFillItem& SessionState::CurrentItem() const {
  if (finished) throw StateError("session is finished");
  if (in_remedial) return *remedials.at(cursor);
  return items.at(cursor);
}

SessionState StartSession(std::vector<GapFillItem> items, const SessionConfig& config,
                          std::vector<std::optional<GapFillItem>> remedials) {
  if (items.empty()) throw ArgumentError("a session needs at least one item");
  CheckConfig(config);
  if (remedials.empty()) remedials.resize(items.size());
  if (remedials.size() != items.size())
    throw ArgumentError("remedial list must parallel the item list");
  SessionState state;
  state.items = std::move(items);
  state.remedials = std::move(remedials);
  state.config = config;
  return state;
}

bool AnswerMatches(const SessionConfig& config, std::string_view expected,
                   std::string_view given) {
  const auto e = Trim(expected);
  const auto g = Trim(given);
  if (config.case_sensitive) return e == g;
  return FoldCase(e) == FoldCase(g);
}

Feedback SubmitAnswer(SessionState& state, std::string_view answer,
                      std::int64_t timestamp_ms) {
  if (state.finished) throw StateError("session is finished");
  const GapFillItem& item = state.CurrentItem();
  Feedback fb;
  fb.expected = item.answer;
  fb.correct = AnswerMatches(state.config, item.answer, answer);
  state.log.push_back({state.CurrentRef(), std::string(answer), fb.correct, timestamp_ms});

  const bool branched = state.config.mode == SessionMode::kBranched;
  if (state.in_remedial) {
    // One detour per failure, whatever the outcome; back to the failed item.
    state.in_remedial = false;
    state.streak = fb.correct ? state.streak + 1 : 0;
  } else if (fb.correct) {
    ++state.streak;
    std::size_t step = 1;
    if (branched && state.streak >= state.config.shortcut_streak) {
      step += static_cast<std::size_t>(state.config.skip_count);
      state.streak = 0;
    }
    state.cursor += step;
  } else {
    state.streak = 0;
    if (branched && state.remedials[state.cursor]) state.in_remedial = true;
  }

  if (state.cursor >= state.items.size()) {
    state.cursor = state.items.size();
    state.finished = true;
    fb.finished = true;
    fb.report = Report(state);
  }
  return fb;
}

Feedback SubmitAnswer(SessionState& state, std::string_view answer) {
  const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  return SubmitAnswer(state, answer, static_cast<std::int64_t>(now));
}

SessionReport Report(const SessionState& state) {
  SessionReport r;
  r.history = state.log;
  r.total_responses = static_cast<std::int64_t>(state.log.size());
  for (const auto& entry : state.log)
    if (!entry.correct) ++r.error_count;
  r.error_rate = r.total_responses == 0
                     ? 0.0
                     : static_cast<double>(r.error_count) / static_cast<double>(r.total_responses);
  r.threshold_exceeded = r.error_rate > state.config.error_rate_threshold;
  return r;
}

}  // namespace lxq
