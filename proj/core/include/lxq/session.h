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

#ifndef LXQ_SESSION_H_
#define LXQ_SESSION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lxq/exercise.h"

namespace lxq {

enum class SessionMode { kLinear, kBranched };

std::string_view SessionModeName(SessionMode mode);
std::optional<SessionMode> SessionModeFromName(std::string_view name);

struct SessionConfig {
  SessionMode mode = SessionMode::kLinear;
  int shortcut_streak = 3;  // branched only
  int skip_count = 1;
  double error_rate_threshold = 0.10;
  bool case_sensitive = true;

  bool operator==(const SessionConfig&) const = default;
};

// Throws ArgumentError unless shortcut_streak >= 2, skip_count >= 1 and
// 0 < error_rate_threshold <= 1.
void CheckConfig(const SessionConfig& config);

struct ItemRef {
  std::size_t index = 0;  // main item, or the main item a remedial belongs to
  bool remedial = false;

  bool operator==(const ItemRef&) const = default;
};

struct LogEntry {
  ItemRef item;
  std::string given;
  bool correct = false;
  std::int64_t timestamp_ms = 0;

  bool operator==(const LogEntry&) const = default;
};

// Programmed-instruction state. Linear mode advances only on a correct
// answer. Branched mode detours through the failed item's remedial (when
// one exists) and then returns to it, and skips `skip_count` items once
// `shortcut_streak` consecutive answers are correct.
struct SessionState {
  std::vector<GapFillItem> items;
  std::vector<std::optional<GapFillItem>> remedials;  // parallel to items
  SessionConfig config;
  std::size_t cursor = 0;
  bool in_remedial = false;  // presenting remedials[cursor]; returns to cursor
  std::vector<LogEntry> log;
  int streak = 0;  // consecutive correct answers since the last error
  bool finished = false;

  ItemRef CurrentRef() const { return {cursor, in_remedial}; }
  // Throws StateError once finished.
  const GapFillItem& CurrentItem() const;

  bool operator==(const SessionState&) const = default;
};

struct SessionReport {
  std::int64_t total_responses = 0;
  std::int64_t error_count = 0;
  double error_rate = 0.0;
  bool threshold_exceeded = false;  // error_rate > threshold, strictly
  std::vector<LogEntry> history;
};

struct Feedback {
  bool correct = false;
  std::string expected;
  bool finished = false;
  std::optional<SessionReport> report;  // set once finished
};

// Throws ArgumentError for an empty item list, a bad config or a remedial
// list whose size differs from the item list (an empty list means none).
SessionState StartSession(std::vector<GapFillItem> items, const SessionConfig& config,
                          std::vector<std::optional<GapFillItem>> remedials = {});

// Throws StateError when the session is finished.
Feedback SubmitAnswer(SessionState& state, std::string_view answer, std::int64_t timestamp_ms);
Feedback SubmitAnswer(SessionState& state, std::string_view answer);

SessionReport Report(const SessionState& state);

bool AnswerMatches(const SessionConfig& config, std::string_view expected,
                   std::string_view given);

}  // namespace lxq

#endif  // LXQ_SESSION_H_
