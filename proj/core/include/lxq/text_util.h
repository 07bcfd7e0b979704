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

#ifndef LXQ_TEXT_UTIL_H_
#define LXQ_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace lxq {

// Lowercases ASCII, Latin-1 Supplement, Latin Extended-A and Greek/Cyrillic
// basic ranges of a UTF-8 string. Invalid sequences pass through unchanged.
std::string FoldCase(std::string_view text);

// FoldCase(text) == folded, without allocating for ASCII input.
bool FoldedEquals(std::string_view text, std::string_view folded);

std::string_view Trim(std::string_view text);

// Splits on `sep`, trims each piece and drops empty ones.
std::vector<std::string> SplitTrimmed(std::string_view text, char sep);

std::vector<std::string> SplitCategory(std::string_view code);

// True when `prefix` equals the first segments of `code` ("GRA-PP" is a
// segment prefix of "GRA-PP-AGR", "GRA-P" is not). Inputs must be folded by
// the caller when case-insensitive matching is wanted.
bool IsSegmentPrefix(std::string_view prefix, std::string_view code);

// First `depth` "-"-separated segments of `code`.
std::string TruncateCategory(std::string_view code, int depth);

// Number of code points; display width for aligned text output.
std::size_t Utf8Length(std::string_view text);

bool IsAllDigits(std::string_view text);

// Orders all-digit ids numerically and before any other id; the rest
// compare lexicographically.
bool TextIdLess(std::string_view a, std::string_view b);

}  // namespace lxq

#endif  // LXQ_TEXT_UTIL_H_
