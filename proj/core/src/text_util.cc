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

#include "lxq/text_util.h"

#include <algorithm>
#include <cstdint>

namespace lxq {
namespace {

char32_t FoldCodePoint(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0x80) return c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x100 && c <= 0x137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x139 && c <= 0x148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c % 2 == 0) ? c + 1 : c;
  if (c == 0x178) return 0xFF;
  if (c >= 0x179 && c <= 0x17E) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

void AppendUtf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

// Decodes one code point at `i`; returns the sequence length, 0 if invalid.
std::size_t DecodeUtf8(std::string_view s, std::size_t i, char32_t& out) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if (b0 < 0x80) {
    out = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    out = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    out = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    out = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    out = (out << 6) | (b & 0x3F);
  }
  return len;
}

}  // namespace

std::string FoldCase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t c = 0;
    const std::size_t len = DecodeUtf8(text, i, c);
    if (len == 0) {
      out.push_back(text[i]);
      ++i;
      continue;
    }
    if (len == 1) {
      out.push_back(static_cast<char>(FoldCodePoint(c)));
    } else {
      AppendUtf8(out, FoldCodePoint(c));
    }
    i += len;
  }
  return out;
}

bool FoldedEquals(std::string_view text, std::string_view folded) {
  // Every mapping above keeps the UTF-8 length, so sizes must agree.
  if (text.size() != folded.size()) return false;
  std::size_t i = 0;
  std::size_t j = 0;
  std::string buf;
  while (i < text.size()) {
    const auto b = static_cast<unsigned char>(text[i]);
    if (b < 0x80) {
      const char c = static_cast<char>(b >= 'A' && b <= 'Z' ? b + 32 : b);
      if (j >= folded.size() || folded[j] != c) return false;
      ++i;
      ++j;
      continue;
    }
    char32_t c = 0;
    const std::size_t len = DecodeUtf8(text, i, c);
    buf.clear();
    if (len == 0) {
      buf.push_back(text[i]);
      ++i;
    } else {
      AppendUtf8(buf, FoldCodePoint(c));
      i += len;
    }
    if (folded.substr(j, buf.size()) != buf) return false;
    j += buf.size();
  }
  return j == folded.size();
}

std::string_view Trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

std::vector<std::string> SplitTrimmed(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    const auto piece = Trim(text.substr(start, end - start));
    if (!piece.empty()) parts.emplace_back(piece);
    start = end + 1;
  }
  return parts;
}

std::vector<std::string> SplitCategory(std::string_view code) {
  std::vector<std::string> segments;
  std::size_t start = 0;
  while (true) {
    const auto end = code.find('-', start);
    if (end == std::string_view::npos) {
      segments.emplace_back(code.substr(start));
      break;
    }
    segments.emplace_back(code.substr(start, end - start));
    start = end + 1;
  }
  return segments;
}

bool IsSegmentPrefix(std::string_view prefix, std::string_view code) {
  if (prefix.empty() || prefix.size() > code.size()) return false;
  if (code.substr(0, prefix.size()) != prefix) return false;
  return prefix.size() == code.size() || code[prefix.size()] == '-';
}

std::string TruncateCategory(std::string_view code, int depth) {
  std::size_t pos = 0;
  for (int seen = 0; seen < depth; ++seen) {
    pos = code.find('-', pos);
    if (pos == std::string_view::npos) return std::string(code);
    if (seen + 1 == depth) return std::string(code.substr(0, pos));
    ++pos;
  }
  return std::string(code);
}

std::size_t Utf8Length(std::string_view text) {
  return static_cast<std::size_t>(
      std::count_if(text.begin(), text.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
      }));
}

bool IsAllDigits(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

bool TextIdLess(std::string_view a, std::string_view b) {
  const bool a_num = IsAllDigits(a);
  const bool b_num = IsAllDigits(b);
  if (a_num != b_num) return a_num;
  if (!a_num) return a < b;
  auto strip = [](std::string_view s) {
    const auto nz = s.find_first_not_of('0');
    return nz == std::string_view::npos ? std::string_view{} : s.substr(nz);
  };
  const auto sa = strip(a);
  const auto sb = strip(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return a < b;
}

}  // namespace lxq
