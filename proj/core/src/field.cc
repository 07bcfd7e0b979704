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

#include "lxq/field.h"

#include "lxq/text_util.h"

namespace lxq {

std::string_view FieldKeyName(FieldKey key) {
  switch (key) {
    case FieldKey::kSurface: return "surface";
    case FieldKey::kLemma: return "lemma";
    case FieldKey::kPos: return "pos";
    case FieldKey::kTrait: return "trait";
    case FieldKey::kError: return "error";
    case FieldKey::kCategory: return "cat";
    case FieldKey::kCorrected: return "corr";
  }
  return "?";
}

std::optional<FieldKey> FieldKeyFromName(std::string_view name) {
  for (FieldKey key : kAllFieldKeys) {
    if (FieldKeyName(key) == name) return key;
  }
  return std::nullopt;
}

bool IsCaseInsensitive(FieldKey key) {
  switch (key) {
    case FieldKey::kLemma:
    case FieldKey::kPos:
    case FieldKey::kTrait:
    case FieldKey::kCategory:
    case FieldKey::kError:
      return true;
    default:
      return false;
  }
}

std::string NormalizeValue(FieldKey key, std::string_view value) {
  return IsCaseInsensitive(key) ? FoldCase(value) : std::string(value);
}

}  // namespace lxq
