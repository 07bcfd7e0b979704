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

#ifndef LXQ_FIELD_H_
#define LXQ_FIELD_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace lxq {

// Token attributes a constraint or an index lookup can address.
enum class FieldKey { kSurface, kLemma, kPos, kTrait, kError, kCategory, kCorrected };

inline constexpr std::array<FieldKey, 7> kAllFieldKeys = {
    FieldKey::kSurface, FieldKey::kLemma,    FieldKey::kPos,
    FieldKey::kTrait,   FieldKey::kError,    FieldKey::kCategory,
    FieldKey::kCorrected};

// DSL spelling: surface, lemma, pos, trait, error, cat, corr.
std::string_view FieldKeyName(FieldKey key);
std::optional<FieldKey> FieldKeyFromName(std::string_view name);

// Surface and corrected forms carry learner orthography and compare exactly;
// lemma, pos, trait and category are vocabulary labels compared without case.
bool IsCaseInsensitive(FieldKey key);

// Canonical form under which values of `key` are indexed and compared.
std::string NormalizeValue(FieldKey key, std::string_view value);

}  // namespace lxq

#endif  // LXQ_FIELD_H_
