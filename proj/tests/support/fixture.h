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

#ifndef LXQ_TESTS_SUPPORT_FIXTURE_H_
#define LXQ_TESTS_SUPPORT_FIXTURE_H_

#include <memory>
#include <string>

#include "lxq/corpus_xml.h"
#include "lxq/index.h"

namespace lxq::testing {

inline constexpr const char* kFixtureQuery =
    "[lemma=\"avoir\"] ![pos=\"verbe\" & trait=\"participe passé\" & error=\"yes\"]";

inline std::string DataPath(const std::string& name) {
  return std::string(LXQ_TEST_DATA_DIR) + "/" + name;
}

inline std::shared_ptr<const Corpus> FixtureCorpus() {
  static const auto corpus =
      std::make_shared<const Corpus>(ParseCorpusFile(DataPath("kwic_fixture.xml")));
  return corpus;
}

inline const CorpusIndex& FixtureIndex() {
  static const CorpusIndex index = CorpusIndex::Build(FixtureCorpus());
  return index;
}

inline CorpusIndex IndexOf(const Corpus& corpus) {
  return CorpusIndex::Build(std::make_shared<const Corpus>(corpus));
}

}  // namespace lxq::testing

#endif  // LXQ_TESTS_SUPPORT_FIXTURE_H_
