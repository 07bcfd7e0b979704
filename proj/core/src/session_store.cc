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

#include "lxq/session_store.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lxq {

std::optional<std::string> InMemorySessionStore::Get(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = records_.find(id);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void InMemorySessionStore::Put(const std::string& id, const std::string& record) {
  std::lock_guard lock(mu_);
  records_[id] = record;
}

std::vector<std::string> InMemorySessionStore::Ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : records_) ids.push_back(id);
  return ids;
}

FileSessionStore::FileSessionStore(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (buf.str().empty()) return;
  const auto doc = nlohmann::json::parse(buf.str());
  if (!doc.is_object()) throw std::runtime_error("session store " + path_ + " is not a JSON object");
  for (const auto& [id, record] : doc.items()) records_[id] = record.dump();
}

void FileSessionStore::Put(const std::string& id, const std::string& record) {
  std::lock_guard lock(mu_);
  records_[id] = record;
  Flush();
}

void FileSessionStore::Flush() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [id, record] : records_) doc[id] = nlohmann::json::parse(record);
  const std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write session store " + tmp);
    out << doc.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path_);
}

std::unique_ptr<SessionStore> MakeSessionStore(const std::string& path) {
  if (path.empty()) return std::make_unique<InMemorySessionStore>();
  return std::make_unique<FileSessionStore>(path);
}

}  // namespace lxq
