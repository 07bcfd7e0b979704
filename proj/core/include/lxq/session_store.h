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

#ifndef LXQ_SESSION_STORE_H_
#define LXQ_SESSION_STORE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lxq {

// Persists serialized session records keyed by session id.
class SessionStore {
 public:
  virtual ~SessionStore() = default;
  virtual std::optional<std::string> Get(const std::string& id) const = 0;
  virtual void Put(const std::string& id, const std::string& record) = 0;
  virtual std::vector<std::string> Ids() const = 0;
};

class InMemorySessionStore : public SessionStore {
 public:
  std::optional<std::string> Get(const std::string& id) const override;
  void Put(const std::string& id, const std::string& record) override;
  std::vector<std::string> Ids() const override;

 protected:
  mutable std::mutex mu_;
  std::map<std::string, std::string> records_;
};

// All records in one JSON object file, rewritten through a temporary file
// and rename on every Put.
class FileSessionStore : public InMemorySessionStore {
 public:
  explicit FileSessionStore(std::string path);
  void Put(const std::string& id, const std::string& record) override;

 private:
  void Flush() const;
  std::string path_;
};

std::unique_ptr<SessionStore> MakeSessionStore(const std::string& path);

}  // namespace lxq

#endif  // LXQ_SESSION_STORE_H_
