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

#ifndef LXQ_ERRORS_H_
#define LXQ_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lxq {

/// Malformed XML input. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error(message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Schema or invariant violation in an otherwise well-formed corpus.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& message, std::string text_id,
                  int sentence)
      : std::runtime_error(message),
        text_id_(std::move(text_id)),
        sentence_(sentence) {}
  const std::string& text_id() const { return text_id_; }
  /// -1 when the violation is not tied to one sentence.
  int sentence() const { return sentence_; }

 private:
  std::string text_id_;
  int sentence_;
};

/// Query DSL syntax error. `column()` is 1-based, in code points.
class QuerySyntaxError : public std::runtime_error {
 public:
  QuerySyntaxError(const std::string& message, int column)
      : std::runtime_error(message), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

/// A structurally complete query that breaks a semantic rule (for example
/// two keyword slots).
class InvalidQueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Snapshot file is unreadable, has the wrong magic or an unsupported version.
class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lxq

#endif  // LXQ_ERRORS_H_
