// Copyright 2026 The PSS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSS_ERRORS_HPP
#define PSS_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pss {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input is not syntactically valid JSON.
class MalformedJson : public Error {
 public:
  using Error::Error;
};

/// The input is valid JSON but does not conform to the feature-file or
/// repository schema. Carries the offending field path.
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string field_path, const std::string& detail)
      : Error(field_path + ": " + detail), field_path_(std::move(field_path)) {}

  const std::string& field_path() const { return field_path_; }

 private:
  std::string field_path_;
};

/// A node id is referenced but does not resolve to a suitable call-graph node.
class DanglingReference : public Error {
 public:
  DanglingReference(std::int64_t node_id, const std::string& detail)
      : Error("node " + std::to_string(node_id) + ": " + detail),
        node_id_(node_id) {}

  std::int64_t node_id() const { return node_id_; }

 private:
  std::int64_t node_id_;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The iterative eigensolver exhausted its iteration budget.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class DuplicateId : public Error {
 public:
  using Error::Error;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownMetric : public Error {
 public:
  using Error::Error;
};

class EmptyRepository : public Error {
 public:
  using Error::Error;
};

class MissingProgram : public Error {
 public:
  using Error::Error;
};

class DegenerateGroups : public Error {
 public:
  using Error::Error;
};

}  // namespace pss

#endif  // PSS_ERRORS_HPP
