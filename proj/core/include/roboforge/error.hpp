// Copyright 2026 The Roboforge Authors.
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

#ifndef ROBOFORGE_ERROR_HPP_
#define ROBOFORGE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace roboforge {

// Base of every recoverable error raised by the library. Contract violations
// (wrong vector sizes, bad indices) use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structured-text input could not be read (names the offending field).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input was readable but violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A Markdown report lacks required sections.
class SchemaError : public Error {
 public:
  SchemaError(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

// A required value (coordinate, length, count) could not be extracted.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

class InfeasibleDesignError : public Error {
 public:
  InfeasibleDesignError(std::string message, std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

// The RL design report carries no rlspec block.
class SpecMissingError : public Error {
 public:
  using Error::Error;
};

// rlspec geometry contradicts the verified robot design.
class ConsistencyError : public Error {
 public:
  ConsistencyError(std::vector<std::string> fields);
  const std::vector<std::string>& fields() const { return fields_; }

 private:
  std::vector<std::string> fields_;
};

// Network-level failure talking to a chat-completions endpoint. Retryable.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Endpoint answered with HTTP status >= 400.
class ProviderError : public Error {
 public:
  ProviderError(int status, std::string body);
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

class FixtureMissingError : public Error {
 public:
  explicit FixtureMissingError(std::string key);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace roboforge

#endif  // ROBOFORGE_ERROR_HPP_
