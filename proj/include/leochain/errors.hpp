// Copyright 2026 The Leochain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace leochain {

/// Broad failure classes. The numeric values are the C API status codes.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kConfig = 2,
  kInvariant = 3,
  kNotFound = 4,
  kProtocol = 5,
  kExecution = 6,
  kCorruption = 7,
  kIo = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Coordinate or index outside the owning topology.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

/// Carries every problem found while validating a configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems)
      : Error(ErrorCode::kConfig, join(problems)), problems_(std::move(problems)) {}
  explicit ConfigError(const std::string& problem)
      : ConfigError(std::vector<std::string>{problem}) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "invalid configuration";
    for (const auto& p : problems) {
      out += "\n  - ";
      out += p;
    }
    return out;
  }
  std::vector<std::string> problems_;
};

/// A node or the transport broke a protocol contract (e.g. a multi-hop send).
class ProtocolViolation : public Error {
 public:
  explicit ProtocolViolation(const std::string& what)
      : Error(ErrorCode::kProtocol, what) {}
};

/// Contract invocation could not be turned into a transaction.
class InvocationError : public Error {
 public:
  explicit InvocationError(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

/// Transaction execution failed against the local state.
class ExecutionError : public Error {
 public:
  explicit ExecutionError(const std::string& what)
      : Error(ErrorCode::kExecution, what) {}
};

/// Replica chain no longer verifies.
class CorruptionError : public Error {
 public:
  explicit CorruptionError(const std::string& what)
      : Error(ErrorCode::kCorruption, what) {}
};

/// A runtime invariant (convergence, single leader, livelock bound) failed.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what)
      : Error(ErrorCode::kInvariant, what) {}
};

}  // namespace leochain
