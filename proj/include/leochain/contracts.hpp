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

// Smart contracts: a contract method runs against a scratch view of the
// state and its reads and writes become the transaction's operation list.
// Contract code runs only during local execution; validation replays the
// recorded versions, never the method body.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leochain/ledger.hpp"

namespace leochain {

struct ContractInvocation {
  std::string contract;
  std::string op;
  Document args = Document::object();

  friend bool operator==(const ContractInvocation&, const ContractInvocation&) = default;
};

Document invocation_to_json(const ContractInvocation& inv);
/// Throws InvocationError on a malformed body.
ContractInvocation invocation_from_json(const Document& doc);

/// Key for the n-th fresh key a transaction allocates. Derived from the tx id
/// so submitters can name accounts they create.
std::string fresh_key_for(const TxId& tx_id, int n = 0);

/// Handed to a method body: records reads/writes into the transaction.
class ContractContext {
 public:
  ContractContext(ScratchState& scratch, Transaction& tx) : scratch_(scratch), tx_(tx) {}

  /// Throws ExecutionError when the key does not exist.
  Document read(const std::string& key);
  void write(const std::string& key, Document value);
  std::string fresh_key();

 private:
  ScratchState& scratch_;
  Transaction& tx_;
  int fresh_count_ = 0;
};

struct ParamSpec {
  std::string name;
  enum class Type { kInteger, kString } type = Type::kString;
  Document default_value;  // null: required
  std::optional<int64_t> minimum;  // integers only
};

struct MethodSpec {
  std::string name;
  std::vector<ParamSpec> params;
};

class Contract {
 public:
  virtual ~Contract() = default;
  virtual std::vector<MethodSpec> methods() const = 0;
  /// `args` has already been checked against methods() and has defaults
  /// filled in.
  virtual void call(const std::string& op, const Document& args, ContractContext& ctx) const = 0;
};

/// Bank accounts with integer balances. `create` stores {"balance": n} under
/// a fresh key. `transfer` reads and rewrites both accounts in the order
/// from-read, from-write, to-read, to-write and does not check for overdraft
/// unless constructed in strict mode.
class AccountContract final : public Contract {
 public:
  static constexpr const char* kName = "AccountContract";

  explicit AccountContract(bool strict = false) : strict_(strict) {}

  std::vector<MethodSpec> methods() const override;
  void call(const std::string& op, const Document& args, ContractContext& ctx) const override;

 private:
  bool strict_;
};

class ContractRegistry {
 public:
  /// Idempotent for the same implementation; a different implementation
  /// under an existing name throws InvocationError.
  void register_contract(const std::string& name, std::shared_ptr<const Contract> impl);
  const Contract* find(const std::string& name) const;
  std::vector<std::string> names() const;

  /// Checks `inv` against the method signature and returns the arguments
  /// with defaults applied. Every problem is listed in the thrown
  /// InvocationError, one per line, prefixed by the argument name.
  Document bind_arguments(const ContractInvocation& inv) const;

  /// Registry with AccountContract registered.
  static ContractRegistry with_defaults(bool strict_accounts = false);

 private:
  std::map<std::string, std::shared_ptr<const Contract>> contracts_;
};

/// Runs the method against `scratch` and returns a transaction whose ops
/// record exactly what the method read (with versions) and wrote. Unknown
/// contract/method or bad arguments throw InvocationError; failures inside
/// the method throw ExecutionError.
Transaction invoke_contract(const ContractRegistry& registry, const ContractInvocation& inv,
                            ScratchState& scratch, const TxId& tx_id,
                            const GridCoord& submitter = {});

/// Local execution of an invocation against a replica's state: never throws
/// for execution failures, reporting them as a kRejected transaction.
Transaction execute_invocation(const ContractRegistry& registry, const ContractInvocation& inv,
                               const StateStore& state, const TxId& tx_id,
                               const GridCoord& submitter);

/// Helpers used by workloads and tests.
ContractInvocation account_create(int64_t balance);
ContractInvocation account_transfer(const std::string& from, const std::string& to,
                                    int64_t amount);

}  // namespace leochain
