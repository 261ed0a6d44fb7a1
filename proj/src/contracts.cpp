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

#include "leochain/contracts.hpp"

#include <set>

#include "leochain/errors.hpp"

namespace leochain {

Document invocation_to_json(const ContractInvocation& inv) {
  return {{"contract", inv.contract}, {"op", inv.op}, {"args", inv.args}};
}

ContractInvocation invocation_from_json(const Document& doc) {
  std::vector<std::string> problems;
  if (!doc.is_object()) throw InvocationError("invocation must be an object");
  ContractInvocation inv;
  if (!doc.contains("contract") || !doc["contract"].is_string())
    problems.push_back("contract: required string");
  else
    inv.contract = doc["contract"].get<std::string>();
  if (!doc.contains("op") || !doc["op"].is_string())
    problems.push_back("op: required string");
  else
    inv.op = doc["op"].get<std::string>();
  if (doc.contains("args")) {
    if (!doc["args"].is_object())
      problems.push_back("args: must be an object");
    else
      inv.args = doc["args"];
  }
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "\n") + p;
    throw InvocationError(msg);
  }
  return inv;
}

std::string fresh_key_for(const TxId& tx_id, int n) {
  std::string base = tx_id.rfind("tx-", 0) == 0 ? tx_id.substr(3) : tx_id;
  return "acct-" + base + (n == 0 ? "" : "-" + std::to_string(n));
}

Document ContractContext::read(const std::string& key) {
  auto view = scratch_.lookup(key);
  if (!view) throw ExecutionError("read of missing key '" + key + "'");
  tx_.ops.push_back(Operation::read(key, view->version));
  return view->value;
}

void ContractContext::write(const std::string& key, Document value) {
  scratch_.write(key, value);
  tx_.ops.push_back(Operation::write(key, std::move(value)));
}

std::string ContractContext::fresh_key() { return fresh_key_for(tx_.id, fresh_count_++); }

// --- AccountContract ----------------------------------------------------------

std::vector<MethodSpec> AccountContract::methods() const {
  using T = ParamSpec::Type;
  return {
      {"create", {{"balance", T::kInteger, 0, int64_t{0}}}},
      {"transfer",
       {{"from_account", T::kString, nullptr, std::nullopt},
        {"to_account", T::kString, nullptr, std::nullopt},
        {"balance", T::kInteger, 0, std::nullopt}}},
  };
}

void AccountContract::call(const std::string& op, const Document& args,
                           ContractContext& ctx) const {
  if (op == "create") {
    const int64_t balance = args.at("balance").get<int64_t>();
    if (balance < 0) throw InvocationError("balance: initial balance must be >= 0");
    ctx.write(ctx.fresh_key(), {{"balance", balance}});
    return;
  }
  if (op == "transfer") {
    const auto from = args.at("from_account").get<std::string>();
    const auto to = args.at("to_account").get<std::string>();
    const int64_t amount = args.at("balance").get<int64_t>();

    Document value = ctx.read(from);
    const int64_t debited = value.at("balance").get<int64_t>() - amount;
    if (strict_ && debited < 0) throw ExecutionError("insufficient balance in '" + from + "'");
    value["balance"] = debited;
    ctx.write(from, value);

    value = ctx.read(to);
    value["balance"] = value.at("balance").get<int64_t>() + amount;
    ctx.write(to, value);
    return;
  }
  throw InvocationError("unknown method '" + op + "'");
}

// --- Registry -----------------------------------------------------------------

void ContractRegistry::register_contract(const std::string& name,
                                         std::shared_ptr<const Contract> impl) {
  if (!impl) throw InvocationError("null contract implementation for '" + name + "'");
  auto [it, inserted] = contracts_.emplace(name, impl);
  if (!inserted && it->second != impl)
    throw InvocationError("contract '" + name + "' already registered with another implementation");
}

const Contract* ContractRegistry::find(const std::string& name) const {
  auto it = contracts_.find(name);
  return it == contracts_.end() ? nullptr : it->second.get();
}

std::vector<std::string> ContractRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : contracts_) out.push_back(n);
  return out;
}

Document ContractRegistry::bind_arguments(const ContractInvocation& inv) const {
  const Contract* c = find(inv.contract);
  if (!c) throw InvocationError("contract: unknown contract '" + inv.contract + "'");
  std::optional<MethodSpec> method;
  for (auto& m : c->methods())
    if (m.name == inv.op) method = m;
  if (!method) throw InvocationError("op: unknown method '" + inv.op + "' on " + inv.contract);

  std::vector<std::string> problems;
  Document bound = Document::object();
  std::set<std::string> declared;
  for (const auto& p : method->params) {
    declared.insert(p.name);
    if (!inv.args.contains(p.name)) {
      if (p.default_value.is_null())
        problems.push_back(p.name + ": required");
      else
        bound[p.name] = p.default_value;
      continue;
    }
    const Document& v = inv.args[p.name];
    const bool ok = p.type == ParamSpec::Type::kInteger ? v.is_number_integer() : v.is_string();
    if (!ok)
      problems.push_back(p.name + (p.type == ParamSpec::Type::kInteger ? ": must be an integer"
                                                                       : ": must be a string"));
    else if (p.minimum && v.get<int64_t>() < *p.minimum)
      problems.push_back(p.name + ": must be >= " + std::to_string(*p.minimum));
    else
      bound[p.name] = v;
  }
  for (const auto& [k, _] : inv.args.items())
    if (!declared.count(k)) problems.push_back(k + ": unexpected argument");
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "\n") + p;
    throw InvocationError(msg);
  }
  return bound;
}

ContractRegistry ContractRegistry::with_defaults(bool strict_accounts) {
  ContractRegistry r;
  r.register_contract(AccountContract::kName, std::make_shared<AccountContract>(strict_accounts));
  return r;
}

Transaction invoke_contract(const ContractRegistry& registry, const ContractInvocation& inv,
                            ScratchState& scratch, const TxId& tx_id, const GridCoord& submitter) {
  const Document args = registry.bind_arguments(inv);
  Transaction tx;
  tx.id = tx_id;
  tx.contract = inv.contract;
  tx.submitter = submitter;
  ContractContext ctx(scratch, tx);
  registry.find(inv.contract)->call(inv.op, args, ctx);
  tx.status = TxStatus::kExecuted;
  return tx;
}

Transaction execute_invocation(const ContractRegistry& registry, const ContractInvocation& inv,
                               const StateStore& state, const TxId& tx_id,
                               const GridCoord& submitter) {
  ScratchState scratch(state);
  try {
    return invoke_contract(registry, inv, scratch, tx_id, submitter);
  } catch (const Error& e) {
    Transaction tx;
    tx.id = tx_id;
    tx.contract = inv.contract;
    tx.submitter = submitter;
    tx.status = TxStatus::kRejected;
    tx.reason = e.what();
    return tx;
  } catch (const nlohmann::json::exception& e) {
    Transaction tx;
    tx.id = tx_id;
    tx.contract = inv.contract;
    tx.submitter = submitter;
    tx.status = TxStatus::kRejected;
    tx.reason = std::string("contract error: ") + e.what();
    return tx;
  }
}

ContractInvocation account_create(int64_t balance) {
  return {AccountContract::kName, "create", {{"balance", balance}}};
}

ContractInvocation account_transfer(const std::string& from, const std::string& to,
                                    int64_t amount) {
  return {AccountContract::kName,
          "transfer",
          {{"from_account", from}, {"to_account", to}, {"balance", amount}}};
}

}  // namespace leochain
