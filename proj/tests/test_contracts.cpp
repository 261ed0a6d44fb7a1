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

#include <doctest.h>

#include <random>

#include "leochain/contracts.hpp"
#include "leochain/errors.hpp"
#include "oracles.hpp"

using namespace leochain;

namespace {

/// Commits `inv` on `r` as the next seq; returns the committed ops.
Transaction run(Replica& r, const ContractRegistry& reg, const ContractInvocation& inv,
                const TxId& id) {
  Transaction tx = execute_invocation(reg, inv, r.state(), id, {0, 0});
  REQUIRE(tx.status == TxStatus::kExecuted);
  tx.seq = r.next_expected_seq();
  tx.status = TxStatus::kOrdered;
  const auto out = r.accept_ordered(tx);
  REQUIRE(out.size() == 1);
  REQUIRE(out[0].committed);
  return tx;
}

int64_t balance(const Replica& r, const std::string& key) {
  return r.state().find(key)->value.at("balance").get<int64_t>();
}

}  // namespace

TEST_CASE("create writes one fresh account") {
  const auto reg = ContractRegistry::with_defaults();
  Replica r;
  for (int64_t b : {0, 100}) {
    const TxId id = "tx-create-" + std::to_string(b);
    const Transaction tx = run(r, reg, account_create(b), id);
    REQUIRE(tx.ops.size() == 1);
    CHECK(tx.ops[0].kind == OpKind::kWrite);
    CHECK(tx.ops[0].key == fresh_key_for(id));
    CHECK(tx.ops[0].value == Document{{"balance", b}});
    CHECK(tx.contract == "AccountContract");
  }
  CHECK(fresh_key_for("tx-a") != fresh_key_for("tx-b"));
  CHECK(fresh_key_for("tx-a", 0) != fresh_key_for("tx-a", 1));
  CHECK(fresh_key_for("tx-a") == fresh_key_for("tx-a"));
}

TEST_CASE("transfer ops are read from, write from, read to, write to") {
  const auto reg = ContractRegistry::with_defaults();
  Replica r;
  run(r, reg, account_create(10), "a");
  run(r, reg, account_create(0), "b");
  const std::string a = fresh_key_for("a"), b = fresh_key_for("b");
  const Transaction t = run(r, reg, account_transfer(a, b, 2), "t");
  REQUIRE(t.ops.size() == 4);
  CHECK(t.ops[0].kind == OpKind::kRead);
  CHECK(t.ops[0].key == a);
  CHECK(t.ops[0].read_version == 1);
  CHECK(t.ops[1].kind == OpKind::kWrite);
  CHECK(t.ops[1].value == Document{{"balance", 8}});
  CHECK(t.ops[2].key == b);
  CHECK(t.ops[3].value == Document{{"balance", 2}});
  CHECK(balance(r, a) == 8);
  CHECK(balance(r, b) == 2);
}

TEST_CASE("overdraft is allowed unless strict") {
  const auto reg = ContractRegistry::with_defaults();
  Replica r;
  run(r, reg, account_create(0), "a");
  run(r, reg, account_create(0), "b");
  run(r, reg, account_transfer(fresh_key_for("a"), fresh_key_for("b"), 5), "t");
  CHECK(balance(r, fresh_key_for("a")) == -5);
  CHECK(balance(r, fresh_key_for("b")) == 5);

  const auto strict = ContractRegistry::with_defaults(true);
  const Transaction tx =
      execute_invocation(strict, account_transfer(fresh_key_for("a"), fresh_key_for("b"), 1), r.state(), "s", {});
  CHECK(tx.status == TxStatus::kRejected);
}

TEST_CASE("self-transfer touches one key twice and nets to zero") {
  const auto reg = ContractRegistry::with_defaults();
  Replica r;
  run(r, reg, account_create(7), "a");
  const std::string a = fresh_key_for("a");
  const Transaction t = run(r, reg, account_transfer(a, a, 5), "t");
  REQUIRE(t.ops.size() == 4);
  CHECK(t.ops[0].key == a);
  CHECK(t.ops[2].key == a);
  CHECK(t.ops[2].read_version == 2);  // sees its own write
  CHECK(balance(r, a) == 7);
  CHECK(r.state().find(a)->version == 3);
}

TEST_CASE("missing accounts fail at execution and never reach the chain") {
  const auto reg = ContractRegistry::with_defaults();
  Replica r;
  const Transaction tx = execute_invocation(reg, account_transfer("nope", "nada", 1), r.state(), "t", {});
  CHECK(tx.status == TxStatus::kRejected);
  CHECK(tx.reason.find("nope") != std::string::npos);
  CHECK(r.chain().height() == 0);
}

TEST_CASE("invocation errors list every bad argument") {
  const auto reg = ContractRegistry::with_defaults();
  StateStore empty;
  ScratchState scratch(empty);
  CHECK_THROWS_AS(invoke_contract(reg, {"Nope", "create", Document::object()}, scratch, "x"), InvocationError);
  CHECK_THROWS_AS(invoke_contract(reg, {"AccountContract", "burn", Document::object()}, scratch, "x"),
                  InvocationError);
  CHECK_THROWS_AS(invoke_contract(reg, account_create(-1), scratch, "x"), InvocationError);
  try {
    reg.bind_arguments({"AccountContract", "transfer", Document{{"from", 3}, {"amount", "two"}, {"extra", 1}}});
    FAIL("expected InvocationError");
  } catch (const InvocationError& e) {
    const std::string what = e.what();
    CHECK(what.find("from") != std::string::npos);
    CHECK(what.find("to") != std::string::npos);
    CHECK(what.find("amount") != std::string::npos);
    CHECK(what.find("extra") != std::string::npos);
  }
  // Defaults are filled in.
  CHECK(reg.bind_arguments({"AccountContract", "create", Document::object()}) == Document{{"balance", 0}});
}

TEST_CASE("registration is idempotent per implementation") {
  auto reg = ContractRegistry::with_defaults();
  auto impl = std::make_shared<AccountContract>();
  reg.register_contract("Bank", impl);
  CHECK_NOTHROW(reg.register_contract("Bank", impl));
  CHECK_THROWS_AS(reg.register_contract("Bank", std::make_shared<AccountContract>()), InvocationError);
  CHECK(reg.find("Bank") == impl.get());
  CHECK(reg.find("Missing") == nullptr);
}

TEST_CASE("invocation documents round-trip") {
  const auto inv = account_transfer("a", "b", 3);
  CHECK(invocation_from_json(invocation_to_json(inv)) == inv);
  CHECK_THROWS_AS(invocation_from_json(Document{{"contract", 1}}), InvocationError);
  CHECK_THROWS_AS(invocation_from_json(Document::array()), InvocationError);
}

TEST_CASE("conflicting transfers from one account: exactly one commits") {
  const auto reg = ContractRegistry::with_defaults();
  Replica r;
  run(r, reg, account_create(10), "a");
  run(r, reg, account_create(0), "b");
  run(r, reg, account_create(0), "c");
  const std::string a = fresh_key_for("a");
  // Both executed against the same snapshot.
  Transaction t1 = execute_invocation(reg, account_transfer(a, fresh_key_for("b"), 4), r.state(), "t1", {});
  Transaction t2 = execute_invocation(reg, account_transfer(a, fresh_key_for("c"), 3), r.state(), "t2", {});
  t1.seq = 4;
  t2.seq = 5;
  oracle::Store serial;
  for (const auto& [k, e] : r.state().entries()) serial[k] = {e.value, e.version};
  auto as_ops = [](const Transaction& t) {
    std::vector<oracle::Op> ops;
    for (const auto& op : t.ops) ops.push_back({op.kind == OpKind::kWrite, op.key, op.value, op.read_version});
    return ops;
  };
  const bool want1 = oracle::apply_serial(serial, as_ops(t1));
  const bool want2 = oracle::apply_serial(serial, as_ops(t2));
  const auto o1 = r.accept_ordered(t1);
  const auto o2 = r.accept_ordered(t2);
  CHECK(o1[0].committed == want1);
  CHECK(o2[0].committed == want2);
  CHECK(o1[0].committed);
  CHECK_FALSE(o2[0].committed);
  CHECK(balance(r, a) == 6);
  CHECK(balance(r, fresh_key_for("c")) == 0);
}

TEST_CASE("random transfers conserve the total balance") {
  const auto reg = ContractRegistry::with_defaults();
  std::mt19937_64 rng(8);
  Replica r;
  std::vector<std::string> keys;
  int64_t created = 0;
  for (int i = 0; i < 8; ++i) {
    const int64_t b = static_cast<int64_t>(rng() % 50);
    created += b;
    const TxId id = "acct" + std::to_string(i);
    run(r, reg, account_create(b), id);
    keys.push_back(fresh_key_for(id));
  }
  for (int i = 0; i < 300; ++i) {
    const auto& from = keys[rng() % keys.size()];
    const auto& to = keys[rng() % keys.size()];
    run(r, reg, account_transfer(from, to, static_cast<int64_t>(rng() % 30)), "t" + std::to_string(i));
  }
  int64_t total = 0;
  for (const auto& k : keys) total += balance(r, k);
  CHECK(total == created);
}

TEST_CASE("a method's writes depend only on its recorded reads") {
  // Re-run the contract against a store holding only the read set: the
  // transaction must come out identical.
  const auto reg = ContractRegistry::with_defaults();
  Replica r;
  run(r, reg, account_create(10), "a");
  run(r, reg, account_create(3), "b");
  run(r, reg, account_create(99), "unrelated");
  const auto inv = account_transfer(fresh_key_for("a"), fresh_key_for("b"), 4);
  const Transaction full = execute_invocation(reg, inv, r.state(), "t", {});
  StateStore reads_only;
  for (const auto& op : full.ops)
    if (op.kind == OpKind::kRead && !reads_only.find(op.key)) reads_only.install(op.key, *r.state().find(op.key));
  const Transaction again = execute_invocation(reg, inv, reads_only, "t", {});
  CHECK(again.ops == full.ops);
}
