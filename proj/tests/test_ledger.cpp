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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "leochain/digest.hpp"
#include "leochain/errors.hpp"
#include "leochain/ledger.hpp"
#include "oracles.hpp"

using namespace leochain;

namespace {

Transaction ordered(Seq seq, std::vector<Operation> ops, const std::string& id = "") {
  Transaction tx;
  tx.id = id.empty() ? "tx-" + std::to_string(seq) : id;
  tx.ops = std::move(ops);
  tx.seq = seq;
  tx.status = TxStatus::kOrdered;
  return tx;
}

std::vector<oracle::Op> to_oracle(const Transaction& tx) {
  std::vector<oracle::Op> out;
  for (const auto& op : tx.ops)
    out.push_back({op.kind == OpKind::kWrite, op.key, op.value, op.read_version});
  return out;
}

void check_same_state(const StateStore& got, const oracle::Store& want) {
  REQUIRE(got.size() == want.size());
  for (const auto& [k, e] : want) {
    const StateEntry* g = got.find(k);
    REQUIRE(g != nullptr);
    CHECK(g->value == e.value);
    CHECK(g->version == e.version);
  }
}

}  // namespace

TEST_CASE("SHA-256 known answers") {
  CHECK(Sha256::of("abc").hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(Sha256::of("").hex() == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Sha256 h;
  h.update("a").update("bc");
  CHECK(h.finish() == Sha256::of("abc"));
  const Digest d = Sha256::of("abc");
  CHECK(Digest::from_hex(d.hex()) == d);
  CHECK_THROWS(Digest::from_hex("zz"));
  CHECK(Digest::zero().is_zero());
}

TEST_CASE("block hash preimage follows the documented encoding") {
  const Blockchain chain;
  const std::string zeros(64, '0');
  const std::string genesis = R"({"contract":"","id":"genesis","ops":[],"seq":0,"submitter":[0,0]})";
  CHECK(chain.head().hash == Sha256::of("0\n" + zeros + "\n" + genesis));

  Transaction tx = ordered(1, {Operation::read("k", 1), Operation::write("k", {{"balance", 8}})}, "tx-a");
  tx.contract = "AccountContract";
  tx.submitter = {1, 20};
  const std::string enc =
      R"({"contract":"AccountContract","id":"tx-a","ops":[{"key":"k","op":"read","version":1},)"
      R"({"key":"k","op":"write","value":{"balance":8}}],"seq":1,"submitter":[1,20]})";
  CHECK(canonical_encoding(tx) == enc);
  CHECK(compute_block_hash(1, chain.head().hash, tx) ==
        Sha256::of("1\n" + chain.head().hash.hex() + "\n" + enc));
}

TEST_CASE("canonical encoding refuses floating point and round-trips") {
  Transaction tx = ordered(4, {Operation::write("k", {{"v", 1.5}})});
  CHECK_THROWS(canonical_encoding(tx));
  tx.ops = {Operation::read("a", 2), Operation::write("b", {{"x", {1, 2, 3}}, {"a", "s"}})};
  tx.submitter = {3, 9};
  const Transaction back = transaction_from_json(canonical_json(tx));
  CHECK(back.id == tx.id);
  CHECK(back.ops == tx.ops);
  CHECK(back.seq == tx.seq);
  CHECK(back.submitter == tx.submitter);
  CHECK(canonical_encoding(back) == canonical_encoding(tx));
}

TEST_CASE("local execution fills read versions and leaves state alone") {
  Replica r;
  r.accept_ordered(ordered(1, {Operation::write("k", {{"v", 1}})}));
  r.accept_ordered(ordered(2, {Operation::write("k", {{"v", 2}})}));
  r.accept_ordered(ordered(3, {Operation::write("k", {{"v", 3}})}));
  const Digest before = r.state_digest();

  Transaction tx;
  tx.id = "x";
  tx.ops = {Operation::read("k"), Operation::write("k", {{"v", 4}}), Operation::read("k")};
  const Transaction done = execute_local(tx, r.state());
  CHECK(done.status == TxStatus::kExecuted);
  CHECK(done.ops[0].read_version == 3);
  CHECK(done.ops[2].read_version == 4);
  CHECK(r.state_digest() == before);
  CHECK(r.chain().height() == 3);

  tx.ops = {Operation::read("missing")};
  const Transaction bad = execute_local(tx, r.state());
  CHECK(bad.status == TxStatus::kRejected);
  CHECK_FALSE(bad.reason.empty());
}

TEST_CASE("disjoint writes both commit; a stale read is rejected") {
  Replica r;
  auto out = r.accept_ordered(ordered(1, {Operation::write("a", 1), Operation::write("k", 0)}));
  REQUIRE(out.size() == 1);
  CHECK(out[0].committed);
  CHECK(r.accept_ordered(ordered(2, {Operation::write("b", 1)}))[0].committed);
  CHECK(r.chain().height() == 2);

  // T1 and T2 both read k at version 1; T1 is ordered first and writes it.
  const auto t1 = ordered(3, {Operation::read("k", 1), Operation::write("k", 5)});
  const auto t2 = ordered(4, {Operation::read("k", 1), Operation::write("k", 6)});
  CHECK(r.accept_ordered(t1)[0].committed);
  const auto o2 = r.accept_ordered(t2);
  CHECK_FALSE(o2[0].committed);
  CHECK(r.chain().height() == 3);
  CHECK(r.next_expected_seq() == 5);

  oracle::Store s;
  CHECK(oracle::apply_serial(s, {{true, "a", 1, {}}, {true, "k", 0, {}}}));
  CHECK(oracle::apply_serial(s, {{true, "b", 1, {}}}));
  CHECK(oracle::apply_serial(s, to_oracle(t1)));
  CHECK_FALSE(oracle::apply_serial(s, to_oracle(t2)));
  check_same_state(r.state(), s);

  CHECK(r.state().find("k")->last_block == 3);
  CHECK(r.state().find("k")->version == 2);
  const auto status = r.query_status("tx-4");
  CHECK(status.status == TxStatus::kRejected);
  CHECK(status.seq == 4);
  CHECK(r.query_status("tx-3").status == TxStatus::kCommitted);
  CHECK(r.query_status("tx-3").height == 3);
  CHECK(r.query_status("nope").status == TxStatus::kUnknown);
}

TEST_CASE("out-of-order arrivals are buffered and drained in seq order") {
  Replica r;
  const auto a = ordered(1, {Operation::write("k", 1)});
  const auto b = ordered(2, {Operation::read("k", 1), Operation::write("k", 2)});
  const auto c = ordered(3, {Operation::read("k", 2), Operation::write("k", 3)});
  CHECK(r.accept_ordered(c).empty());
  CHECK(r.accept_ordered(b).empty());
  CHECK(r.buffered() == 2);
  const auto out = r.accept_ordered(a);
  REQUIRE(out.size() == 3);
  CHECK(out[0].seq == 1);
  CHECK(out[1].seq == 2);
  CHECK(out[2].seq == 3);
  CHECK(std::all_of(out.begin(), out.end(), [](const auto& o) { return o.committed; }));
  CHECK(r.state().find("k")->value == 3);

  // A duplicate of a consumed seq is dropped; a conflicting one is fatal.
  CHECK(r.accept_ordered(b).empty());
  CHECK(r.chain().height() == 3);
  auto forged = b;
  forged.ops[1] = Operation::write("k", 99);
  CHECK_THROWS_AS(r.accept_ordered(forged), ProtocolViolation);
  auto forged_buffer = ordered(9, {Operation::write("z", 1)});
  r.accept_ordered(forged_buffer);
  forged_buffer.ops[0] = Operation::write("z", 2);
  CHECK_THROWS_AS(r.accept_ordered(forged_buffer), ProtocolViolation);
}

TEST_CASE("validate_and_commit requires the expected seq") {
  Replica r;
  CHECK_THROWS(r.validate_and_commit(ordered(2, {Operation::write("k", 1)})));
  Transaction unordered;
  unordered.id = "u";
  unordered.ops = {Operation::write("k", 1)};
  CHECK_THROWS(r.validate_and_commit(unordered));
}

TEST_CASE("any arrival permutation of 50 ordered txs matches in-order application") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 20; ++round) {
    // Build an ordered stream over 6 keys where reads record the version a
    // serial run would see, except for some deliberately stale ones.
    std::vector<Transaction> txs;
    oracle::Store serial;
    std::map<std::string, int64_t> version;
    for (Seq seq = 1; seq <= 50; ++seq) {
      std::vector<Operation> ops;
      const int nops = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < nops; ++i) {
        const std::string key = "k" + std::to_string(rng() % 6);
        if (version.count(key) && rng() % 2) {
          const int64_t v = version[key] - (rng() % 5 == 0 ? 1 : 0);
          ops.push_back(Operation::read(key, v));
        } else {
          ops.push_back(Operation::write(key, static_cast<int64_t>(rng() % 1000)));
        }
      }
      txs.push_back(ordered(seq, ops));
      oracle::apply_serial(serial, to_oracle(txs.back()));
      version.clear();
      for (const auto& [k, e] : serial) version[k] = e.version;
    }
    Replica in_order;
    for (const auto& t : txs) in_order.accept_ordered(t);
    check_same_state(in_order.state(), serial);

    auto shuffled = txs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Replica r;
    for (const auto& t : shuffled) r.accept_ordered(t);
    CHECK(r.buffered() == 0);
    CHECK(r.state_digest() == in_order.state_digest());
    CHECK(r.chain().head().hash == in_order.chain().head().hash);
    CHECK(r.committed_log() == in_order.committed_log());
  }
}

TEST_CASE("chain verification catches every kind of tampering") {
  Replica r;
  for (Seq s = 1; s <= 5; ++s) r.accept_ordered(ordered(s, {Operation::write("k" + std::to_string(s), s)}));
  CHECK(r.chain().verifies());
  CHECK_NOTHROW(r.chain().verify());

  auto tamper = [&](auto&& mutate) {
    Replica copy = r;
    mutate(copy.mutable_chain_for_testing().mutable_blocks_for_testing());
    CHECK_FALSE(copy.chain().verifies());
    CHECK_THROWS_AS(copy.chain().verify(), CorruptionError);
  };
  tamper([](std::vector<Block>& b) { b[3].tx.ops[0].value = 42; });
  tamper([](std::vector<Block>& b) { b[2].prev_hash = Digest::zero(); });
  tamper([](std::vector<Block>& b) { b[4].height = 7; });
  tamper([](std::vector<Block>& b) { std::swap(b[1], b[2]); });
  tamper([](std::vector<Block>& b) { b[5].hash.bytes[0] ^= 1; });
  tamper([](std::vector<Block>& b) { b[0].tx.id = "other"; });
}

TEST_CASE("extend rejects blocks that do not continue the head") {
  Replica source;
  for (Seq s = 1; s <= 4; ++s) source.accept_ordered(ordered(s, {Operation::write("k", s)}));
  Blockchain c;
  auto blocks = source.chain().blocks_after(0);
  CHECK(blocks.size() == 4);
  auto bad = blocks;
  bad[1].tx.id = "evil";
  CHECK_THROWS_AS(c.extend(bad), CorruptionError);
  CHECK(c.height() == 0);
  CHECK_THROWS_AS(c.extend(std::vector<Block>(blocks.begin() + 1, blocks.end())), CorruptionError);
  c.extend(blocks);
  CHECK(c.head().hash == source.chain().head().hash);
}

TEST_CASE("versions climb by one per committed write; last_block tracks the writer") {
  Replica r;
  for (Seq s = 1; s <= 10; ++s) {
    r.accept_ordered(ordered(s, {Operation::write("k", s)}));
    CHECK(r.state().find("k")->version == s);
    CHECK(r.state().find("k")->last_block == r.chain().height());
  }
}

TEST_CASE("state digest depends on keys, versions and values only") {
  StateStore a, b;
  a.apply_write("x", 1, 1);
  a.apply_write("y", 2, 2);
  b.apply_write("y", 2, 5);
  b.apply_write("x", 1, 9);
  CHECK(a.digest() == b.digest());
  b.apply_write("x", 1, 10);
  CHECK(a.digest() != b.digest());
  CHECK(state_from_json(state_to_json(a)) == a);
}

TEST_CASE("quorum reads pick the highest version and flag divergence") {
  std::vector<Replica> rs(5);
  for (auto& r : rs) r.accept_ordered(ordered(1, {Operation::write("k", 1)}));
  // A second write has reached w = 3 of the n = 5 replicas.
  const auto second = ordered(2, {Operation::read("k", 1), Operation::write("k", 2)});
  for (int i = 2; i < 5; ++i) rs[i].accept_ordered(second);
  const size_t n = rs.size(), w = 3;
  // Reading from any r replicas with w + r > n must see version 2, whichever
  // subset is chosen. Enumerate all subsets.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<const Replica*> chosen;
    for (size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) chosen.push_back(&rs[i]);
    const auto got = quorum_read("k", chosen);
    REQUIRE(got.entry.has_value());
    CHECK(got.replicas_read == chosen.size());
    if (w + chosen.size() > n) CHECK(got.entry->version == 2);
    CHECK(got.entry->version >= 1);
  }
  std::vector<const Replica*> all;
  for (auto& r : rs) all.push_back(&r);
  CHECK_FALSE(quorum_read("absent", all).entry.has_value());

  Replica odd;
  odd.accept_ordered(ordered(1, {Operation::write("k", 111)}));
  std::vector<const Replica*> split{&rs[0], &odd};
  CHECK_THROWS_AS(quorum_read("k", split), InvariantViolation);
}
