/* Copyright 2026 The Assure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include "assure/error.hpp"
#include "assure/kernels.hpp"
#include "assure/policy.hpp"
#include "assure/policy_analysis.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace assure;

namespace {

std::vector<std::string> ids(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("E" + std::to_string(i));
  return out;
}

std::vector<SignerSet> as_vectors(const std::vector<oracle::IdSet>& sets) {
  std::vector<SignerSet> out;
  for (const auto& s : sets) out.emplace_back(s.begin(), s.end());
  std::sort(out.begin(), out.end(), [](const SignerSet& a, const SignerSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<SignerSet> sorted(std::vector<SignerSet> v) {
  std::sort(v.begin(), v.end(), [](const SignerSet& a, const SignerSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return v;
}

}  // namespace

TEST_CASE("eval_policy examples") {
  CHECK_FALSE(eval_policy(all_of(ids(3)), {"E1", "E2"}));
  CHECK(eval_policy(out_of(2, ids(3)), {"E1", "E3"}));
  CHECK_FALSE(eval_policy(any_of(ids(3)), {}));
  CHECK_FALSE(eval_policy(out_of(1, ids(3)), {}));
  CHECK(eval_policy(any_of(ids(3)), {"E2", "X"}));
}

TEST_CASE("policy text round trip and validation") {
  const auto p = parse_policy("OR('E1', and(E2, 'E3'))");
  CHECK(to_string(p) == "OR('E1',AND('E2','E3'))");
  CHECK(parse_policy(to_string(p)) == p);
  CHECK(to_string(parse_policy("OutOf(2, 'E1','E2','E3')")) == "OutOf(2,'E1','E2','E3')");
  CHECK(policy_digest(p).size() == 64);
  CHECK_THROWS_AS(parse_policy("OutOf(4,'E1','E2','E3')"), Error);
  CHECK_THROWS_AS(parse_policy("OutOf(0,'E1')"), Error);
  CHECK_THROWS_AS(parse_policy("AND('E1')"), Error);
  CHECK_THROWS_AS(parse_policy("AND('E1','E2'"), Error);
  CHECK_THROWS_AS(parse_policy(""), Error);
}

TEST_CASE("minimal satisfying sets examples") {
  CHECK(min_satisfying_sets(all_of(ids(3))) == std::vector<SignerSet>{{"E1", "E2", "E3"}});
  CHECK(min_satisfying_sets(out_of(2, ids(3))) ==
        std::vector<SignerSet>{{"E1", "E2"}, {"E1", "E3"}, {"E2", "E3"}});
  CHECK(sorted(min_satisfying_sets(parse_policy("OR('E1',AND('E2','E3'))"))) ==
        std::vector<SignerSet>{{"E1"}, {"E2", "E3"}});
}

TEST_CASE("fraud and censorship examples") {
  const auto any3 = any_of(ids(3));
  const auto all3 = all_of(ids(3));
  FaultLabeling honest{{"E1", Fault::Honest}, {"E2", Fault::Honest}, {"E3", Fault::Honest}};
  auto with = [&](std::initializer_list<std::pair<const char*, Fault>> changes) {
    auto l = honest;
    for (auto [id, f] : changes) l[id] = f;
    return l;
  };
  CHECK(fraud_possible(any3, with({{"E2", Fault::Fraudulent}})));
  CHECK_FALSE(fraud_possible(all3, with({{"E1", Fault::Fraudulent}, {"E2", Fault::Fraudulent}})));
  CHECK_FALSE(fraud_possible(any3, honest));
  CHECK(censorship_possible(all3, with({{"E3", Fault::Censoring}})));
  CHECK_FALSE(censorship_possible(any3, with({{"E1", Fault::Censoring}, {"E2", Fault::Censoring}})));
  CHECK_FALSE(censorship_possible(all3, honest));
  CHECK_THROWS_AS(fraud_possible(any3, {{"E1", Fault::Honest}}), Error);

  CHECK(fraud_tolerance(all3) == 2);
  CHECK(fraud_tolerance(any3) == 0);
  CHECK(fraud_tolerance(out_of(2, ids(3))) == 1);
  CHECK(censorship_tolerance(all3) == 0);
  CHECK(censorship_tolerance(any3) == 2);
  CHECK(censorship_tolerance(out_of(2, ids(3))) == 1);
}

TEST_CASE("max_byzantine") {
  CHECK(max_byzantine(1) == 0);
  CHECK(max_byzantine(3) == 0);
  CHECK(max_byzantine(4) == 1);
  CHECK_THROWS_AS(max_byzantine(0), Error);
}

TEST_CASE("enumeration bound") {
  CHECK_NOTHROW(fraud_tolerance(out_of(10, ids(20))));
  try {
    min_satisfying_sets(any_of(ids(21)));
    FAIL("expected TooManyIdentities");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManyIdentities);
  }
}

TEST_CASE("property: analysis agrees with subset brute force on random policies") {
  CounterRng rng(99, 0);
  for (int round = 0; round < 300; ++round) {
    const auto p = support::random_policy(rng, 7);
    CAPTURE(to_string(p));
    CHECK(sorted(min_satisfying_sets(p)) == as_vectors(oracle::minimal_satisfying(p)));
    CHECK(sorted(min_blocking_sets(p)) == as_vectors(oracle::minimal_blocking(p)));
    CHECK(fraud_tolerance(p) == oracle::fraud_tolerance(p));
    CHECK(censorship_tolerance(p) == oracle::censorship_tolerance(p));
    CHECK(parse_policy(to_string(p)) == p);
  }
}

TEST_CASE("property: ALL and ANY semantics") {
  for (int n = 1; n <= 6; ++n) {
    const auto members = ids(n);
    const auto universe = ids(n + 1);
    const auto all = all_of(members);
    const auto any = any_of(members);
    const std::set<std::string> leaves(members.begin(), members.end());
    for (const auto& s : oracle::all_subsets({universe.begin(), universe.end()})) {
      bool superset = std::includes(s.begin(), s.end(), leaves.begin(), leaves.end());
      bool meets = std::any_of(s.begin(), s.end(), [&](const std::string& id) { return leaves.count(id) > 0; });
      CHECK(eval_policy(all, s) == superset);
      CHECK(eval_policy(any, s) == meets);
    }
  }
}

TEST_CASE("property: labelings are monotone") {
  CounterRng rng(17, 2);
  for (int round = 0; round < 200; ++round) {
    const auto p = support::random_policy(rng, 6);
    FaultLabeling l;
    for (const auto& id : identities(p)) l[id] = static_cast<Fault>(rng.below(4));
    for (const auto& id : identities(p)) {
      auto worse = l;
      if (l[id] == Fault::Honest) {
        worse[id] = Fault::Fraudulent;
        if (fraud_possible(p, l)) CHECK(fraud_possible(p, worse));
      }
      worse = l;
      worse[id] = Fault::Censoring;
      if (censorship_possible(p, l)) CHECK(censorship_possible(p, worse));
    }
  }
}

TEST_CASE("serial and OpenMP kernels agree") {
  CounterRng rng(1234, 0);
  for (int round = 0; round < 60; ++round) {
    const auto p = support::random_policy(rng, 14);
    const CompiledPolicy c(p);
    CHECK(kernels::serial::minimal_satisfying_masks(c) == kernels::omp::minimal_satisfying_masks(c));
    CHECK(kernels::serial::minimal_blocking_masks(c) == kernels::omp::minimal_blocking_masks(c));
    CHECK(kernels::serial::min_satisfying_size(c) == kernels::omp::min_satisfying_size(c));
    CHECK(kernels::serial::min_blocking_size(c) == kernels::omp::min_blocking_size(c));
  }
}

TEST_CASE("compiled policy matches the tree evaluator") {
  CounterRng rng(8, 8);
  for (int round = 0; round < 100; ++round) {
    const auto p = support::random_policy(rng, 8);
    const CompiledPolicy c(p);
    for (std::uint32_t mask = 0; mask <= c.full_mask(); ++mask) {
      const auto ids_vec = c.ids_of(mask);
      const std::set<std::string> s(ids_vec.begin(), ids_vec.end());
      CHECK(c.eval(mask) == eval_policy(p, s));
      CHECK(c.mask_of(s) == mask);
    }
  }
}
