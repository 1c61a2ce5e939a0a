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

#include <filesystem>

#include "assure/campaign.hpp"
#include "assure/digest.hpp"
#include "assure/error.hpp"
#include "oracles.hpp"

using namespace assure;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ConfigInvalid;
}

}  // namespace

TEST_CASE("all-zero probabilities give zero rates") {
  const auto p = parse_policy("OutOf(2,'E1','E2','E3')");
  const auto r = monte_carlo_campaign(default_campaign_scenario(p), {}, 200, 1);
  CHECK(r.fraud_successes == 0);
  CHECK(r.censorship_successes == 0);
  CHECK(r.fraud_success_rate == 0.0);
  CHECK(r.fraud_ci95_halfwidth == 0.0);
}

TEST_CASE("certain fraud under ANY-of-3") {
  const auto p = parse_policy("OR('E1','E2','E3')");
  const auto r = monte_carlo_campaign(default_campaign_scenario(p), {{Fault::Fraudulent, 1.0}}, 100, 9);
  CHECK(r.fraud_success_rate == 1.0);
  CHECK(r.censorship_success_rate == 1.0);
}

TEST_CASE("certain censorship under ALL-of-3 with one censor") {
  const auto p = parse_policy("AND('E1','E2','E3')");
  const auto r = monte_carlo_campaign(default_campaign_scenario(p), {{Fault::Censoring, 1.0}}, 50, 2);
  CHECK(r.censorship_success_rate == 1.0);
  CHECK(r.fraud_success_rate == 0.0);
}

TEST_CASE("probabilities are validated") {
  const auto base = default_campaign_scenario(parse_policy("OR('E1','E2')"));
  CHECK(code_of([&] { monte_carlo_campaign(base, {{Fault::Fraudulent, 1.5}}, 10, 0); }) == ErrorCode::BadProbability);
  CHECK(code_of([&] { monte_carlo_campaign(base, {{Fault::Fraudulent, -0.1}}, 10, 0); }) == ErrorCode::BadProbability);
  CHECK(code_of([&] {
          monte_carlo_campaign(base, {{Fault::Fraudulent, 0.6}, {Fault::Crashed, 0.6}}, 10, 0);
        }) == ErrorCode::BadProbability);
  CHECK(code_of([&] { monte_carlo_campaign(base, {{Fault::Honest, 0.5}}, 10, 0); }) == ErrorCode::BadProbability);
  CHECK(code_of([&] { monte_carlo_campaign(base, {}, 0, 0); }) == ErrorCode::ConfigInvalid);
}

TEST_CASE("parallel and serial campaigns agree exactly") {
  const auto p = parse_policy("OutOf(2,'E1','E2','E3','E4')");
  const FaultProbabilities probs{{Fault::Fraudulent, 0.2}, {Fault::Censoring, 0.1}, {Fault::Crashed, 0.1}};
  const auto base = default_campaign_scenario(p);
  const auto a = monte_carlo_campaign(base, probs, 2000, 77);
  const auto b = monte_carlo_campaign_serial(base, probs, 2000, 77);
  CHECK(a == b);
  CHECK(to_text(a) == to_text(b));
  CHECK(a.fraud_successes <= a.n_runs);
  CHECK(a.fraud_success_rate == static_cast<double>(a.fraud_successes) / static_cast<double>(a.n_runs));
}

TEST_CASE("labeling draws are reproducible and follow the probabilities") {
  const std::set<std::string> ids{"E1", "E2", "E3"};
  const FaultProbabilities probs{{Fault::Fraudulent, 0.25}, {Fault::Censoring, 0.25}, {Fault::Crashed, 0.25}};
  std::map<Fault, int> tally;
  for (std::uint64_t run = 0; run < 4000; ++run) {
    const auto l = draw_labeling(ids, probs, 5, run);
    CHECK(l == draw_labeling(ids, probs, 5, run));
    for (const auto& [id, f] : l) ++tally[f];
  }
  for (auto f : {Fault::Honest, Fault::Fraudulent, Fault::Censoring, Fault::Crashed}) {
    CHECK(std::abs(tally[f] / 12000.0 - 0.25) < 0.02);
  }
}

TEST_CASE("campaign rate sits near the binomial tail") {
  const auto p = parse_policy("OutOf(2,'E1','E2','E3')");
  const auto r = monte_carlo_campaign(default_campaign_scenario(p), {{Fault::Fraudulent, 0.3}}, 10000, 4);
  // Four half-widths leave room for an unlucky seed while still catching bias.
  CHECK(std::abs(r.fraud_success_rate - oracle::binomial_tail(3, 2, 0.3)) < 4 * r.fraud_ci95_halfwidth);
}

TEST_CASE("evidence reports") {
  const auto dir = std::filesystem::temp_directory_path() / "assure_campaign_test";
  std::filesystem::create_directories(dir);
  const auto p = parse_policy("OutOf(2,'E1','E2','E3')");
  const auto r = monte_carlo_campaign(default_campaign_scenario(p), {{Fault::Fraudulent, 0.1}}, 300, 3);
  const auto path = (dir / "report.json").string();
  const auto first = emit_evidence_report(r, path);
  const auto bytes = read_file(path);
  CHECK(first.bytes == bytes.size());
  CHECK(first.digest == sha256_hex(bytes));
  const auto second = emit_evidence_report(r, path);
  CHECK(second.digest == first.digest);
  CHECK(read_file(path) == bytes);
  CHECK(bytes.find("\"policy_digest\": \"" + policy_digest(p) + "\"") != std::string::npos);
  CHECK(bytes.find("\"tool_version\"") != std::string::npos);

  const auto t = emit_evidence_report(analyze_tolerance(p), (dir / "tolerance.json").string());
  CHECK(t.digest.size() == 64);
  CHECK(code_of([&] { emit_evidence_report(r, (dir / "missing" / "x.json").string()); }) == ErrorCode::IoFailure);
  std::filesystem::remove_all(dir);
}
