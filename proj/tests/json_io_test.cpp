// Copyright 2026 The bargain Authors
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

#include "bargain/json_io.hpp"

#include <gtest/gtest.h>

#include <memory>

#include "test_support.hpp"

namespace bargain {
namespace {

const MarketSpec kThree({0.9, 0.8, 0.7}, {0.6, 0.5, 0.4});

TEST(FormatReal, FifteenSignificantDigits) {
  EXPECT_EQ(format_real(2.5), "2.5");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(format_real(1.0 / 3.0, 4), "0.3333");
}

TEST(ParseReal, RejectsNonStrings) {
  EXPECT_EQ(parse_real(Json("0.25"), "x"), 0.25);
  EXPECT_THROW(parse_real(Json(0.25), "x"), ConfigError);
  EXPECT_THROW(parse_real(Json("0.25abc"), "x"), ConfigError);
  EXPECT_THROW(parse_real(Json(""), "x"), ConfigError);
}

TEST(ParseAgent, RoundTrips) {
  EXPECT_EQ(parse_agent(Json("S1")), (AgentId{Side::kSeller, 0}));
  EXPECT_EQ(parse_agent(Json("B12")), (AgentId{Side::kBuyer, 11}));
  EXPECT_THROW(parse_agent(Json("X1")), ConfigError);
  EXPECT_THROW(parse_agent(Json("S0")), ConfigError);
  EXPECT_THROW(parse_agent(Json("S1x")), ConfigError);
}

TEST(TraceJson, KeysAreSortedAndRealsAreStrings) {
  const Trace tr = simulate(kThree, StrategyTable(6, std::make_shared<EquilibriumStrategy>(kThree)), 10, 1e-6, 5);
  const std::string text = dump_canonical(to_json(tr));
  EXPECT_LT(text.find("\"rounds\""), text.find("\"schema\""));
  EXPECT_LT(text.find("\"schema\""), text.find("\"seed\""));
  EXPECT_NE(text.find("\"price\": \"2.5\""), std::string::npos);
  EXPECT_NE(text.find("\"terminated_reason\": \"all-matched\""), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(TraceJson, RoundTripIsByteIdentical) {
  testing::Gen g(31);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = g.index(1, 4);
    const MarketSpec spec = g.spec(n);
    StrategyTable t;
    for (std::size_t a = 0; a < 2 * n; ++a) {
      switch (g.index(0, 3)) {
        case 0: t.push_back(std::make_shared<EquilibriumStrategy>(spec)); break;
        case 1: t.push_back(std::make_shared<FixedPriceStrategy>(Price(g.uniform(0.2, 3.0)))); break;
        case 2: t.push_back(std::make_shared<GreedyConcederStrategy>(Price(g.uniform(0.2, 3.0)), 1.0, 0.5)); break;
        default: t.push_back(std::make_shared<RandomStrategy>(0.2, 3.0));
      }
    }
    const Trace tr = simulate(spec, t, 30, 1e-6, static_cast<std::uint64_t>(k));
    const std::string once = dump_canonical(to_json(tr));
    const Trace back = trace_from_json(Json::parse(once));
    EXPECT_EQ(dump_canonical(to_json(back)), once);
    EXPECT_EQ(back.agreements().size(), tr.agreements().size());
    EXPECT_EQ(back.terminated_reason, tr.terminated_reason);
  }
}

TEST(TraceJson, MalformedInputIsConfigError) {
  const Trace tr = simulate(kThree, StrategyTable(6, std::make_shared<EquilibriumStrategy>(kThree)), 10, 1e-6, 5);
  const Json good = to_json(tr);
  EXPECT_NO_THROW(trace_from_json(good));

  const auto broken = [&](auto edit) {
    Json j = good;
    edit(j);
    return j;
  };
  EXPECT_THROW(trace_from_json(Json::array()), ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["schema"] = "other/1"; })), ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j.erase("rounds"); })), ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["seed"] = "seven"; })), ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["spec"]["sellers"][0] = "1.5"; })), ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["spec"]["buyers"].push_back("0.5"); })), ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["terminated_reason"] = "bored"; })), ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["rounds"][0]["agreements"][0]["price"] = "-1"; })),
               ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["rounds"][0]["agreements"][1]["buyer"] = "B1"; })),
               ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["rounds"][0]["agreements"][0]["seller"] = "S9"; })),
               ConfigError);
  EXPECT_THROW(trace_from_json(broken([](Json& j) { j["unmatched"].push_back("S1"); })), ConfigError);
}

TEST(ReportJson, DeviationFields) {
  Deviation d{DeviationKind::kUnilateral, {AgentId{Side::kBuyer, 1}}, 0.25, 0, {0.125}, AgentId{Side::kSeller, 0}};
  const Json j = to_json(d);
  EXPECT_EQ(j["kind"], "unilateral");
  EXPECT_EQ(j["participants"][0], "B2");
  EXPECT_EQ(j["counterparty"], "S1");
  EXPECT_EQ(j["new_split"], "0.25");
  EXPECT_EQ(j["payoff_gains"][0], "0.125");

  const Json r = price_report(2.5, 2.5, std::nullopt);
  EXPECT_EQ(r["schema"], kReportSchema);
  EXPECT_TRUE(r["deviations"].empty());
}

}  // namespace
}  // namespace bargain
