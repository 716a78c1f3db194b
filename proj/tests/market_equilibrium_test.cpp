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

#include "bargain/market_equilibrium.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_support.hpp"

namespace bargain {
namespace {

using testing::D;

const MarketSpec kTwoByTwo({0.6, 0.8}, {0.5, 0.7});
const MarketSpec kThree({0.9, 0.8, 0.7}, {0.6, 0.5, 0.4});

TEST(MarketSpec, Validation) {
  EXPECT_THROW(MarketSpec({}, {}), ConfigError);
  EXPECT_THROW(MarketSpec({0.5}, {0.5, 0.5}), ConfigError);
  EXPECT_THROW(MarketSpec({1.0}, {0.5}), ConfigError);
  EXPECT_THROW(MarketSpec({0.5}, {0.0}), ConfigError);
  try {
    MarketSpec({1.0}, {0.5});
  } catch (const ConfigError& e) {
    EXPECT_STREQ(e.what(), "discount factor out of (0,1)");
  }
}

TEST(ContinuationValue, NoDelayIsIdentity) {
  EXPECT_EQ(continuation_value(kTwoByTwo, Side::kSeller, 0.37, 0), 0.37);
  EXPECT_EQ(continuation_value(kTwoByTwo, Side::kBuyer, 0.37, 0), 0.37);
}

TEST(ContinuationValue, MeanOfDiscountPowers) {
  EXPECT_NEAR(continuation_value(kTwoByTwo, Side::kSeller, 1.0, 1), 0.7, 1e-15);
  EXPECT_NEAR(continuation_value(kTwoByTwo, Side::kBuyer, 0.5, 2), 0.185, 1e-15);
  EXPECT_EQ(continuation_value(kTwoByTwo, Side::kSeller, 0.0, 3), 0.0);
}

TEST(ContinuationValue, Errors) {
  EXPECT_THROW(continuation_value(kThree, Side::kSeller, 0.5, 1), DimensionError);
  EXPECT_THROW(continuation_value(kTwoByTwo, Side::kSeller, 1.5, 1), PreconditionViolation);
}

TEST(PairEquilibrium, SymmetricReducesToRubinstein) {
  for (double d : {0.1, 0.5, 0.9}) {
    const MarketSpec spec({d, d}, {d, d});
    const PairEquilibrium pe = pair_equilibrium_2x2(spec);
    EXPECT_NEAR(pe.x_star, 1.0 / (1.0 + d), 1e-12);
    EXPECT_NEAR(pe.x_star, rubinstein_split(D(d), D(d)).x, 1e-12);
  }
}

// Fixed-point iteration x <- 1 - v_b(1 - v_s(x, 1), 1); a contraction with
// factor mean(ds) * mean(db) < 1.
double continuation_fixed_point(const MarketSpec& spec) {
  double x = 0.5;
  for (int k = 0; k < 10000; ++k) {
    const double next =
        1.0 - continuation_value(spec, Side::kBuyer, 1.0 - continuation_value(spec, Side::kSeller, x, 1), 1);
    if (std::abs(next - x) < 1e-16) return next;
    x = next;
  }
  return x;
}

TEST(PairEquilibrium, MatchesContinuationFixedPoint) {
  const PairEquilibrium pe = pair_equilibrium_2x2(kTwoByTwo);
  const double oracle = continuation_fixed_point(kTwoByTwo);
  EXPECT_NEAR(oracle, 1.6 / 2.32, 1e-10);
  EXPECT_NEAR(pe.x_star, oracle, 1e-10);
  EXPECT_NEAR(pe.x_star, 1.6 / 2.32, 1e-15);
  EXPECT_NEAR(pe.y_star, 1.0 - pe.x_star, 1e-12);
}

TEST(PairEquilibrium, ResidualOfFixedPointEquation) {
  testing::Gen g(21);
  for (int k = 0; k < 1000; ++k) {
    const MarketSpec spec = g.spec(2);
    const double x = pair_equilibrium_2x2(spec).x_star;
    const double rhs =
        1.0 - continuation_value(spec, Side::kBuyer, 1.0 - continuation_value(spec, Side::kSeller, x, 1), 1);
    EXPECT_LT(std::abs(x - rhs), 1e-12);
  }
}

TEST(PairEquilibrium, DimensionError) {
  EXPECT_THROW(pair_equilibrium_2x2(kThree), DimensionError);
  EXPECT_THROW(bid_stage_2x2(kThree), DimensionError);
  EXPECT_THROW(independent_pairings_2x2(kThree), DimensionError);
}

TEST(BidStage2x2, PriceExample) {
  const Equilibrium eq = bid_stage_2x2(kTwoByTwo);
  EXPECT_NEAR(eq.price.value(), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(eq.seller_share, 0.8 / 1.4, 1e-15);
  EXPECT_NEAR(eq.buyer_share, 0.6 / 1.4, 1e-15);
}

TEST(BidStage2x2, AllEqualIsHalf) {
  const Equilibrium eq = bid_stage_2x2(MarketSpec({0.3, 0.3}, {0.3, 0.3}));
  EXPECT_EQ(eq.price.value(), 1.0);
  EXPECT_EQ(eq.seller_share, 0.5);
  EXPECT_EQ(eq.buyer_share, 0.5);
}

TEST(BidStage2x2, SwappingSidesInvertsPrice) {
  testing::Gen g(8);
  for (int k = 0; k < 500; ++k) {
    const MarketSpec spec = g.spec(2);
    const MarketSpec swapped(spec.buyers(), spec.sellers());
    EXPECT_NEAR(bid_stage_2x2(spec).price.value() * bid_stage_2x2(swapped).price.value(), 1.0, 1e-12);
  }
}

TEST(BidStage2x2, BranchesAgreeWithEquilibrium) {
  testing::Gen g(9);
  for (int k = 0; k < 1000; ++k) {
    const MarketSpec spec = g.spec(2);
    const BidBranches br = bid_stage_branches_2x2(spec);
    EXPECT_NEAR(br.accept_branch, br.reject_branch, 1e-12);
    EXPECT_NEAR(br.accept_branch, bid_stage_2x2(spec).seller_share, 1e-12);
    EXPECT_GE(br.bid_w, 0.0);
    EXPECT_LE(br.bid_w, 1.0);
  }
}

TEST(NPairEquilibrium, ThreeByThreeExample) {
  const Equilibrium eq = n_pair_equilibrium(kThree);
  EXPECT_NEAR(eq.price.value(), 2.5, 1e-14);
  EXPECT_NEAR(eq.seller_share, 1.5 / 2.1, 1e-15);
  EXPECT_NEAR(eq.buyer_share, 0.6 / 2.1, 1e-15);
  EXPECT_NEAR(eq.avg_seller_delta, 0.8, 1e-15);
  EXPECT_NEAR(eq.avg_buyer_delta, 0.5, 1e-15);
  EXPECT_NEAR(price_two_player(D(0.8), D(0.5)).value(), 2.5, 1e-14);
}

TEST(NPairEquilibrium, HomogeneousReducesToTwoPlayer) {
  const MarketSpec spec({0.7, 0.7, 0.7, 0.7}, {0.4, 0.4, 0.4, 0.4});
  EXPECT_NEAR(n_pair_equilibrium(spec).price.value(), 0.6 / 0.3, 1e-12);
}

TEST(NPairEquilibrium, Invariants) {
  testing::Gen g(1234);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = g.index(1, 5);
    const MarketSpec spec = g.spec(n);
    const Equilibrium eq = n_pair_equilibrium(spec);
    EXPECT_NEAR(eq.seller_share + eq.buyer_share, 1.0, 1e-12);
    EXPECT_NEAR(eq.price.value(), eq.seller_share / eq.buyer_share, 1e-12 * eq.price.value());
    const double two = price_two_player(D(eq.avg_seller_delta), D(eq.avg_buyer_delta)).value();
    EXPECT_NEAR(eq.price.value(), two, 1e-12 * std::max(1.0, two));
  }
}

TEST(NPairEquilibrium, PermutationInvariant) {
  testing::Gen g(77);
  for (int k = 0; k < 200; ++k) {
    const MarketSpec spec = g.spec(g.index(2, 5));
    const Equilibrium base = n_pair_equilibrium(spec);
    std::vector<double> s = spec.sellers(), b = spec.buyers();
    std::shuffle(s.begin(), s.end(), g.engine());
    std::shuffle(b.begin(), b.end(), g.engine());
    const Equilibrium perm = n_pair_equilibrium(MarketSpec(s, b));
    EXPECT_NEAR(perm.price.value(), base.price.value(), 1e-12 * base.price.value());
    EXPECT_NEAR(perm.seller_share, base.seller_share, 1e-12);
  }
}

TEST(NPairEquilibrium, MonotoneInEachFactor) {
  testing::Gen g(99);
  const double h = 1e-4;
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = g.index(1, 5);
    const MarketSpec spec = g.spec(n, 0.01, 0.98);
    const double p = n_pair_equilibrium(spec).price.value();
    const std::size_t i = g.index(0, n - 1);
    std::vector<double> s = spec.sellers(), b = spec.buyers();
    s[i] += h;
    EXPECT_GT(n_pair_equilibrium(MarketSpec(s, spec.buyers())).price.value(), p);
    b[i] += h;
    EXPECT_LT(n_pair_equilibrium(MarketSpec(spec.sellers(), b)).price.value(), p);
  }
}

TEST(SpecializationChain, NPairAtTwoEqualsBidStage2x2) {
  testing::Gen g(31);
  for (int k = 0; k < 1000; ++k) {
    const MarketSpec spec = g.spec(2);
    const Equilibrium a = n_pair_equilibrium(spec);
    const Equilibrium b = bid_stage_2x2(spec);
    EXPECT_NEAR(a.seller_share, b.seller_share, 1e-12);
    EXPECT_NEAR(a.price.value(), b.price.value(), 1e-12 * std::max(1.0, a.price.value()));
  }
}

TEST(SpecializationChain, DuplicatedFactorsReduceToTwoPlayer) {
  testing::Gen g(32);
  for (int k = 0; k < 1000; ++k) {
    const double ds = g.uniform(0.01, 0.99), db = g.uniform(0.01, 0.99);
    const MarketSpec spec({ds, ds}, {db, db});
    EXPECT_NEAR(bid_stage_2x2(spec).seller_share, bid_stage_solve(D(ds), D(db)).first_share, 1e-12);
    EXPECT_NEAR(pair_equilibrium_2x2(spec).x_star, rubinstein_split(D(ds), D(db)).x, 1e-12);
  }
}

TEST(IndependentPairings, AllEqualIsHalf) {
  const auto p = independent_pairings_2x2(MarketSpec({0.4, 0.4}, {0.4, 0.4}));
  for (const PieSplit& s : p.splits) {
    EXPECT_EQ(s.x, 0.5);
    EXPECT_EQ(s.y, 0.5);
  }
}

TEST(IndependentPairings, PerPairBidStage) {
  const auto p = independent_pairings_2x2(kTwoByTwo);
  EXPECT_NEAR(p.splits[0].x, (1 - 0.5) / (2 - 0.6 - 0.5), 1e-15);
  EXPECT_NEAR(p.splits[1].x, (1 - 0.7) / (2 - 0.6 - 0.7), 1e-15);
  EXPECT_NEAR(p.splits[2].x, (1 - 0.5) / (2 - 0.8 - 0.5), 1e-15);
  EXPECT_NEAR(p.splits[3].x, (1 - 0.7) / (2 - 0.8 - 0.7), 1e-15);
}

TEST(IndependentPairings, JointShareInsideCorners) {
  testing::Gen g(10000);
  for (int k = 0; k < 10000; ++k) {
    const MarketSpec spec = g.spec(2);
    const auto p = independent_pairings_2x2(spec);
    const double x1 = bid_stage_2x2(spec).seller_share;
    EXPECT_LT(p.min_seller_share(), x1);
    EXPECT_GT(p.max_seller_share(), x1);
  }
}

}  // namespace
}  // namespace bargain
