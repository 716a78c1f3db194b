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

// Closed-form equilibria of the seller/buyer market: the 2x2 game with and
// without a first-move bid, and the unanimous price of the n x n game.

#ifndef BARGAIN_MARKET_EQUILIBRIUM_HPP
#define BARGAIN_MARKET_EQUILIBRIUM_HPP

#include <algorithm>
#include <array>
#include <string>

#include "bargain/two_player.hpp"
#include "bargain/types.hpp"

namespace bargain {

enum class Side { kSeller, kBuyer };

inline const char* to_string(Side side) {
  return side == Side::kSeller ? "seller" : "buyer";
}

namespace detail {

inline void require_two_by_two(const MarketSpec& spec, const char* op) {
  if (spec.size() != 2) {
    throw DimensionError(std::string(op) + ": requires exactly 2 sellers and 2 buyers, got " +
                         std::to_string(spec.size()));
  }
}

}  // namespace detail

// Immediate-split equivalent, shared by both members of one side, of receiving
// x after t rounds: the mean of delta_i^t over the side, times x.
inline double continuation_value(const MarketSpec& spec, Side side, double x, unsigned t) {
  detail::require_two_by_two(spec, "continuation_value");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw PreconditionViolation("continuation_value: x must lie in [0,1]");
  }
  if (t == 0) return x;
  const auto& d = side == Side::kSeller ? spec.sellers() : spec.buyers();
  const double tt = static_cast<double>(t);
  return 0.5 * (std::pow(d[0], tt) + std::pow(d[1], tt)) * x;
}

// Sellers-open equilibrium of the 2x2 game: x_star is each seller's share,
// y_star each buyer's share.
struct PairEquilibrium {
  double x_star = 0.0;
  double y_star = 0.0;
};

inline PairEquilibrium pair_equilibrium_2x2(const MarketSpec& spec) {
  detail::require_two_by_two(spec, "pair_equilibrium_2x2");
  const double ss = spec.seller_sum();
  const double sb = spec.buyer_sum();
  const double denom = 4.0 - sb * ss;
  return PairEquilibrium{2.0 * (2.0 - sb) / denom, sb * (2.0 - ss) / denom};
}

// Each side's share once the sellers bid for the right to open. The two
// branches of the bid itself are exposed by bid_stage_branches_2x2.
inline Equilibrium bid_stage_2x2(const MarketSpec& spec) {
  detail::require_two_by_two(spec, "bid_stage_2x2");
  const double seller_gap = 2.0 - spec.buyer_sum();
  const double buyer_gap = 2.0 - spec.seller_sum();
  const double denom = seller_gap + buyer_gap;
  Equilibrium eq;
  eq.seller_share = seller_gap / denom;
  eq.buyer_share = buyer_gap / denom;
  eq.price = Price(seller_gap / buyer_gap);
  eq.avg_seller_delta = spec.seller_average();
  eq.avg_buyer_delta = spec.buyer_average();
  return eq;
}

// Seller payoff when the buyers accept the bid w (sellers open on 1 - w) and
// when they refuse it (buyers open on 1 - w, each seller keeps w).
struct BidBranches {
  double bid_w = 0.0;
  double accept_branch = 0.0;
  double reject_branch = 0.0;
};

inline BidBranches bid_stage_branches_2x2(const MarketSpec& spec) {
  detail::require_two_by_two(spec, "bid_stage_branches_2x2");
  const double ss = spec.seller_sum();
  const double sb = spec.buyer_sum();
  const double denom = 4.0 - ss * sb;
  const double open_share = 2.0 * (2.0 - sb) / denom;
  const double respond_share = ss * (2.0 - sb) / denom;
  // open_share (1 - w) = respond_share (1 - w) + w
  const double w = (open_share - respond_share) / (1.0 + open_share - respond_share);
  return BidBranches{w, open_share * (1.0 - w), respond_share * (1.0 - w) + w};
}

// Unanimous price p_n = (n - sum db) / (n - sum ds) and the per-agent shares.
inline Equilibrium n_pair_equilibrium(const MarketSpec& spec) {
  const double n = static_cast<double>(spec.size());
  const double seller_gap = n - spec.buyer_sum();
  const double buyer_gap = n - spec.seller_sum();
  const double denom = seller_gap + buyer_gap;
  Equilibrium eq;
  eq.price = Price(seller_gap / buyer_gap);
  eq.seller_share = seller_gap / denom;
  eq.buyer_share = buyer_gap / denom;
  eq.avg_seller_delta = spec.seller_average();
  eq.avg_buyer_delta = spec.buyer_average();
  return eq;
}

// Bid-stage splits of the four independent seller/buyer pairings, in the
// order (s1,b1), (s1,b2), (s2,b1), (s2,b2).
struct IndependentPairings {
  std::array<PieSplit, 4> splits;

  double min_seller_share() const {
    return std::min({splits[0].x, splits[1].x, splits[2].x, splits[3].x});
  }
  double max_seller_share() const {
    return std::max({splits[0].x, splits[1].x, splits[2].x, splits[3].x});
  }
};

inline IndependentPairings independent_pairings_2x2(const MarketSpec& spec) {
  detail::require_two_by_two(spec, "independent_pairings_2x2");
  IndependentPairings out;
  std::size_t k = 0;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t b = 0; b < 2; ++b) {
      const auto sol = bid_stage_solve(spec.seller(s), spec.buyer(b));
      out.splits[k++] = PieSplit{sol.first_share, sol.second_share};
    }
  }
  return out;
}

}  // namespace bargain

#endif  // BARGAIN_MARKET_EQUILIBRIUM_HPP
