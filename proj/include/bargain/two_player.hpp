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

// Two-player alternating-offers bargaining: the infinite-horizon solution,
// a finite-horizon backward-induction oracle, the first-move bid stage and
// the vanishing-interval limit.

#ifndef BARGAIN_TWO_PLAYER_HPP
#define BARGAIN_TWO_PLAYER_HPP

#include <cmath>

#include "bargain/types.hpp"

namespace bargain {

// First mover's share in the infinite-horizon game where player 1 opens:
// x = (1 - d2) / (1 - d1 d2).
inline PieSplit rubinstein_split(DiscountFactor d1, DiscountFactor d2) {
  const double denom = 1.0 - d1.value() * d2.value();
  if (denom <= 0.0) {
    throw DegenerateInput("rubinstein_split: both discount factors equal 1");
  }
  return PieSplit::first_share((1.0 - d2.value()) / denom);
}

// Backward induction over a game with `horizon` proposal rounds. Player 1
// proposes in even rounds, player 2 in odd rounds; a rejected final offer
// leaves both with the status quo 0, so the last proposer takes everything.
// Responders accept when indifferent. Returns player 1's share at round 0.
inline PieSplit finite_horizon_split(DiscountFactor d1, DiscountFactor d2,
                                     unsigned horizon) {
  if (horizon == 0) {
    throw PreconditionViolation("finite_horizon_split: horizon must be >= 1");
  }
  // proposer_share holds the share of whoever proposes in round k.
  double proposer_share = 1.0;
  for (unsigned k = horizon - 1; k-- > 0;) {
    const double responder_delta = (k % 2 == 0) ? d2.value() : d1.value();
    proposer_share = 1.0 - responder_delta * proposer_share;
  }
  return PieSplit::first_share(proposer_share);
}

// Player 1 bids w for the right to open. If player 2 takes the bid, player 1
// opens on the remaining 1 - w; otherwise player 2 opens on 1 - w and player
// 1 keeps w. The equilibrium bid makes player 1 indifferent between the two.
inline BidStageSolution bid_stage_solve(DiscountFactor d1, DiscountFactor d2) {
  const double patience_gap_1 = 1.0 - d1.value();
  const double patience_gap_2 = 1.0 - d2.value();
  const double total = patience_gap_1 + patience_gap_2;
  if (total <= 0.0) {
    throw DegenerateInput("bid_stage_solve: both discount factors equal 1");
  }

  BidStageSolution out;
  out.bid_w = patience_gap_1 * patience_gap_2 / total;
  out.first_share = patience_gap_2 / total;
  out.second_share = patience_gap_1 / total;
  out.price = Price::from_split(out.first_share);

  const double opener = rubinstein_split(d1, d2).x;
  out.accept_branch_share = opener * (1.0 - out.bid_w);
  out.reject_branch_share = out.bid_w + d1.value() * opener * (1.0 - out.bid_w);
  return out;
}

enum class BoundaryPolicy { kReject, kAllowInfinite };

// Price (1 - db) / (1 - ds) of the seller-first bid-stage outcome. ds == 1
// makes the seller infinitely patient; that is only returned as the infinite
// sentinel when the caller opts in.
inline Price price_two_player(DiscountFactor ds, DiscountFactor db,
                              BoundaryPolicy policy = BoundaryPolicy::kReject) {
  if (ds.value() == 1.0) {
    if (db.value() == 1.0) {
      throw DegenerateInput("price_two_player: both discount factors equal 1");
    }
    if (policy == BoundaryPolicy::kAllowInfinite) return Price::infinite();
    throw PreconditionViolation("price_two_player: seller discount factor must be < 1");
  }
  return Price((1.0 - db.value()) / (1.0 - ds.value()));
}

// Limit of rubinstein_split(d1^h, d2^h) as the period length h -> 0.
inline PieSplit limit_split(DiscountFactor d1, DiscountFactor d2) {
  if (!d1.strictly_inside() || !d2.strictly_inside()) {
    throw PreconditionViolation("limit_split: discount factors must lie in (0,1)");
  }
  const double l1 = std::log(d1.value());
  const double l2 = std::log(d2.value());
  return PieSplit::first_share(l2 / (l1 + l2));
}

// Player 1's share when player 1 opens (opener_share) and when player 2
// opens (responder_share), with period length `interval`.
struct ProposerShares {
  double opener_share = 0.0;
  double responder_share = 0.0;

  double gap() const { return std::abs(opener_share - responder_share); }
};

inline ProposerShares proposer_shares(DiscountFactor d1, DiscountFactor d2,
                                      double interval) {
  if (!(interval > 0.0)) {
    throw PreconditionViolation("proposer_shares: interval must be > 0");
  }
  const DiscountFactor s1(std::pow(d1.value(), interval));
  const DiscountFactor s2(std::pow(d2.value(), interval));
  return ProposerShares{rubinstein_split(s1, s2).x, 1.0 - rubinstein_split(s2, s1).x};
}

}  // namespace bargain

#endif  // BARGAIN_TWO_PLAYER_HPP
