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

// Brute-force equilibrium checks on a split grid.
//
// A pairwise deviation re-matches the seller of one agreement with the buyer
// of another at a new split and an earlier-or-equal time, leaving both
// strictly better off. A unilateral deviation from a unanimous price is an
// agent finding a counterparty willing to trade at a price better for the
// agent, where counterparties accept anything worth at least what their own
// side secures in the representative two-player bargain.

#ifndef BARGAIN_VERIFIER_HPP
#define BARGAIN_VERIFIER_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "bargain/market_equilibrium.hpp"
#include "bargain/market_protocol.hpp"
#include "bargain/nash_product.hpp"
#include "bargain/two_player.hpp"
#include "bargain/types.hpp"

namespace bargain {

// Gains at or below this are treated as roundoff, not improvement.
inline constexpr double kProfitMargin = 1e-12;

inline constexpr std::size_t kDefaultGridResolution = 1001;

// Uniform grid on the split interval [0, 1], endpoints included.
class PriceGrid {
 public:
  explicit PriceGrid(std::size_t resolution = kDefaultGridResolution) : resolution_(resolution) {
    if (resolution < 2) throw ConfigError("grid resolution must be >= 2");
    points_.reserve(resolution);
    const double last = static_cast<double>(resolution - 1);
    for (std::size_t k = 0; k < resolution; ++k) {
      points_.push_back(static_cast<double>(k) / last);
    }
  }

  std::size_t resolution() const { return resolution_; }
  double spacing() const { return 1.0 / static_cast<double>(resolution_ - 1); }
  const std::vector<double>& points() const { return points_; }

 private:
  std::size_t resolution_;
  std::vector<double> points_;
};

// One pair of the outcome: the seller's split and the agreement time;
// time == nullopt means the pair never agreed (both get the status quo).
struct ProfileEntry {
  AgentId seller;
  AgentId buyer{Side::kBuyer, 0};
  double split = 0.0;
  std::optional<unsigned> time;
};

// Outcome of the market as a perfect matching of sellers to buyers.
struct AgreementProfile {
  std::vector<ProfileEntry> agreements;

  // All agents at the same split and time 0.
  static AgreementProfile unanimous(std::size_t n, double split) {
    AgreementProfile p;
    for (std::size_t i = 0; i < n; ++i) {
      p.agreements.push_back({{Side::kSeller, i}, {Side::kBuyer, i}, split, 0u});
    }
    return p;
  }

  void validate(const MarketSpec& spec) const {
    const std::size_t n = spec.size();
    if (agreements.size() != n) throw ConfigError("profile must pair every seller with a buyer");
    std::set<std::size_t> sellers, buyers;
    for (const auto& e : agreements) {
      if (e.seller.role != Side::kSeller || e.buyer.role != Side::kBuyer) {
        throw ConfigError("profile entry has roles swapped");
      }
      if (e.seller.index >= n || e.buyer.index >= n) throw ConfigError("profile agent out of range");
      if (!(e.split >= 0.0 && e.split <= 1.0)) throw ConfigError("profile split out of [0,1]");
      sellers.insert(e.seller.index);
      buyers.insert(e.buyer.index);
    }
    if (sellers.size() != n || buyers.size() != n) {
      throw ConfigError("profile is not a bijection between sellers and buyers");
    }
  }
};

enum class DeviationKind { kPairwise, kUnilateral };

inline const char* to_string(DeviationKind k) {
  return k == DeviationKind::kPairwise ? "pairwise" : "unilateral";
}

struct Deviation {
  DeviationKind kind = DeviationKind::kPairwise;
  std::vector<AgentId> participants;
  double new_split = 0.0;
  unsigned new_time = 0;
  std::vector<double> payoff_gains;  // parallel to participants
  // Unilateral only: who accepts the deviating offer.
  std::optional<AgentId> counterparty;
};

// Payoff of a split received at `time` (nullopt = never).
inline double discounted(double delta, double share, std::optional<unsigned> time) {
  if (!time) return 0.0;
  return std::pow(delta, static_cast<double>(*time)) * share;
}

inline double delta_of(const MarketSpec& spec, AgentId id) {
  return id.role == Side::kSeller ? spec.sellers().at(id.index) : spec.buyers().at(id.index);
}

// Most profitable (by joint gain) cross re-matching, or nullopt if no pair
// can both strictly gain. Ties keep the first candidate in (pair, time,
// grid index) order.
inline std::optional<Deviation> find_pairwise_deviation(const AgreementProfile& profile,
                                                        const MarketSpec& spec,
                                                        const PriceGrid& grid) {
  profile.validate(spec);
  const auto& entries = profile.agreements;

  unsigned latest_finite = 0;
  for (const auto& e : entries) {
    if (e.time) latest_finite = std::max(latest_finite, *e.time);
  }

  std::optional<Deviation> best;
  double best_joint = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (i == j) continue;
      const ProfileEntry& from_seller = entries[i];
      const ProfileEntry& from_buyer = entries[j];
      const double ds = delta_of(spec, from_seller.seller);
      const double db = delta_of(spec, from_buyer.buyer);
      const double seller_now = discounted(ds, from_seller.split, from_seller.time);
      const double buyer_now = discounted(db, 1.0 - from_buyer.split, from_buyer.time);

      unsigned horizon = latest_finite;
      if (from_seller.time && from_buyer.time) {
        horizon = std::min(*from_seller.time, *from_buyer.time);
      } else if (from_seller.time) {
        horizon = *from_seller.time;
      } else if (from_buyer.time) {
        horizon = *from_buyer.time;
      }

      for (unsigned t = 0; t <= horizon; ++t) {
        const double fs = std::pow(ds, static_cast<double>(t));
        const double fb = std::pow(db, static_cast<double>(t));
        for (double x : grid.points()) {
          const double gs = fs * x - seller_now;
          const double gb = fb * (1.0 - x) - buyer_now;
          if (gs <= kProfitMargin || gb <= kProfitMargin) continue;
          if (best && gs + gb <= best_joint) continue;
          best_joint = gs + gb;
          best = Deviation{DeviationKind::kPairwise,
                           {from_seller.seller, from_buyer.buyer},
                           x,
                           t,
                           {gs, gb},
                           std::nullopt};
        }
      }
    }
  }
  return best;
}

// Shares each side secures when the sellers and the buyers bargain as two
// coalitions represented by their average discount factors.
inline BidStageSolution coalition_bargain(const MarketSpec& spec) {
  return bid_stage_solve(DiscountFactor(spec.seller_average()),
                         DiscountFactor(spec.buyer_average()));
}

// Whether any agent gains by trading away from the unanimous `price`: a
// seller at a higher grid price some buyer would accept, or a buyer at a
// lower one some seller would accept. Sellers are checked before buyers and
// the largest available gain is reported.
inline std::optional<Deviation> find_unilateral_deviation(Price price, const MarketSpec& spec,
                                                          const PriceGrid& grid) {
  if (price.is_infinite() || !(price.value() > 0.0)) {
    throw PreconditionViolation("find_unilateral_deviation: price must be finite and > 0");
  }
  const BidStageSolution secured = coalition_bargain(spec);
  const double x_now = price.seller_share();
  const std::size_t n = spec.size();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Buyer j accepts any split leaving it at least its coalition share.
      std::optional<double> x_best;
      for (double x : grid.points()) {
        if (x - x_now <= kProfitMargin) continue;
        if (1.0 - x < secured.second_share - kProfitMargin) continue;
        x_best = x;
      }
      if (x_best) {
        return Deviation{DeviationKind::kUnilateral,
                         {AgentId{Side::kSeller, i}},
                         *x_best,
                         0,
                         {*x_best - x_now},
                         AgentId{Side::kBuyer, j}};
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<double> x_best;
      for (double x : grid.points()) {
        if (x_now - x <= kProfitMargin) continue;
        if (x < secured.first_share - kProfitMargin) continue;
        if (!x_best) x_best = x;
      }
      if (x_best) {
        return Deviation{DeviationKind::kUnilateral,
                         {AgentId{Side::kBuyer, j}},
                         *x_best,
                         0,
                         {x_now - *x_best},
                         AgentId{Side::kSeller, i}};
      }
    }
  }
  return std::nullopt;
}

// The unanimous price computed three ways: closed form, the two-player price
// of the average discount factors, and the numeric Nash-product maximizer.
struct CoalitionReport {
  double tolerance = 0.0;
  double n_pair_price = 0.0;
  double two_player_price = 0.0;
  double nash_price = 0.0;
  bool two_player_agrees = false;
  bool nash_agrees = false;

  bool ok() const { return two_player_agrees && nash_agrees; }
};

inline CoalitionReport coalition_reduction_check(const MarketSpec& spec, double tolerance) {
  if (!(tolerance > 0.0)) throw PreconditionViolation("coalition_reduction_check: tolerance must be > 0");
  CoalitionReport r;
  r.tolerance = tolerance;
  r.n_pair_price = n_pair_equilibrium(spec).price.value();
  r.two_player_price = price_two_player(DiscountFactor(spec.seller_average()),
                                        DiscountFactor(spec.buyer_average()))
                           .value();
  r.nash_price = nash_product_argmax(spec, std::min(tolerance / 10.0, 1e-9)).value();
  r.two_player_agrees = std::abs(r.n_pair_price - r.two_player_price) < tolerance;
  r.nash_agrees = std::abs(r.n_pair_price - r.nash_price) < tolerance;
  return r;
}

inline constexpr double kUnanimityTolerance = 1e-9;

struct TraceReport {
  std::size_t agreement_count = 0;
  // No agreements at all: unanimity holds vacuously.
  bool vacuous = true;
  bool unanimous = true;
  std::optional<double> common_price;
  double p_n = 0.0;
  bool matches_p_n = false;
  std::optional<Deviation> deviation;

  bool ok() const { return !vacuous && unanimous && matches_p_n && !deviation; }
};

// Agreements of a trace as a profile; unmatched agents are paired off in
// index order as never-agreeing pairs.
inline AgreementProfile profile_from_trace(const Trace& trace) {
  AgreementProfile p;
  for (const Agreement& a : trace.agreements()) {
    p.agreements.push_back({a.seller, a.buyer, a.price.seller_share(), a.round});
  }
  std::vector<AgentId> sellers, buyers;
  for (const AgentId& id : trace.unmatched) (id.role == Side::kSeller ? sellers : buyers).push_back(id);
  if (sellers.size() != buyers.size()) throw ConfigError("trace has unbalanced unmatched agents");
  for (std::size_t k = 0; k < sellers.size(); ++k) {
    p.agreements.push_back({sellers[k], buyers[k], 0.5, std::nullopt});
  }
  return p;
}

inline TraceReport verify_trace(const Trace& trace, const MarketSpec& spec, const PriceGrid& grid) {
  TraceReport r;
  r.p_n = n_pair_equilibrium(spec).price.value();
  const auto agreements = trace.agreements();
  r.agreement_count = agreements.size();
  r.vacuous = agreements.empty();
  if (!r.vacuous) {
    const double first = agreements.front().price.value();
    for (const Agreement& a : agreements) {
      if (std::abs(a.price.value() - first) > kUnanimityTolerance) r.unanimous = false;
    }
    if (r.unanimous) {
      r.common_price = first;
      r.matches_p_n = std::abs(first - r.p_n) <= kUnanimityTolerance;
    }
  }
  r.deviation = find_pairwise_deviation(profile_from_trace(trace), spec, grid);
  return r;
}

}  // namespace bargain

#endif  // BARGAIN_VERIFIER_HPP
