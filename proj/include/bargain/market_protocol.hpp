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

// Round-based simulation of the seller/buyer offer market.
//
// Each round has four phases:
//   1. every unmatched seller may post an ask, visible to everyone;
//   2. every unmatched buyer either accepts one ask or, failing that, must
//      post a bid (a strategy with nothing to say bids 0, which no seller may
//      accept);
//   3. sellers still unmatched, in index order, may accept one live bid;
//   4. matched pairs leave the market.
//
// Conflicts in phase 2 go to the lowest-index buyer; displaced buyers bid in
// the same round. In phase 3 a seller only sees bids of buyers that are still
// unmatched, so earlier sellers have priority.

#ifndef BARGAIN_MARKET_PROTOCOL_HPP
#define BARGAIN_MARKET_PROTOCOL_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bargain/market_equilibrium.hpp"
#include "bargain/types.hpp"

namespace bargain {

struct AgentId {
  Side role = Side::kSeller;
  std::size_t index = 0;

  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

inline std::string to_string(const AgentId& id) {
  return (id.role == Side::kSeller ? "S" : "B") + std::to_string(id.index + 1);
}

struct Offer {
  AgentId poster;
  Price price;
  unsigned round = 0;
};

struct OfferBook {
  std::vector<Offer> selling;
  std::vector<Offer> buying;
};

struct Agreement {
  AgentId seller;
  AgentId buyer{Side::kBuyer, 0};
  Price price;
  unsigned round = 0;
};

struct RoundRecord {
  unsigned round = 0;
  OfferBook book;
  std::vector<Agreement> agreements;
};

enum class Termination { kAllMatched, kMaxRounds, kValueEpsilon };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::kAllMatched:
      return "all-matched";
    case Termination::kMaxRounds:
      return "max-rounds";
    case Termination::kValueEpsilon:
      return "value-epsilon";
  }
  return "unknown";
}

struct Trace {
  MarketSpec spec;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> rounds;
  std::vector<AgentId> unmatched;
  Termination terminated_reason = Termination::kMaxRounds;

  std::vector<Agreement> agreements() const {
    std::vector<Agreement> out;
    for (const auto& r : rounds) out.insert(out.end(), r.agreements.begin(), r.agreements.end());
    return out;
  }
};

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits; unlike
// std::uniform_real_distribution this is identical across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// What an agent sees when asked to act.
struct AgentView {
  const MarketSpec& spec;
  std::span<const RoundRecord> history;  // completed rounds
  const OfferBook& current;              // offers posted so far this round
  AgentId self;
  DiscountFactor delta;
  unsigned round;
  Rng& rng;
};

// Agent behaviour. Implementations are immutable; any per-run randomness
// comes from view.rng.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;

  // Ask (for sellers) or bid (for buyers) to post this round.
  virtual std::optional<Price> propose(const AgentView& view) const = 0;

  // Index into `offers` (asks for a buyer, live bids for a seller) of the
  // offer to accept.
  virtual std::optional<std::size_t> accept(const AgentView& view,
                                            std::span<const Offer> offers) const = 0;
};

// Sellers first, then buyers; 2n entries. Entries may alias.
using StrategyTable = std::vector<std::shared_ptr<const Strategy>>;

// Best offer for `role` among those passing `acceptable`: the lowest ask for
// a buyer, the highest bid for a seller, ties to the lower poster index.
template <class Pred>
std::optional<std::size_t> best_acceptable(Side role, std::span<const Offer> offers,
                                           Pred&& acceptable) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < offers.size(); ++k) {
    const Offer& o = offers[k];
    if (o.price.is_infinite() || !acceptable(o.price.value())) continue;
    if (!best) {
      best = k;
      continue;
    }
    const Offer& b = offers[*best];
    const double pv = o.price.value();
    const double bv = b.price.value();
    const bool improves = role == Side::kBuyer ? pv < bv : pv > bv;
    if (improves || (pv == bv && o.poster.index < b.poster.index)) best = k;
  }
  return best;
}

// Posts a fixed price and accepts anything at least as good for itself.
class FixedPriceStrategy : public Strategy {
 public:
  explicit FixedPriceStrategy(Price price) : price_(price) {
    if (price.is_infinite()) throw ConfigError("fixed price must be finite");
  }

  std::string name() const override { return "fixed"; }

  std::optional<Price> propose(const AgentView&) const override { return price_; }

  std::optional<std::size_t> accept(const AgentView& view,
                                    std::span<const Offer> offers) const override {
    const double p = price_.value();
    if (view.self.role == Side::kBuyer) {
      return best_acceptable(Side::kBuyer, offers, [&](double q) { return q <= p; });
    }
    return best_acceptable(Side::kSeller, offers, [&](double q) { return q >= p; });
  }

  Price price() const { return price_; }

 private:
  Price price_;
};

// Posts and accepts exactly the unanimous price p_n of the market.
class EquilibriumStrategy : public FixedPriceStrategy {
 public:
  explicit EquilibriumStrategy(const MarketSpec& spec)
      : FixedPriceStrategy(n_pair_equilibrium(spec).price) {}

  std::string name() const override { return "equilibrium"; }
};

// Opens at a price `spread` away from `target` on its own side (sellers at
// target * (1 + spread), buyers at target / (1 + spread)) and closes the gap
// geometrically by `rate` per round. Accepts any offer that beats waiting one
// round for a trade at `target`.
class GreedyConcederStrategy : public Strategy {
 public:
  GreedyConcederStrategy(Price target, double spread, double rate)
      : target_(target), spread_(spread), rate_(rate) {
    if (target.is_infinite() || !(target.value() > 0.0)) {
      throw ConfigError("greedy: target price must be finite and > 0");
    }
    if (!(spread >= 0.0)) throw ConfigError("greedy: spread must be >= 0");
    if (!(rate >= 0.0 && rate < 1.0)) throw ConfigError("greedy: rate must lie in [0,1)");
  }

  std::string name() const override { return "greedy"; }

  double price_at(Side role, unsigned round) const {
    const double t = target_.value();
    const double start = role == Side::kSeller ? t * (1.0 + spread_) : t / (1.0 + spread_);
    return t + (start - t) * std::pow(rate_, static_cast<double>(round));
  }

  std::optional<Price> propose(const AgentView& view) const override {
    return Price(price_at(view.self.role, view.round));
  }

  std::optional<std::size_t> accept(const AgentView& view,
                                    std::span<const Offer> offers) const override {
    const double d = view.delta.value();
    if (view.self.role == Side::kBuyer) {
      const double wait = d * target_.buyer_share();
      return best_acceptable(Side::kBuyer, offers,
                             [&](double q) { return 1.0 / (1.0 + q) >= wait; });
    }
    const double wait = d * target_.seller_share();
    return best_acceptable(Side::kSeller, offers,
                           [&](double q) { return q / (1.0 + q) >= wait; });
  }

 private:
  Price target_;
  double spread_;
  double rate_;
};

// Posts a uniform random price in [lo, hi]; accepts the best offer that
// beats a reservation price drawn uniformly from the same band.
class RandomStrategy : public Strategy {
 public:
  RandomStrategy(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo >= 0.0 && lo <= hi && std::isfinite(hi))) {
      throw ConfigError("random: band must satisfy 0 <= lo <= hi < inf");
    }
  }

  std::string name() const override { return "random"; }

  std::optional<Price> propose(const AgentView& view) const override {
    return Price(draw(view.rng));
  }

  std::optional<std::size_t> accept(const AgentView& view,
                                    std::span<const Offer> offers) const override {
    const double reservation = draw(view.rng);
    if (view.self.role == Side::kBuyer) {
      return best_acceptable(Side::kBuyer, offers, [&](double q) { return q <= reservation; });
    }
    return best_acceptable(Side::kSeller, offers, [&](double q) { return q >= reservation; });
  }

 private:
  double draw(Rng& rng) const { return lo_ + (hi_ - lo_) * uniform01(rng); }

  double lo_;
  double hi_;
};

class MarketState;
inline RoundRecord run_round(MarketState& state, const StrategyTable& strategies, Rng& rng);

// Mutable market state between rounds.
class MarketState {
 public:
  explicit MarketState(MarketSpec spec)
      : spec_(std::move(spec)),
        seller_matched_(spec_.size(), false),
        buyer_matched_(spec_.size(), false) {}

  const MarketSpec& spec() const { return spec_; }
  unsigned round() const { return static_cast<unsigned>(history_.size()); }
  const std::vector<RoundRecord>& history() const { return history_; }

  bool matched(AgentId id) const {
    return id.role == Side::kSeller ? seller_matched_.at(id.index) : buyer_matched_.at(id.index);
  }

  bool any_unmatched_pair() const {
    const auto open = [](const std::vector<bool>& v) {
      return std::find(v.begin(), v.end(), false) != v.end();
    };
    return open(seller_matched_) && open(buyer_matched_);
  }

  std::vector<AgentId> unmatched() const {
    std::vector<AgentId> out;
    for (std::size_t i = 0; i < spec_.size(); ++i) {
      if (!seller_matched_[i]) out.push_back({Side::kSeller, i});
    }
    for (std::size_t i = 0; i < spec_.size(); ++i) {
      if (!buyer_matched_[i]) out.push_back({Side::kBuyer, i});
    }
    return out;
  }

  // Largest delta^t over unmatched agents at the current round.
  double max_unmatched_value() const {
    double v = 0.0;
    for (const AgentId& id : unmatched()) {
      const double d = id.role == Side::kSeller ? spec_.sellers()[id.index] : spec_.buyers()[id.index];
      v = std::max(v, std::pow(d, static_cast<double>(round())));
    }
    return v;
  }

 private:
  friend RoundRecord run_round(MarketState&, const StrategyTable&, Rng&);

  void mark(const Agreement& a) {
    seller_matched_.at(a.seller.index) = true;
    buyer_matched_.at(a.buyer.index) = true;
  }

  MarketSpec spec_;
  std::vector<bool> seller_matched_;
  std::vector<bool> buyer_matched_;
  std::vector<RoundRecord> history_;
};

namespace detail {

inline void check_table(const MarketSpec& spec, const StrategyTable& strategies) {
  if (strategies.size() != 2 * spec.size()) {
    throw ConfigError("strategy table has " + std::to_string(strategies.size()) +
                      " entries, expected " + std::to_string(2 * spec.size()));
  }
  for (const auto& s : strategies) {
    if (!s) throw ConfigError("strategy table contains a null entry");
  }
}

inline const Strategy& strategy_for(const StrategyTable& table, std::size_t n, AgentId id) {
  return *table[id.role == Side::kSeller ? id.index : n + id.index];
}

inline Price checked_post(std::optional<Price> p) {
  if (p && p->is_infinite()) throw ConfigError("strategy posted an infinite price");
  return *p;
}

}  // namespace detail

// Plays one round and appends it to the state's history.
inline RoundRecord run_round(MarketState& state, const StrategyTable& strategies, Rng& rng) {
  const MarketSpec& spec = state.spec();
  const std::size_t n = spec.size();
  detail::check_table(spec, strategies);
  if (!state.any_unmatched_pair()) {
    throw PreconditionViolation("run_round: no unmatched seller-buyer pair");
  }

  RoundRecord rec;
  rec.round = state.round();
  const std::span<const RoundRecord> history(state.history_);
  const auto view_for = [&](AgentId id) {
    const DiscountFactor d = id.role == Side::kSeller ? spec.seller(id.index) : spec.buyer(id.index);
    return AgentView{spec, history, rec.book, id, d, rec.round, rng};
  };

  // Phase 1: asks.
  for (std::size_t i = 0; i < n; ++i) {
    const AgentId id{Side::kSeller, i};
    if (state.matched(id)) continue;
    const auto ask = detail::strategy_for(strategies, n, id).propose(view_for(id));
    if (ask) rec.book.selling.push_back(Offer{id, detail::checked_post(ask), rec.round});
  }

  // Phase 2: buyers pick asks simultaneously; a contested ask goes to the
  // lowest-index buyer.
  std::vector<std::optional<std::size_t>> claimed_by(n);  // seller -> buyer
  for (std::size_t j = 0; j < n; ++j) {
    const AgentId id{Side::kBuyer, j};
    if (state.matched(id)) continue;
    const auto pick = detail::strategy_for(strategies, n, id).accept(view_for(id), rec.book.selling);
    if (!pick) continue;
    if (*pick >= rec.book.selling.size()) throw ConfigError("strategy accepted a nonexistent ask");
    const std::size_t seller = rec.book.selling[*pick].poster.index;
    if (!claimed_by[seller]) claimed_by[seller] = j;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (const Offer& ask : rec.book.selling) {
      if (claimed_by[ask.poster.index] == j) {
        const Agreement a{ask.poster, AgentId{Side::kBuyer, j}, ask.price, rec.round};
        rec.agreements.push_back(a);
        state.mark(a);
      }
    }
  }

  // Mandatory bids from buyers still unmatched.
  for (std::size_t j = 0; j < n; ++j) {
    const AgentId id{Side::kBuyer, j};
    if (state.matched(id)) continue;
    const auto bid = detail::strategy_for(strategies, n, id).propose(view_for(id));
    rec.book.buying.push_back(Offer{id, bid ? detail::checked_post(bid) : Price(0.0), rec.round});
  }

  // Phase 3: unmatched sellers, in index order, take live bids.
  for (std::size_t i = 0; i < n; ++i) {
    const AgentId id{Side::kSeller, i};
    if (state.matched(id)) continue;
    std::vector<Offer> live;
    for (const Offer& bid : rec.book.buying) {
      if (!state.matched(bid.poster)) live.push_back(bid);
    }
    if (live.empty()) break;
    const auto pick = detail::strategy_for(strategies, n, id).accept(view_for(id), live);
    if (!pick) continue;
    if (*pick >= live.size()) throw ConfigError("strategy accepted a nonexistent bid");
    const Offer& bid = live[*pick];
    if (bid.price.value() <= 0.0) continue;  // a zero bid leaves the seller nothing
    const Agreement a{id, bid.poster, bid.price, rec.round};
    rec.agreements.push_back(a);
    state.mark(a);
  }

  state.history_.push_back(rec);
  return rec;
}

// Runs rounds until everybody is matched, `max_rounds` rounds have been
// played, or every unmatched agent's pie is worth less than `value_epsilon`.
inline Trace simulate(const MarketSpec& spec, const StrategyTable& strategies,
                      unsigned max_rounds, double value_epsilon, std::uint64_t seed) {
  detail::check_table(spec, strategies);
  if (max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
  if (!(value_epsilon >= 0.0 && value_epsilon < 1.0)) {
    throw ConfigError("value_epsilon must lie in [0,1)");
  }

  Rng rng(seed);
  MarketState state(spec);
  Trace trace{spec, seed, {}, {}, Termination::kMaxRounds};
  for (;;) {
    if (!state.any_unmatched_pair()) {
      trace.terminated_reason = Termination::kAllMatched;
      break;
    }
    if (state.max_unmatched_value() < value_epsilon) {
      trace.terminated_reason = Termination::kValueEpsilon;
      break;
    }
    if (state.round() >= max_rounds) {
      trace.terminated_reason = Termination::kMaxRounds;
      break;
    }
    run_round(state, strategies, rng);
  }
  trace.rounds = state.history();
  trace.unmatched = state.unmatched();
  return trace;
}

struct Payoffs {
  std::vector<double> sellers;
  std::vector<double> buyers;
};

// Discounted payoff of every agent; unmatched agents keep the status quo 0.
inline Payoffs discounted_payoffs(const Trace& trace) {
  const MarketSpec& spec = trace.spec;
  Payoffs out{std::vector<double>(spec.size(), 0.0), std::vector<double>(spec.size(), 0.0)};
  for (const Agreement& a : trace.agreements()) {
    out.sellers.at(a.seller.index) = spec.seller(a.seller.index).pow(a.round) * a.price.seller_share();
    out.buyers.at(a.buyer.index) = spec.buyer(a.buyer.index).pow(a.round) * a.price.buyer_share();
  }
  return out;
}

}  // namespace bargain

#endif  // BARGAIN_MARKET_PROTOCOL_HPP
