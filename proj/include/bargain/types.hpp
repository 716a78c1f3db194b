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

#ifndef BARGAIN_TYPES_HPP
#define BARGAIN_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bargain {

// Error hierarchy. Everything thrown by the library derives from Error so
// callers (the CLI in particular) can map failures to a single exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain where a closed form is defined (e.g. both
// discount factors equal to one).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Operation defined only for a particular market size.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Bad configuration: malformed spec, strategy table of the wrong size, ...
class ConfigError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// Per-round payoff multiplier. Two-player games allow the closed interval
// [0, 1]; market participants are further restricted to (0, 1) by
// MarketSpec.
class DiscountFactor {
 public:
  constexpr DiscountFactor() = default;
  explicit DiscountFactor(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw PreconditionViolation("discount factor out of [0,1]: " +
                                  std::to_string(value));
    }
  }

  constexpr double value() const { return value_; }

  // delta^t with an integer exponent.
  double pow(unsigned t) const { return std::pow(value_, static_cast<double>(t)); }

  bool strictly_inside() const { return value_ > 0.0 && value_ < 1.0; }

  friend constexpr bool operator==(DiscountFactor, DiscountFactor) = default;

 private:
  double value_ = 0.0;
};

// Split of a unit pie: x to the first (seller-side) player, y = 1 - x to the
// second.
struct PieSplit {
  double x = 0.0;
  double y = 1.0;

  static PieSplit first_share(double x) { return PieSplit{x, 1.0 - x}; }
};

// Exchange ratio seller share / buyer share. p = infinity (seller takes the
// whole pie) is carried as an explicit flag rather than an IEEE infinity.
class Price {
 public:
  constexpr Price() = default;
  explicit Price(double value) : value_(value) {
    if (!(value >= 0.0) || std::isinf(value)) {
      throw PreconditionViolation("price must be finite and >= 0");
    }
  }

  static constexpr Price infinite() {
    Price p;
    p.infinite_ = true;
    return p;
  }

  // x / (1 - x); x == 1 maps to the infinite sentinel.
  static Price from_split(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw PreconditionViolation("split out of [0,1]");
    }
    if (x == 1.0) return infinite();
    return Price(x / (1.0 - x));
  }

  constexpr bool is_infinite() const { return infinite_; }

  double value() const {
    if (infinite_) throw PreconditionViolation("value() of infinite price");
    return value_;
  }

  // Seller's share of the pie implied by this price.
  double seller_share() const { return infinite_ ? 1.0 : value_ / (1.0 + value_); }
  double buyer_share() const { return infinite_ ? 0.0 : 1.0 / (1.0 + value_); }

  friend constexpr bool operator==(const Price&, const Price&) = default;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

// n sellers and n buyers with their discount factors. Every factor lies in
// the open interval (0, 1).
class MarketSpec {
 public:
  MarketSpec(std::vector<double> sellers, std::vector<double> buyers)
      : sellers_(std::move(sellers)), buyers_(std::move(buyers)) {
    if (sellers_.empty() || buyers_.empty()) {
      throw ConfigError("market needs at least one seller and one buyer");
    }
    if (sellers_.size() != buyers_.size()) {
      throw ConfigError("sellers and buyers must have equal counts");
    }
    for (double d : sellers_) check(d);
    for (double d : buyers_) check(d);
  }

  std::size_t size() const { return sellers_.size(); }
  const std::vector<double>& sellers() const { return sellers_; }
  const std::vector<double>& buyers() const { return buyers_; }

  DiscountFactor seller(std::size_t i) const { return DiscountFactor(sellers_.at(i)); }
  DiscountFactor buyer(std::size_t i) const { return DiscountFactor(buyers_.at(i)); }

  double seller_sum() const { return std::accumulate(sellers_.begin(), sellers_.end(), 0.0); }
  double buyer_sum() const { return std::accumulate(buyers_.begin(), buyers_.end(), 0.0); }
  double seller_average() const { return seller_sum() / static_cast<double>(size()); }
  double buyer_average() const { return buyer_sum() / static_cast<double>(size()); }

  friend bool operator==(const MarketSpec&, const MarketSpec&) = default;

 private:
  static void check(double d) {
    if (!(d > 0.0 && d < 1.0)) {
      throw ConfigError("discount factor out of (0,1)");
    }
  }

  std::vector<double> sellers_;
  std::vector<double> buyers_;
};

// Unanimous-price outcome of the n-seller / n-buyer game.
struct Equilibrium {
  Price price;
  double seller_share = 0.0;
  double buyer_share = 0.0;
  double avg_seller_delta = 0.0;
  double avg_buyer_delta = 0.0;
};

// Outcome of bidding for the right to move first in a two-player game.
// accept_branch_share / reject_branch_share are the first player's payoff
// when the bid is accepted or refused; at the solution they coincide.
struct BidStageSolution {
  double bid_w = 0.0;
  double first_share = 0.0;
  double second_share = 0.0;
  Price price;
  double accept_branch_share = 0.0;
  double reject_branch_share = 0.0;
};

}  // namespace bargain

#endif  // BARGAIN_TYPES_HPP
