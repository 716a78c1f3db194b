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

// Seeded generators and independent numeric oracles shared by the tests.
// Nothing here calls the closed forms it is used to check.

#ifndef BARGAIN_TESTS_TEST_SUPPORT_HPP
#define BARGAIN_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bargain/types.hpp"

namespace bargain::testing {

using D = DiscountFactor;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1));
  }

  MarketSpec spec(std::size_t n, double lo = 0.01, double hi = 0.99) {
    std::vector<double> s(n), b(n);
    for (auto& d : s) d = uniform(lo, hi);
    for (auto& d : b) d = uniform(lo, hi);
    return MarketSpec(std::move(s), std::move(b));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Player 1's share in the alternating-offers game with `rounds_left`
// proposal rounds, player `proposer` (1 or 2) moving now. Plain recursion
// over the game tree: the proposer offers the responder exactly the
// responder's discounted value of proposing next round.
inline double backward_induction_share(double d1, double d2, unsigned rounds_left, int proposer) {
  if (rounds_left == 1) return proposer == 1 ? 1.0 : 0.0;
  const double next = backward_induction_share(d1, d2, rounds_left - 1, proposer == 1 ? 2 : 1);
  if (proposer == 1) {
    const double responder_keeps = d2 * (1.0 - next);
    return 1.0 - responder_keeps;
  }
  return d1 * next;
}

// Root of a continuous sign-changing function on [lo, hi] by bisection.
template <class F>
double bisect(F&& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int k = 0; k < iterations; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Argmax over a uniform grid of `points` interior points of (0, 1).
template <class F>
double grid_argmax(F&& f, std::size_t points) {
  double best_x = 0.0, best = -INFINITY;
  for (std::size_t k = 1; k <= points; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(points + 1);
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace bargain::testing

#endif  // BARGAIN_TESTS_TEST_SUPPORT_HPP
