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

// Numeric Nash-product maximization for the representative seller and buyer.
//
// The representative players' utilities are their shares raised to the
// bargaining weights 1/(1 - delta), so the maximized product is
//
//   x^alpha * (1 - x)^beta,  alpha = 1/(1 - delta_sA), beta = 1/(1 - delta_bA)
//
// over the seller share x; the price is x / (1 - x).

#ifndef BARGAIN_NASH_PRODUCT_HPP
#define BARGAIN_NASH_PRODUCT_HPP

#include <cmath>
#include <cstddef>
#include <limits>

#include "bargain/golden_section.hpp"
#include "bargain/types.hpp"

namespace bargain {

struct NashWeights {
  double alpha = 1.0;
  double beta = 1.0;

  static NashWeights from_spec(const MarketSpec& spec) {
    return NashWeights{1.0 / (1.0 - spec.seller_average()),
                       1.0 / (1.0 - spec.buyer_average())};
  }

  // log of x^alpha (1 - x)^beta
  double log_product(double x) const {
    return alpha * std::log(x) + beta * std::log1p(-x);
  }

  // log_product(u) - log_product(v), evaluated without cancellation.
  double log_ratio(double u, double v) const {
    return alpha * std::log1p((u - v) / v) + beta * std::log1p((v - u) / (1.0 - v));
  }
};

struct NashSearchOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 500;
  std::size_t coarse_points = 64;
};

namespace detail {

// Coarse scan of (0, 1); the maximum of a unimodal objective lies between the
// neighbours of the best sample.
inline Bracket coarse_bracket(const NashWeights& w, std::size_t points) {
  if (points < 1) throw PreconditionViolation("coarse_bracket: need at least one point");
  const double step = 1.0 / static_cast<double>(points + 1);
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= points; ++k) {
    const double v = w.log_product(static_cast<double>(k) * step);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  if (best == 0) {
    throw NonConvergence("nash_product_argmax: no finite objective value on the coarse grid");
  }
  return Bracket{static_cast<double>(best - 1) * step, static_cast<double>(best + 1) * step};
}

}  // namespace detail

// Share x maximizing x^alpha (1 - x)^beta, located to within `x_tolerance`.
inline double weighted_nash_share(const NashWeights& w, double x_tolerance,
                                  const NashSearchOptions& opts = {}) {
  if (!(w.alpha > 0.0 && w.beta > 0.0)) {
    throw PreconditionViolation("weighted_nash_share: weights must be positive");
  }
  const Bracket start = detail::coarse_bracket(w, opts.coarse_points);
  const auto better = [&](double u, double v) { return w.log_ratio(u, v) > 0.0; };
  return golden_section_search(better, start, x_tolerance, opts.max_iterations).argmax;
}

// Price maximizing the representative Nash product, to within
// `opts.tolerance` in price units.
inline Price nash_product_argmax(const MarketSpec& spec, const NashSearchOptions& opts = {}) {
  if (!(opts.tolerance > 0.0)) {
    throw PreconditionViolation("nash_product_argmax: tolerance must be > 0");
  }
  const NashWeights w = NashWeights::from_spec(spec);
  const auto better = [&](double u, double v) { return w.log_ratio(u, v) > 0.0; };

  // dp/dx = 1/(1 - x)^2, so an x-width of tol (1 - hi)^2 bounds the price
  // width by tol. hi is only known once the first pass has moved away from 1.
  SearchResult r = golden_section_search(
      better, detail::coarse_bracket(w, opts.coarse_points), opts.tolerance, opts.max_iterations);
  const double hi = r.bracket.hi;
  const double x_tol = opts.tolerance * (1.0 - hi) * (1.0 - hi);
  if (x_tol < r.bracket.width()) {
    r = golden_section_search(better, r.bracket, x_tol, opts.max_iterations);
  }
  return Price::from_split(r.argmax);
}

inline Price nash_product_argmax(const MarketSpec& spec, double tolerance) {
  NashSearchOptions opts;
  opts.tolerance = tolerance;
  return nash_product_argmax(spec, opts);
}

}  // namespace bargain

#endif  // BARGAIN_NASH_PRODUCT_HPP
