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

#ifndef BARGAIN_GOLDEN_SECTION_HPP
#define BARGAIN_GOLDEN_SECTION_HPP

#include <cmath>
#include <cstddef>

#include "bargain/types.hpp"

namespace bargain {

struct Bracket {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

struct SearchResult {
  double argmax = 0.0;
  Bracket bracket;
  std::size_t iterations = 0;
};

// Golden-section search for the maximum of a unimodal function on `bracket`.
//
// `better(a, b)` must return true when the objective at a is strictly larger
// than at b. Taking a comparison instead of the objective lets callers
// evaluate f(a) - f(b) directly, which keeps the ordering reliable close to
// the optimum where f(a) and f(b) agree in all printed digits.
//
// Stops once the bracket is narrower than `tol` or stops shrinking in
// floating point; throws NonConvergence if `max_iterations` is reached first.
template <class Better>
SearchResult golden_section_search(Better&& better, Bracket bracket, double tol,
                                   std::size_t max_iterations) {
  if (!(bracket.lo < bracket.hi)) {
    throw PreconditionViolation("golden_section_search: empty bracket");
  }
  if (!(tol > 0.0)) {
    throw PreconditionViolation("golden_section_search: tolerance must be > 0");
  }
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  double a = bracket.lo;
  double b = bracket.hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);

  std::size_t it = 0;
  for (; it < max_iterations; ++it) {
    if (b - a <= tol || !(c < d)) {
      return SearchResult{0.5 * (a + b), Bracket{a, b}, it};
    }
    if (better(c, d)) {
      b = d;
      d = c;
      c = b - inv_phi * (b - a);
    } else {
      a = c;
      c = d;
      d = a + inv_phi * (b - a);
    }
  }
  if (b - a <= tol || !(c < d)) {
    return SearchResult{0.5 * (a + b), Bracket{a, b}, it};
  }
  throw NonConvergence("golden_section_search: iteration cap reached");
}

// Convenience overload over an objective function.
template <class F>
SearchResult golden_section_maximize(F&& f, Bracket bracket, double tol,
                                     std::size_t max_iterations = 500) {
  return golden_section_search([&](double u, double v) { return f(u) > f(v); }, bracket,
                               tol, max_iterations);
}

}  // namespace bargain

#endif  // BARGAIN_GOLDEN_SECTION_HPP
