#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "simplex/error.hpp"

namespace simplex {

/// Optimality certificate for a claimed projection pair (x, t) of y onto
/// {x >= 0, sum x = radius}. Returns the largest of
///   |sum x - radius|,
///   max_i max(-x_i, 0),
///   max over x_i > 0 of |y_i - x_i - t|,
///   max over x_i == 0 of max(y_i - t, 0).
/// The value is zero iff x = (y - t)_+ solves the projection exactly.
///
/// The split between x_i == 0 and x_i > 0 is an exact comparison; the
/// projection routines emit exact zeros through max(., 0).
template <std::floating_point Real>
[[nodiscard]] Real kkt_residual(std::span<const Real> y, std::span<const Real> x,
                                Real t, Real radius = Real(1)) {
  if (y.size() != x.size()) {
    throw InvalidInput("kkt_residual: y and x differ in length");
  }
  Real sum = 0;
  Real worst = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sum += x[i];
    if (x[i] < Real(0)) {
      worst = std::max(worst, -x[i]);
    } else if (x[i] > Real(0)) {
      worst = std::max(worst, std::abs(y[i] - x[i] - t));
    } else {
      worst = std::max(worst, std::max(y[i] - t, Real(0)));
    }
  }
  return std::max(worst, std::abs(sum - radius));
}

template <RealRange R1, RealRange R2>
  requires std::same_as<scalar_of<R1>, scalar_of<R2>>
[[nodiscard]] scalar_of<R1> kkt_residual(const R1& y, const R2& x,
                                         scalar_of<R1> t,
                                         scalar_of<R1> radius = 1) {
  return kkt_residual<scalar_of<R1>>(as_span(y), as_span(x), t, radius);
}

}  // namespace simplex
