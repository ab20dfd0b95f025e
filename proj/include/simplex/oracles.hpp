#pragma once

// Reference solvers for the simplex projection. They share no code path
// with core.hpp beyond input validation and the KKT certificate, and are
// slow on purpose: they exist to check the sort-and-scan routine.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "simplex/certificate.hpp"
#include "simplex/error.hpp"

namespace simplex::oracles {

struct OracleConfig {
  std::size_t max_iterations = 10000;
  /// Convergence threshold: successive-iterate distance for Dykstra, final
  /// bracket width for bisection.
  double tolerance = 1e-12;

  void validate() const {
    if (max_iterations < 1) {
      throw InvalidInput("OracleConfig: max_iterations must be >= 1");
    }
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
      throw InvalidInput("OracleConfig: tolerance must be a finite positive number");
    }
  }
};

template <std::floating_point Real>
struct IterativeResult {
  RealVector<Real> x;
  std::size_t iterations{};
  /// Dykstra: last successive-iterate distance. Bisection: final bracket width.
  Real residual{};
  /// False when max_iterations was hit first; x is then the last iterate.
  bool converged{};
};

template <std::floating_point Real>
struct BisectionResult : IterativeResult<Real> {
  Real threshold{};
};

/// Dykstra's alternating projections between the hyperplane {sum x = radius}
/// and the orthant {x >= 0}. Plain alternation would only find some point of
/// the intersection; the correction terms make the limit the projection.
template <RealRange R>
[[nodiscard]] IterativeResult<scalar_of<R>> dykstra_project(
    const R& y, const OracleConfig& cfg = {}, scalar_of<R> radius = 1) {
  using Real = scalar_of<R>;
  const auto v = as_span(y);
  require_valid(v);
  require_positive_radius(radius);
  cfg.validate();

  const std::size_t n = v.size();
  const Real tol = static_cast<Real>(cfg.tolerance);
  RealVector<Real> x(v.begin(), v.end());
  RealVector<Real> p(n, Real(0));  // hyperplane correction
  RealVector<Real> q(n, Real(0));  // orthant correction
  RealVector<Real> h(n);

  IterativeResult<Real> out;
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    Real shift = 0;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = x[i] + p[i];
      shift += h[i];
    }
    shift = (shift - radius) / static_cast<Real>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Real hi = h[i] - shift;
      p[i] = h[i] - hi;
      h[i] = hi;
    }
    Real step2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Real w = h[i] + q[i];
      const Real xi = std::max(w, Real(0));
      q[i] = w - xi;
      const Real d = xi - x[i];
      step2 += d * d;
      x[i] = xi;
    }
    out.iterations = k;
    out.residual = std::sqrt(step2);
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  return out;
}

/// Michelot's finite active-set method: project onto the affine set
/// {sum_{i in A} x_i = radius, x_i = 0 off A}, drop the indices that land at
/// or below zero, repeat until none do. At most n passes.
template <RealRange R>
[[nodiscard]] RealVector<scalar_of<R>> michelot_project(const R& y,
                                                        scalar_of<R> radius = 1) {
  using Real = scalar_of<R>;
  const auto v = as_span(y);
  require_valid(v);
  require_positive_radius(radius);

  const std::size_t n = v.size();
  std::vector<bool> active(n, true);
  std::size_t count = n;
  Real t = 0;
  for (;;) {
    Real sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) sum += v[i];
    }
    t = (sum - radius) / static_cast<Real>(count);
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i] && v[i] - t <= Real(0)) {
        active[i] = false;
        ++dropped;
      }
    }
    // sum_{A}(y_i - t) = radius > 0, so a pass can never empty A.
    if (dropped == 0) break;
    count -= dropped;
  }
  RealVector<Real> x(n, Real(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) x[i] = v[i] - t;
  }
  return x;
}

/// Solves the water-filling equation sum_i max(y_i - t, 0) = radius by
/// bisection on [min y - radius, max y]. The left side is continuous and
/// decreasing in t, at least n * radius at the left end and 0 at the right.
template <RealRange R>
[[nodiscard]] BisectionResult<scalar_of<R>> bisection_project(
    const R& y, const OracleConfig& cfg = {200, 1e-14},
    scalar_of<R> radius = 1) {
  using Real = scalar_of<R>;
  const auto v = as_span(y);
  require_valid(v);
  require_positive_radius(radius);
  cfg.validate();

  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  Real lo = *mn - radius;  // water level above radius
  Real hi = *mx;           // water level 0
  const Real tol = static_cast<Real>(cfg.tolerance);
  auto water = [&](Real t) {
    Real g = 0;
    for (const Real yi : v) g += std::max(yi - t, Real(0));
    return g;
  };

  BisectionResult<Real> out;
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    const Real mid = lo + (hi - lo) / Real(2);
    if (mid <= lo || mid >= hi) {
      // Bracket is down to adjacent floats.
      out.converged = true;
      break;
    }
    if (water(mid) > radius) {
      lo = mid;
    } else {
      hi = mid;
    }
    out.iterations = k;
    if (hi - lo <= tol) {
      out.converged = true;
      break;
    }
  }
  out.residual = hi - lo;
  out.threshold = lo + (hi - lo) / Real(2);
  out.x.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.x[i] = std::max(v[i] - out.threshold, Real(0));
  }
  return out;
}

using simplex::kkt_residual;

}  // namespace simplex::oracles
