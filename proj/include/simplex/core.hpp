#pragma once

// Exact Euclidean projection onto the canonical simplex
//   { x in R^n : x_i >= 0, sum_i x_i = 1 }
// by sorting and scanning the n closed-form threshold candidates, together
// with the dual quantities the method is built on: the clipped vector
// z(t), the univariate objective f(t) = t + ||z(t) - y||^2 / 2 and its
// derivative, the conjugate max_i y_i of the simplex indicator, and the
// proximity operator of that conjugate.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "simplex/certificate.hpp"
#include "simplex/error.hpp"

namespace simplex {

/// Ascending copy of a vector plus its suffix sums.
///
/// With the 1-based order statistics y_(1) <= ... <= y_(n),
/// suffix_sum(i) = y_(i+1) + ... + y_(n) for i = 0..n, so suffix_sum(0) is
/// the total and suffix_sum(n) == 0.
template <std::floating_point Real>
class SortedVector {
 public:
  explicit SortedVector(std::span<const Real> y) : sorted_(y.begin(), y.end()) {
    require_valid(y);
    // Tie order is irrelevant downstream.
    std::sort(sorted_.begin(), sorted_.end());
    const std::size_t n = sorted_.size();
    suffix_.assign(n + 1, Real(0));
    for (std::size_t i = n; i-- > 0;) {
      suffix_[i] = suffix_[i + 1] + sorted_[i];
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }
  [[nodiscard]] std::span<const Real> values() const noexcept { return sorted_; }
  [[nodiscard]] std::span<const Real> suffix_sums() const noexcept {
    return suffix_;
  }

  /// y_(i), 1-based.
  [[nodiscard]] Real order_statistic(std::size_t i) const {
    return sorted_[i - 1];
  }
  [[nodiscard]] Real suffix_sum(std::size_t i) const { return suffix_[i]; }
  [[nodiscard]] Real min() const { return sorted_.front(); }
  [[nodiscard]] Real max() const { return sorted_.back(); }

 private:
  std::vector<Real> sorted_;
  std::vector<Real> suffix_;
};

template <std::floating_point Real>
struct ThresholdResult {
  Real t_hat{};
  /// Index i of the accepted candidate t_i; 0 is the fallback t_0 = (sum y - a) / n.
  std::size_t accept_index{};
  /// n - i, the number of components strictly above t_hat in exact arithmetic.
  std::size_t active_count{};
};

template <std::floating_point Real>
struct ProjectionResult {
  RealVector<Real> x;
  ThresholdResult<Real> threshold;
  Real sum_residual{};
  Real kkt_residual{};
};

template <std::floating_point Real>
struct Candidate {
  std::size_t index{};
  Real value{};
};

template <RealRange R>
[[nodiscard]] SortedVector<scalar_of<R>> sort_ascending(const R& y) {
  return SortedVector<scalar_of<R>>(as_span(y));
}

/// All n candidates t_i = (suffix_sum(i) - radius) / (n - i), i = 0..n-1.
/// Diagnostic helper; find_threshold evaluates them lazily.
template <std::floating_point Real>
[[nodiscard]] std::vector<Candidate<Real>> threshold_candidates(
    const SortedVector<Real>& s, Real radius = Real(1)) {
  const std::size_t n = s.size();
  std::vector<Candidate<Real>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({i, (s.suffix_sum(i) - radius) / static_cast<Real>(n - i)});
  }
  return out;
}

/// Scans i = n-1 down to 1 and accepts the first t_i with t_i >= y_(i);
/// otherwise returns t_0. The comparison is exact: at a tie t_i == y_(i)
/// both neighbouring pieces give the same threshold.
template <std::floating_point Real>
[[nodiscard]] ThresholdResult<Real> find_threshold(const SortedVector<Real>& s,
                                                   Real radius = Real(1)) {
  const std::size_t n = s.size();
  const auto sorted = s.values();
  const auto suffix = s.suffix_sums();
  for (std::size_t i = n - 1; i >= 1; --i) {
    const Real t = (suffix[i] - radius) / static_cast<Real>(n - i);
    if (t >= sorted[i - 1]) {
      return {t, i, n - i};
    }
  }
  return {(suffix[0] - radius) / static_cast<Real>(n), 0, n};
}

namespace detail {

// find_threshold without the full sort. The scan consumes order statistics
// from the top and stops early, and t_hat >= max(y) - radius, so components
// at or below that bound are sorted only if the scan actually reaches them.
// The candidates, comparisons and the summation order are those of
// find_threshold(SortedVector(y), radius), so the result is bit-identical.
template <std::floating_point Real>
ThresholdResult<Real> scan_threshold(std::span<const Real> y, Real radius,
                                     std::vector<Real>& desc) {
  const std::size_t n = y.size();
  const Real bound = *std::max_element(y.begin(), y.end()) - radius;
  desc.resize(n);
  std::size_t head = 0;
  std::size_t tail = n;
  // Branch-free partition: above the bound to the front, the rest to the back.
  for (const Real v : y) {
    const bool above = v > bound;
    desc[head] = v;
    desc[tail - 1] = v;
    head += above;
    tail -= !above;
  }
  const auto by_desc = std::greater<Real>{};
  const auto at = [&](std::size_t k) {
    return desc.begin() + static_cast<std::ptrdiff_t>(k);
  };
  std::sort(desc.begin(), at(head), by_desc);

  // desc[0, ordered) holds y_(n), y_(n-1), ... in final position. The scan
  // typically needs one element below the bound (the largest inactive one),
  // so the tail's maximum is selected first and the rest sorted on demand.
  std::size_t ordered = head;
  const auto order_through = [&](std::size_t k) {
    if (k < ordered) return;
    if (ordered == head) {
      std::iter_swap(at(head), std::max_element(at(head), desc.end()));
      ordered = head + 1;
    }
    if (k >= ordered) {
      std::sort(at(ordered), desc.end(), by_desc);
      ordered = n;
    }
  };

  // desc[k] is y_(n-k). The head is empty when max(y) - radius rounds to
  // max(y).
  order_through(0);
  Real suffix = 0;
  for (std::size_t i = n - 1; i >= 1; --i) {
    suffix += desc[n - 1 - i];
    order_through(n - i);
    const Real t = (suffix - radius) / static_cast<Real>(n - i);
    if (t >= desc[n - i]) {
      return {t, i, n - i};
    }
  }
  order_through(n - 1);
  suffix += desc[n - 1];
  return {(suffix - radius) / static_cast<Real>(n), 0, n};
}

template <std::floating_point Real>
ProjectionResult<Real> project(std::span<const Real> y, Real radius) {
  require_valid(y);
  ProjectionResult<Real> r;
  {
    std::vector<Real> scratch;
    r.threshold = scan_threshold(y, radius, scratch);
  }
  const Real t = r.threshold.t_hat;
  r.x.resize(y.size());
  // Same terms as kkt_residual(); x >= 0 by construction, and a zero x_i
  // has y_i - t <= 0, so only the stationarity term can be nonzero.
  Real sum = 0;
  Real stationarity = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Real xi = std::max(y[i] - t, Real(0));
    r.x[i] = xi;
    sum += xi;
    const Real gap = xi > Real(0) ? std::abs(y[i] - xi - t) : Real(0);
    stationarity = std::max(stationarity, gap);
  }
  r.sum_residual = std::abs(sum - radius);
  r.kkt_residual = std::max(stationarity, r.sum_residual);
  return r;
}

}  // namespace detail

/// Projection of y onto the canonical simplex, x = (y - t_hat)_+, returned in
/// the caller's component order.
template <RealRange R>
[[nodiscard]] ProjectionResult<scalar_of<R>> project_simplex(const R& y) {
  return detail::project(as_span(y), scalar_of<R>(1));
}

/// Projection onto { x >= 0, sum x = radius }, radius > 0.
template <RealRange R>
[[nodiscard]] ProjectionResult<scalar_of<R>> project_simplex_scaled(
    const R& y, scalar_of<R> radius) {
  require_positive_radius(radius);
  return detail::project(as_span(y), radius);
}

/// z(t): components above t are clipped down to t, the rest pass through.
template <RealRange R>
[[nodiscard]] RealVector<scalar_of<R>> clip_at(const R& y, scalar_of<R> t) {
  using Real = scalar_of<R>;
  const auto v = as_span(y);
  require_valid(v);
  require_finite_scalar(t, "t");
  RealVector<Real> z(v.begin(), v.end());
  for (auto& zi : z) {
    if (zi > t) zi = t;
  }
  return z;
}

namespace detail {

// Number of order statistics <= t, i.e. the piece index i with
// y_(i) <= t < y_(i+1) under the half-open convention.
template <std::floating_point Real>
std::size_t piece_index(const SortedVector<Real>& s, Real t) {
  const auto v = s.values();
  return static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), t) -
                                  v.begin());
}

}  // namespace detail

/// Minimum of t + ||z - y||^2 / 2 over z with max_i z_i = t:
///   f(t) = t + (1/2) sum_{j > i} (t - y_(j))^2   for y_(i) <= t < y_(i+1),
///   f(t) = t + (1/2) (t - y_(n))^2               for t >= y_(n),
/// where the first form with i = 0 covers t < y_(1). Above y_(n) the largest
/// component has to be raised to t to meet the constraint.
template <std::floating_point Real>
[[nodiscard]] Real eval_f(const SortedVector<Real>& s, Real t) {
  require_finite_scalar(t, "t");
  const auto v = s.values();
  const std::size_t i = detail::piece_index(s, t);
  if (i == v.size()) {
    const Real d = t - s.max();
    return t + d * d / Real(2);
  }
  Real sq = 0;
  for (std::size_t k = i; k < v.size(); ++k) {
    const Real d = t - v[k];
    sq += d * d;
  }
  return t + sq / Real(2);
}

/// f'(t) = 1 + sum_{j > i} (t - y_(j)) on the interior pieces, from the
/// suffix sums in O(log n), and 1 + (t - y_(n)) for t >= y_(n).
template <std::floating_point Real>
[[nodiscard]] Real eval_f_prime(const SortedVector<Real>& s, Real t) {
  require_finite_scalar(t, "t");
  const std::size_t i = detail::piece_index(s, t);
  if (i == s.size()) {
    return Real(1) + (t - s.max());
  }
  return Real(1) + static_cast<Real>(s.size() - i) * t - s.suffix_sum(i);
}

/// Conjugate of the simplex indicator: the largest component.
template <RealRange R>
[[nodiscard]] scalar_of<R> fenchel_max(const R& y) {
  const auto v = as_span(y);
  require_valid(v);
  return *std::max_element(v.begin(), v.end());
}

/// Proximity operator of the max function, obtained from the projection by
/// the Moreau decomposition: prox_max(y) = y - project_simplex(y).x.
template <RealRange R>
[[nodiscard]] RealVector<scalar_of<R>> prox_max(const R& y) {
  const auto v = as_span(y);
  const auto p = detail::project(v, scalar_of<R>(1));
  RealVector<scalar_of<R>> z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    z[i] = v[i] - p.x[i];
  }
  return z;
}

}  // namespace simplex
