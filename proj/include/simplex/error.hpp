#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace simplex {

/// Contiguous range of IEEE reals; the input type of every projection.
template <class R>
concept RealRange =
    std::ranges::contiguous_range<R> && std::ranges::sized_range<R> &&
    std::floating_point<std::remove_cv_t<std::ranges::range_value_t<R>>>;

template <RealRange R>
using scalar_of = std::remove_cv_t<std::ranges::range_value_t<R>>;

template <std::floating_point Real>
using RealVector = std::vector<Real>;

/// Thrown when an input violates a precondition (non-finite value, empty
/// vector, non-positive radius, mismatched lengths).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what,
                        std::optional<std::size_t> index = std::nullopt)
      : std::invalid_argument(what), index_(index) {}

  /// Zero-based position of the first offending component, if any.
  [[nodiscard]] std::optional<std::size_t> index() const noexcept {
    return index_;
  }

 private:
  std::optional<std::size_t> index_;
};

template <RealRange R>
[[nodiscard]] constexpr std::span<const scalar_of<R>> as_span(const R& r) {
  return std::span<const scalar_of<R>>(std::ranges::data(r),
                                       std::ranges::size(r));
}

/// Rejects empty vectors and the first component that is NaN or infinite.
template <std::floating_point Real>
void require_valid(std::span<const Real> y) {
  if (y.empty()) {
    throw InvalidInput("vector must have at least one component");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      throw InvalidInput("component " + std::to_string(i) + " is not finite",
                         i);
    }
  }
}

template <std::floating_point Real>
void require_finite_scalar(Real t, const char* name) {
  if (!std::isfinite(t)) {
    throw InvalidInput(std::string(name) + " must be finite");
  }
}

template <std::floating_point Real>
void require_positive_radius(Real a) {
  if (!std::isfinite(a) || !(a > Real(0))) {
    throw InvalidInput("radius must be a finite positive number");
  }
}

}  // namespace simplex
