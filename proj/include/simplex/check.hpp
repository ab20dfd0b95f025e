#pragma once

// Seeded self-check: feasibility, KKT optimality, agreement with the
// reference solvers and the structural invariants of the projection, at a
// scale that runs in about a second. Used by `simplex check`.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simplex/certificate.hpp"
#include "simplex/core.hpp"
#include "simplex/oracles.hpp"
#include "simplex/random.hpp"
#include "simplex/text_io.hpp"

namespace simplex::check {

using Projector = std::function<ProjectionResult<double>(std::span<const double>)>;

[[nodiscard]] inline Projector default_projector() {
  return [](std::span<const double> y) { return project_simplex(y); };
}

struct CheckOutcome {
  std::string name;
  std::size_t cases = 0;
  double worst = 0.0;
  double limit = 0.0;
  bool passed = true;
  std::vector<double> failing_input;
};

namespace detail {

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double norm2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Accumulates one check. A case passes when value <= allowed; the first
// failing input is kept for reproduction.
class Tally {
 public:
  Tally(std::string name, double limit) { out_.name = std::move(name); out_.limit = limit; }

  void record(std::span<const double> y, double value, double allowed) {
    ++out_.cases;
    out_.worst = std::max(out_.worst, value);
    if (!(value <= allowed) && out_.passed) {
      out_.passed = false;
      out_.failing_input.assign(y.begin(), y.end());
    }
  }

  CheckOutcome take() { return std::move(out_); }

 private:
  CheckOutcome out_;
};

}  // namespace detail

/// Runs every check on vectors drawn from `seed`; `proj` is the routine
/// under test (the library's project_simplex by default).
[[nodiscard]] inline std::vector<CheckOutcome> run_checks(
    std::uint64_t seed, const Projector& proj = default_projector()) {
  using detail::Tally;
  constexpr std::size_t kDims[] = {1, 2, 3, 5, 10, 50, 100};
  constexpr std::size_t kPerDim = 200;
  constexpr std::size_t kDykstraMaxDim = 10;

  Tally feas("feasibility (limit*n)", 1e-12);
  Tally kkt("kkt residual (limit*n)", 1e-12);
  Tally mich("michelot agreement", 1e-10);
  Tally bis("bisection agreement", 1e-10);
  Tally dyk("dykstra agreement (n<=10)", 1e-8);
  Tally idem("idempotence", 1e-15);
  Tally perm("permutation equivariance", 1e-15);
  Tally shift("translation (limit*(1+|c|))", 1e-12);
  Tally nonexp("nonexpansiveness", 1e-12);

  const oracles::OracleConfig dykstra_cfg{100000, 1e-12};
  for (const std::size_t n : kDims) {
    GaussianSource rng(derive_seed(seed, n));
    std::vector<double> y(n), z(n);
    for (std::size_t c = 0; c < kPerDim; ++c) {
      for (auto& v : y) v = rng();
      for (auto& v : z) v = rng();
      const double dim = static_cast<double>(n);
      const auto r = proj(y);
      const auto& x = r.x;

      double sum = 0.0, neg = 0.0;
      for (const double xi : x) {
        sum += xi;
        neg = std::max(neg, -xi);
      }
      feas.record(y, std::max(neg, std::abs(sum - 1.0)), 1e-12 * dim);
      kkt.record(y, kkt_residual<double>(y, x, r.threshold.t_hat), 1e-12 * dim);
      mich.record(y, detail::max_abs_diff(x, oracles::michelot_project(y)), 1e-10);
      bis.record(y, detail::max_abs_diff(x, oracles::bisection_project(y).x), 1e-10);
      if (n <= kDykstraMaxDim) {
        dyk.record(y, detail::max_abs_diff(x, oracles::dykstra_project(y, dykstra_cfg).x),
                   1e-8);
      }
      idem.record(y, detail::max_abs_diff(x, proj(x).x), 1e-15);

      std::vector<double> rev(y.rbegin(), y.rend());
      auto xr = proj(rev).x;
      std::reverse(xr.begin(), xr.end());
      perm.record(y, detail::max_abs_diff(x, xr), 1e-15);

      const double c_shift = 3.0 * rng();
      std::vector<double> moved(y);
      for (auto& v : moved) v += c_shift;
      shift.record(y, detail::max_abs_diff(x, proj(moved).x),
                   1e-12 * (1.0 + std::abs(c_shift)));

      const double lhs = detail::norm2(x, proj(z).x);
      const double rhs = detail::norm2(y, z);
      nonexp.record(y, std::max(0.0, lhs - rhs), 1e-12);
    }
  }

  std::vector<CheckOutcome> out;
  for (Tally* t : {&feas, &kkt, &mich, &bis, &dyk, &idem, &perm, &shift, &nonexp}) {
    out.push_back(t->take());
  }
  return out;
}

/// Prints one row per check, then the first failing input of each failed
/// check. Returns true iff every check passed. Output is a pure function of
/// the outcomes, so a fixed seed gives identical text.
inline bool print_report(const std::vector<CheckOutcome>& outcomes, std::ostream& os) {
  bool all = true;
  char row[160];
  for (const auto& o : outcomes) {
    std::snprintf(row, sizeof row, "%-28s cases=%-6zu worst=%.3e limit=%.1e  %s\n",
                  o.name.c_str(), o.cases, o.worst, o.limit, o.passed ? "PASS" : "FAIL");
    os << row;
    all = all && o.passed;
  }
  for (const auto& o : outcomes) {
    if (!o.passed) {
      os << "failing input for '" << o.name << "' (n=" << o.failing_input.size()
         << "): " << text::format_vector(o.failing_input) << '\n';
    }
  }
  os << (all ? "all checks passed\n" : "CHECK FAILED\n");
  return all;
}

}  // namespace simplex::check
