#pragma once

// Seeded experiments around project_simplex: scatter data of random 2D/3D
// points and their projections, and a throughput sweep over the dimension.
// Results are written as plain numeric CSV.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "simplex/core.hpp"
#include "simplex/error.hpp"
#include "simplex/format.hpp"
#include "simplex/random.hpp"

namespace simplex::bench {

inline constexpr std::size_t kScatterPointCount = 1024;
inline constexpr double kFeasibilityTolerancePerDim = 1e-12;

struct BenchmarkRecord {
  std::size_t n{};
  std::size_t point_count{};
  std::uint64_t seed{};
  double wall_time_seconds{};
  double projections_per_second{};
  /// Worker threads used for the batch; 1 means the default sequential run.
  unsigned threads = 1;
};

struct ScatterRecord {
  RealVector<double> input_point;
  RealVector<double> projected_point;
};

struct TimingOptions {
  /// Number of round-robin passes over the sweep; the per-n minimum is kept.
  unsigned repeats = 1;
  unsigned threads = 1;
};

/// True when x >= 0 and |sum x - radius| <= 1e-12 * n.
[[nodiscard]] inline bool on_simplex(std::span<const double> x,
                                     double radius = 1.0) {
  double sum = 0.0;
  for (const double xi : x) {
    if (!(xi >= 0.0)) return false;
    sum += xi;
  }
  return std::abs(sum - radius) <=
         kFeasibilityTolerancePerDim * static_cast<double>(x.size());
}

/// `count` i.i.d. N(0, variance I_n) vectors from GaussianSource(seed).
[[nodiscard]] inline std::vector<RealVector<double>> sample_gaussian(
    std::size_t n, std::size_t count, double variance, std::uint64_t seed) {
  if (n < 1 || count < 1) {
    throw InvalidInput("sample_gaussian: n and count must be >= 1");
  }
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw InvalidInput("sample_gaussian: variance must be a finite positive number");
  }
  GaussianSource rng(seed, variance);
  std::vector<RealVector<double>> out(count, RealVector<double>(n));
  for (auto& v : out) {
    for (auto& c : v) c = rng();
  }
  return out;
}

/// 1 for the plane, 0.5 for 3-space, as in the classic demonstration.
[[nodiscard]] inline double default_scatter_variance(std::size_t n) {
  return n == 3 ? 0.5 : 1.0;
}

[[nodiscard]] inline std::vector<ScatterRecord> run_scatter_experiment(
    std::size_t n, std::uint64_t seed, double variance) {
  if (n != 2 && n != 3) {
    throw InvalidInput("scatter experiment supports n = 2 or n = 3 only");
  }
  auto points = sample_gaussian(n, kScatterPointCount, variance, seed);
  std::vector<ScatterRecord> out;
  out.reserve(points.size());
  for (auto& y : points) {
    auto x = project_simplex(y).x;
    if (!on_simplex(x)) {
      throw std::runtime_error("scatter experiment: projection left the simplex");
    }
    out.push_back({std::move(y), std::move(x)});
  }
  return out;
}

[[nodiscard]] inline std::vector<ScatterRecord> run_scatter_experiment(
    std::size_t n, std::uint64_t seed) {
  return run_scatter_experiment(n, seed, default_scatter_variance(n));
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline void project_range(std::span<const double> flat, std::size_t n,
                          std::size_t begin, std::size_t end,
                          std::vector<ProjectionResult<double>>& results) {
  for (std::size_t p = begin; p < end; ++p) {
    results[p] = project_simplex(flat.subspan(p * n, n));
  }
}

// Wall time of one pass over the batch, projection only.
inline double time_batch(std::span<const double> flat, std::size_t n,
                         std::size_t count, unsigned threads,
                         std::vector<ProjectionResult<double>>& results) {
  results.assign(count, {});
  const auto start = Clock::now();
  if (threads <= 1) {
    project_range(flat, n, 0, count, results);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t b = std::min(count, w * chunk);
      const std::size_t e = std::min(count, b + chunk);
      workers.emplace_back([&, b, e] { project_range(flat, n, b, e, results); });
    }
  }
  const auto stop = Clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace detail

/// One record per n in [n_min, n_max], ascending. Each n draws its batch of
/// N(0, I_n) points from derive_seed(seed, n); only the projection loop is
/// timed. With repeats > 1 the whole sweep is run that many times in
/// round-robin order and each n reports its fastest pass. Interference from
/// the rest of the machine only ever adds time, and a transient slowdown
/// lands on different n in different passes.
/// Every timed pass is preceded by an untimed pass over the same batch so
/// that each n starts from the same allocator state.
/// Throws std::runtime_error if any projected point is infeasible.
[[nodiscard]] inline std::vector<BenchmarkRecord> run_timing_sweep(
    std::size_t n_min, std::size_t n_max, std::size_t point_count,
    std::uint64_t seed, const TimingOptions& opts = {}) {
  if (n_min < 2 || n_max < n_min) {
    throw InvalidInput("timing sweep requires 2 <= n_min <= n_max");
  }
  if (point_count < 1) {
    throw InvalidInput("timing sweep requires point_count >= 1");
  }
  const unsigned repeats = std::max(1u, opts.repeats);
  const unsigned threads = std::max(1u, opts.threads);
  const std::size_t dims = n_max - n_min + 1;

  std::vector<std::vector<double>> times(dims);
  std::vector<ProjectionResult<double>> results;
  std::vector<double> flat;
  for (unsigned pass = 0; pass < repeats; ++pass) {
    for (std::size_t n = n_min; n <= n_max; ++n) {
      GaussianSource rng(derive_seed(seed, n));
      flat.resize(n * point_count);
      for (auto& c : flat) c = rng();

      detail::time_batch(flat, n, point_count, threads, results);
      if (pass == 0) {
        for (std::size_t p = 0; p < point_count; ++p) {
          if (!on_simplex(results[p].x)) {
            throw std::runtime_error("timing sweep: infeasible projection at n=" +
                                     std::to_string(n) + ", point " +
                                     std::to_string(p));
          }
        }
      }
      times[n - n_min].push_back(
          detail::time_batch(flat, n, point_count, threads, results));
    }
  }

  std::vector<BenchmarkRecord> records;
  records.reserve(dims);
  for (std::size_t k = 0; k < dims; ++k) {
    const auto& t = times[k];
    // Guard against a zero reading from a coarse clock.
    const double wall = std::max(*std::min_element(t.begin(), t.end()), 1e-9);
    records.push_back({n_min + k, point_count, seed, wall,
                       static_cast<double>(point_count) / wall, threads});
  }
  return records;
}

namespace detail {

inline void flush_line(std::ostream& os, const std::string& line) {
  os << line << '\n';
  if (!os) throw std::runtime_error("emit_csv: write to sink failed");
}

}  // namespace detail

/// Header "n,point_count,seed,wall_time_seconds,projections_per_second", plus
/// a trailing "threads" column when any record ran in parallel.
inline void emit_csv(std::span<const BenchmarkRecord> records, std::ostream& os) {
  if (records.empty()) throw InvalidInput("emit_csv: no records");
  const bool parallel = std::any_of(records.begin(), records.end(),
                                    [](const auto& r) { return r.threads > 1; });
  std::string line = "n,point_count,seed,wall_time_seconds,projections_per_second";
  if (parallel) line += ",threads";
  detail::flush_line(os, line);
  for (const auto& r : records) {
    line = std::to_string(r.n) + ',' + std::to_string(r.point_count) + ',' +
           std::to_string(r.seed) + ',';
    append_real(line, r.wall_time_seconds);
    line += ',';
    append_real(line, r.projections_per_second);
    if (parallel) line += ',' + std::to_string(r.threads);
    detail::flush_line(os, line);
  }
}

/// Header "y1,..,yn,x1,..,xn"; every record must have the same n.
inline void emit_csv(std::span<const ScatterRecord> records, std::ostream& os) {
  if (records.empty()) throw InvalidInput("emit_csv: no records");
  const std::size_t n = records.front().input_point.size();
  std::string line;
  for (std::size_t i = 1; i <= n; ++i) line += (i > 1 ? ",y" : "y") + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) line += ",x" + std::to_string(i);
  detail::flush_line(os, line);
  for (const auto& r : records) {
    if (r.input_point.size() != n || r.projected_point.size() != n) {
      throw InvalidInput("emit_csv: scatter records differ in dimension");
    }
    line.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (i) line += ',';
      append_real(line, r.input_point[i]);
    }
    for (const double v : r.projected_point) {
      line += ',';
      append_real(line, v);
    }
    detail::flush_line(os, line);
  }
}

}  // namespace simplex::bench
