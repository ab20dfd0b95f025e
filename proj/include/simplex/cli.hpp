#pragma once

// Subcommands of the `simplex` tool, written against streams so they can be
// driven directly from tests. Exit codes: 0 success, 1 failed check, 2 usage
// or input error.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "simplex/bench.hpp"
#include "simplex/check.hpp"
#include "simplex/core.hpp"
#include "simplex/oracles.hpp"
#include "simplex/text_io.hpp"

namespace simplex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Subcommand { project, bench, scatter, check };
enum class Algorithm { projsplx, michelot, bisection, dykstra };

[[nodiscard]] inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "projsplx") return Algorithm::projsplx;
  if (s == "michelot") return Algorithm::michelot;
  if (s == "bisection") return Algorithm::bisection;
  if (s == "dykstra") return Algorithm::dykstra;
  return std::nullopt;
}

struct CliConfig {
  Subcommand subcommand = Subcommand::project;
  std::string input_path = "-";   // "-" is stdin
  std::string output_path = "-";  // "-" is stdout
  std::size_t n = 2;              // scatter dimension
  std::size_t n_min = 2;
  std::size_t n_max = 50;
  std::size_t point_count = 65536;
  std::uint64_t seed = 1;
  double radius = 1.0;
  Algorithm algorithm = Algorithm::projsplx;
  unsigned parallel = 1;  // worker threads; 1 is sequential
  unsigned repeats = 1;   // bench passes, fastest reported
  std::optional<double> variance;  // scatter; defaults per n
};

/// Projects one vector with the selected routine. Dykstra non-convergence
/// is reported on `warn` and the last iterate returned.
[[nodiscard]] inline std::vector<double> run_algorithm(Algorithm alg,
                                                       std::span<const double> y,
                                                       double radius,
                                                       std::ostream* warn = nullptr) {
  switch (alg) {
    case Algorithm::michelot:
      return oracles::michelot_project(y, radius);
    case Algorithm::bisection:
      return oracles::bisection_project(y, {200, 1e-14}, radius).x;
    case Algorithm::dykstra: {
      auto r = oracles::dykstra_project(y, {100000, 1e-13}, radius);
      if (!r.converged && warn) {
        *warn << "warning: dykstra stopped after " << r.iterations
              << " iterations, last step " << r.residual << '\n';
      }
      return std::move(r.x);
    }
    case Algorithm::projsplx:
      break;
  }
  return project_simplex_scaled(y, radius).x;
}

/// Reads one vector per line, writes one projected vector per line in input
/// order. Blank lines are skipped with a warning. Nothing is written when
/// any line fails to parse.
inline int cmd_project(const CliConfig& cfg, std::istream& in, std::ostream& out,
                       std::ostream& err) {
  if (!(cfg.radius > 0.0) || !std::isfinite(cfg.radius)) {
    err << "error: --radius must be a finite positive number\n";
    return kExitUsage;
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_blank(line)) {
      err << "warning: line " << line_no << ": empty line skipped\n";
      continue;
    }
    try {
      rows.push_back(text::parse_vector(line, line_no));
    } catch (const text::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }

  std::vector<std::string> lines(rows.size());
  const auto work = [&](std::size_t begin, std::size_t end, std::ostream* warn) {
    for (std::size_t k = begin; k < end; ++k) {
      lines[k] = text::format_vector(run_algorithm(cfg.algorithm, rows[k], cfg.radius, warn));
    }
  };
  const unsigned threads = std::max(1u, cfg.parallel);
  if (threads == 1 || rows.size() < 2) {
    work(0, rows.size(), &err);
  } else {
    const std::size_t chunk = (rows.size() + threads - 1) / threads;
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t b = std::min(rows.size(), w * chunk);
      const std::size_t e = std::min(rows.size(), b + chunk);
      workers.emplace_back([&, b, e] { work(b, e, nullptr); });
    }
  }
  for (const auto& l : lines) out << l << '\n';
  return out ? kExitOk : kExitUsage;
}

inline int cmd_bench(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n_min < 2 || cfg.n_max < cfg.n_min) {
    err << "error: need 2 <= --n-min <= --n-max\n";
    return kExitUsage;
  }
  if (cfg.point_count < 1) {
    err << "error: --points must be >= 1\n";
    return kExitUsage;
  }
  try {
    const auto records = bench::run_timing_sweep(
        cfg.n_min, cfg.n_max, cfg.point_count, cfg.seed,
        {std::max(1u, cfg.repeats), std::max(1u, cfg.parallel)});
    bench::emit_csv(records, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

inline int cmd_scatter(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n != 2 && cfg.n != 3) {
    err << "error: --n must be 2 or 3\n";
    return kExitUsage;
  }
  const double variance = cfg.variance.value_or(bench::default_scatter_variance(cfg.n));
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    err << "error: --variance must be a finite positive number\n";
    return kExitUsage;
  }
  try {
    const auto records = bench::run_scatter_experiment(cfg.n, cfg.seed, variance);
    bench::emit_csv(records, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

inline int cmd_check(const CliConfig& cfg, std::ostream& out,
                     const check::Projector& proj = check::default_projector()) {
  out << "self-check, seed " << cfg.seed << '\n';
  const bool ok = check::print_report(check::run_checks(cfg.seed, proj), out);
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace simplex::cli
