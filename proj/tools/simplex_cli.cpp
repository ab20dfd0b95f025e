#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "simplex/cli.hpp"

namespace {

using simplex::cli::Algorithm;
using simplex::cli::CliConfig;
using simplex::cli::Subcommand;

// Opens --output, or returns std::cout for "-".
std::ostream* open_output(const std::string& path, std::unique_ptr<std::ofstream>& file) {
  if (path == "-") return &std::cout;
  file = std::make_unique<std::ofstream>(path);
  return *file ? file.get() : nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  CLI::App app{"Euclidean projection onto the canonical simplex"};
  app.require_subcommand(1);

  const std::map<std::string, Algorithm> algorithms{{"projsplx", Algorithm::projsplx},
                                                    {"michelot", Algorithm::michelot},
                                                    {"bisection", Algorithm::bisection},
                                                    {"dykstra", Algorithm::dykstra}};

  auto* project = app.add_subcommand("project", "Project vectors read one per line");
  project->add_option("--input", cfg.input_path, "Input file ('-' for stdin)");
  project->add_option("--output", cfg.output_path, "Output file ('-' for stdout)");
  project->add_option("--radius", cfg.radius, "Target sum of the projection");
  project->add_option("--algorithm", cfg.algorithm, "projsplx, michelot, bisection or dykstra")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case));
  project->add_option("--parallel", cfg.parallel, "Worker threads");

  auto* bench = app.add_subcommand("bench", "Projection timing sweep over n, as CSV");
  bench->add_option("--n-min", cfg.n_min, "Smallest dimension");
  bench->add_option("--n-max", cfg.n_max, "Largest dimension");
  bench->add_option("--points", cfg.point_count, "Points per dimension");
  bench->add_option("--seed", cfg.seed, "RNG seed");
  bench->add_option("--repeats", cfg.repeats, "Round-robin passes; the fastest is reported");
  bench->add_option("--parallel", cfg.parallel, "Worker threads per batch");
  bench->add_option("--output", cfg.output_path, "Output file ('-' for stdout)");

  auto* scatter = app.add_subcommand("scatter", "Random 2D/3D points and their projections, as CSV");
  scatter->add_option("--n", cfg.n, "Dimension, 2 or 3");
  scatter->add_option("--seed", cfg.seed, "RNG seed");
  scatter->add_option("--variance", cfg.variance, "Sample variance (default 1 for n=2, 0.5 for n=3)");
  scatter->add_option("--output", cfg.output_path, "Output file ('-' for stdout)");

  auto* check = app.add_subcommand("check", "Seeded self-check against the reference solvers");
  check->add_option("--seed", cfg.seed, "RNG seed");
  check->add_option("--output", cfg.output_path, "Output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return simplex::cli::kExitUsage;
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* out = open_output(cfg.output_path, file);
  if (!out) {
    std::cerr << "error: cannot open output '" << cfg.output_path << "'\n";
    return simplex::cli::kExitUsage;
  }

  if (project->parsed()) {
    if (cfg.input_path == "-") return simplex::cli::cmd_project(cfg, std::cin, *out, std::cerr);
    std::ifstream in(cfg.input_path);
    if (!in) {
      std::cerr << "error: cannot open input '" << cfg.input_path << "'\n";
      return simplex::cli::kExitUsage;
    }
    return simplex::cli::cmd_project(cfg, in, *out, std::cerr);
  }
  if (bench->parsed()) return simplex::cli::cmd_bench(cfg, *out, std::cerr);
  if (scatter->parsed()) return simplex::cli::cmd_scatter(cfg, *out, std::cerr);
  return simplex::cli::cmd_check(cfg, *out);
}
