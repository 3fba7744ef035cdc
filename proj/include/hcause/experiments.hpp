#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hcause/model.hpp"
#include "hcause/runner.hpp"

namespace hcause {

// Dimensionality recovery: IBP structures with a fixed K+, both samplers,
// both initializations.
struct Fig3Options {
  std::size_t N = 6;
  std::size_t T = 500;
  std::size_t datasets = 10;
  std::size_t iterations = 500;
  std::vector<std::size_t> k_values{1, 2, 3, 4};
  std::vector<SamplerKind> samplers{SamplerKind::kGibbs, SamplerKind::kRjmcmc};
  std::vector<InitMode> inits{InitMode::kEmpty, InitMode::kRandom};
  std::size_t init_k = 10;
  ModelParams params{0.01, 0.9, 0.1, 3.0};
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t max_tries = 1'000'000;
  std::string k_prior = "poisson";
  DimensionRatio ratio = DimensionRatio::kOrdered;
  ThetaDenominator theta = ThetaDenominator::kPredictive;
};

struct Fig3Run {
  SamplerKind sampler;
  InitMode init;
  std::size_t k_true = 0;
  std::size_t dataset = 0;
  double expected_dim = 0.0;  // E[K] for the finite model, E[K+] otherwise
  double expected_k_plus = 0.0;
  std::string error;
};

struct Fig3Row {
  SamplerKind sampler;
  InitMode init;
  std::size_t k_true = 0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double mean_dim = 0.0;
  double sd_dim = 0.0;
  double mean_abs_error = 0.0;
  double mean_bias = 0.0;
};

struct Fig3Result {
  std::vector<Fig3Run> runs;
  std::vector<Fig3Row> rows;
};

Fig3Result run_fig3(const Fig3Options& options);

// Structure recovery on the canonical graphs, errors tracked at
// checkpoint iterations.
struct Fig4Options {
  std::vector<std::string> structures{"degree1", "disconnected", "undercomplete",
                                      "overcomplete"};
  std::vector<SamplerKind> samplers{SamplerKind::kGibbs, SamplerKind::kRjmcmc};
  std::size_t T = 150;
  std::size_t datasets = 10;
  std::size_t iterations = 500;
  std::vector<std::size_t> checkpoints{1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000};
  ModelParams params{0.01, 0.9, 0.1, 3.0};
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::string k_prior = "poisson";
  DimensionRatio ratio = DimensionRatio::kOrdered;
  ThetaDenominator theta = ThetaDenominator::kPredictive;
};

struct Fig4Point {
  std::string structure;
  SamplerKind sampler;
  std::size_t dataset = 0;
  std::size_t iteration = 0;
  double in_degree_error = 0.0;
  double structure_error = 0.0;
  double wall_seconds = 0.0;
};

struct Fig4Row {
  std::string structure;
  SamplerKind sampler;
  std::size_t iteration = 0;
  std::size_t runs = 0;
  double mean_in_degree = 0.0, sd_in_degree = 0.0;
  double mean_structure = 0.0, sd_structure = 0.0;
  double mean_wall_seconds = 0.0, sd_wall_seconds = 0.0;
};

struct Fig4Result {
  std::vector<Fig4Point> points;
  std::vector<Fig4Row> rows;
  std::vector<std::string> errors;
};

Fig4Result run_fig4(const Fig4Options& options);

// Sample mean and standard deviation (n - 1 denominator; 0 for n < 2).
std::pair<double, double> mean_sd(const std::vector<double>& values);

void write_fig3(const std::filesystem::path& dir, const Fig3Result& result);
// Error tables go to fig4.csv; timings to fig4_runtime.csv so the error
// table stays reproducible byte for byte.
void write_fig4(const std::filesystem::path& dir, const Fig4Result& result);

// Runs `fn(0..n-1)` on up to `jobs` threads; results land by index so the
// output never depends on scheduling.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace hcause
