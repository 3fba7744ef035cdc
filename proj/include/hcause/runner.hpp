#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcause/harness.hpp"
#include "hcause/hyper.hpp"
#include "hcause/model.hpp"
#include "hcause/rjmcmc.hpp"

namespace hcause {

enum class SamplerKind { kGibbs, kRjmcmc };
enum class InitMode { kEmpty, kRandom };

std::string to_string(SamplerKind kind);
std::string to_string(InitMode mode);
SamplerKind parse_sampler(const std::string& name);
// Accepts "empty", "random10" or "random<K>".
InitMode parse_init(const std::string& name, std::size_t* init_k = nullptr);

struct FitConfig {
  SamplerKind sampler = SamplerKind::kGibbs;
  InitMode init = InitMode::kEmpty;
  std::size_t init_k = 10;
  std::size_t iterations = 500;
  std::size_t burn_in = 0;
  std::uint64_t seed = 1;
  ModelParams params;  // fixed values, or the starting point when inferring
  HyperOptions hypers;
  std::string k_prior = "poisson";
  DimensionRatio ratio = DimensionRatio::kOrdered;
  ThetaDenominator theta = ThetaDenominator::kPredictive;
  // Adds wall-clock milliseconds to each trace record. Off by default
  // so traces stay byte-identical across runs.
  bool timing = false;
};

// Overlays the keys present in `j` onto `config`. Unknown keys throw.
void apply_config_json(FitConfig& config, const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const FitConfig& config);

struct TraceRecord {
  std::size_t iteration = 0;
  std::size_t k = 0;       // K for the finite model, K+ otherwise
  std::size_t k_plus = 0;
  ModelParams params;
  double log_joint = 0.0;
  std::optional<double> wall_ms;
};

nlohmann::ordered_json to_json(const TraceRecord& r);
TraceRecord trace_record_from_json(const nlohmann::json& j);

struct FitResult {
  std::vector<TraceRecord> trace;  // iteration 0 is the initial state
  PosteriorSummary summary;
  SamplerState final_state;
  HyperStats hyper_stats;
};

// Called after every completed iteration (1-based) with the running summary.
using IterationObserver =
    std::function<void(std::size_t iteration, const SamplerState&, const SummaryAccumulator&)>;

SamplerState initial_state(std::size_t N, std::size_t T, const FitConfig& config, Rng& rng);

// Runs the configured chain on X. The seed alone fixes every draw.
FitResult run_fit(const BinaryMatrix& X, const FitConfig& config,
                  const IterationObserver& observer = {});

nlohmann::ordered_json summary_to_json(const FitResult& result, const FitConfig& config);
// Reads the fields eval needs back out of a summary document.
PosteriorSummary summary_from_json(const nlohmann::json& j);

void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);
// Throws DataError naming the line when a record fails to parse, which is
// how a truncated trace shows up.
std::vector<TraceRecord> read_trace(const std::filesystem::path& path);

}  // namespace hcause
