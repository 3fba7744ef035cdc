#include "hcause/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "hcause/gibbs.hpp"
#include "hcause/io.hpp"

namespace hcause {

std::string to_string(SamplerKind kind) {
  return kind == SamplerKind::kGibbs ? "gibbs" : "rjmcmc";
}

std::string to_string(InitMode mode) { return mode == InitMode::kEmpty ? "empty" : "random"; }

SamplerKind parse_sampler(const std::string& name) {
  if (name == "gibbs") return SamplerKind::kGibbs;
  if (name == "rjmcmc") return SamplerKind::kRjmcmc;
  throw std::invalid_argument("unknown sampler '" + name + "' (expected gibbs or rjmcmc)");
}

InitMode parse_init(const std::string& name, std::size_t* init_k) {
  if (name == "empty") return InitMode::kEmpty;
  if (name.rfind("random", 0) == 0) {
    const std::string digits = name.substr(6);
    if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
      throw std::invalid_argument("bad init '" + name + "' (expected random<K>)");
    if (init_k) *init_k = digits.empty() ? 10 : std::stoul(digits);
    return InitMode::kRandom;
  }
  throw std::invalid_argument("unknown init '" + name + "' (expected empty or random10)");
}

namespace {

std::string ratio_name(DimensionRatio r) { return r == DimensionRatio::kOrdered ? "ordered" : "printed"; }
std::string theta_name(ThetaDenominator t) {
  return t == ThetaDenominator::kPredictive ? "predictive" : "printed";
}

}  // namespace

void apply_config_json(FitConfig& c, const nlohmann::json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "sampler") c.sampler = parse_sampler(value.get<std::string>());
    else if (key == "init") c.init = parse_init(value.get<std::string>(), &c.init_k);
    else if (key == "init_k") c.init_k = value.get<std::size_t>();
    else if (key == "iterations") c.iterations = value.get<std::size_t>();
    else if (key == "burn_in") c.burn_in = value.get<std::size_t>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "params") {
      for (const auto& [pk, pv] : value.items()) {
        if (pk == "epsilon") c.params.epsilon = pv.get<double>();
        else if (pk == "lambda") c.params.lambda = pv.get<double>();
        else if (pk == "p") c.params.p = pv.get<double>();
        else if (pk == "alpha") c.params.alpha = pv.get<double>();
        else throw std::invalid_argument("unknown params key '" + pk + "'");
      }
    } else if (key == "infer_hypers") c.hypers.infer = value.get<bool>();
    else if (key == "lambda_step") c.hypers.lambda_step = value.get<double>();
    else if (key == "epsilon_step") c.hypers.epsilon_step = value.get<double>();
    else if (key == "k_prior") c.k_prior = value.get<std::string>();
    else if (key == "rj_ratio") {
      const auto v = value.get<std::string>();
      if (v != "ordered" && v != "printed") throw std::invalid_argument("rj_ratio must be ordered or printed");
      c.ratio = v == "ordered" ? DimensionRatio::kOrdered : DimensionRatio::kPrinted;
    } else if (key == "theta_denominator") {
      const auto v = value.get<std::string>();
      if (v != "predictive" && v != "printed")
        throw std::invalid_argument("theta_denominator must be predictive or printed");
      c.theta = v == "predictive" ? ThetaDenominator::kPredictive : ThetaDenominator::kPrinted;
    } else if (key == "timing") c.timing = value.get<bool>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

nlohmann::ordered_json config_to_json(const FitConfig& c) {
  nlohmann::ordered_json j;
  j["sampler"] = to_string(c.sampler);
  j["init"] = c.init == InitMode::kEmpty ? "empty" : "random" + std::to_string(c.init_k);
  j["iterations"] = c.iterations;
  j["burn_in"] = c.burn_in;
  j["seed"] = c.seed;
  j["params"] = {{"epsilon", c.params.epsilon},
                 {"lambda", c.params.lambda},
                 {"p", c.params.p},
                 {"alpha", c.params.alpha}};
  j["infer_hypers"] = c.hypers.infer;
  j["lambda_step"] = c.hypers.lambda_step;
  j["epsilon_step"] = c.hypers.epsilon_step;
  j["k_prior"] = c.k_prior;
  j["rj_ratio"] = ratio_name(c.ratio);
  j["theta_denominator"] = theta_name(c.theta);
  j["timing"] = c.timing;
  return j;
}

nlohmann::ordered_json to_json(const TraceRecord& r) {
  nlohmann::ordered_json j;
  j["iteration"] = r.iteration;
  j["k"] = r.k;
  j["k_plus"] = r.k_plus;
  j["epsilon"] = r.params.epsilon;
  j["lambda"] = r.params.lambda;
  j["p"] = r.params.p;
  j["alpha"] = r.params.alpha;
  // JSON has no -inf; null marks an impossible state.
  if (std::isfinite(r.log_joint)) j["log_joint"] = r.log_joint;
  else j["log_joint"] = nullptr;
  if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
  return j;
}

TraceRecord trace_record_from_json(const nlohmann::json& j) {
  TraceRecord r;
  r.iteration = j.at("iteration").get<std::size_t>();
  r.k = j.at("k").get<std::size_t>();
  r.k_plus = j.at("k_plus").get<std::size_t>();
  r.params.epsilon = j.at("epsilon").get<double>();
  r.params.lambda = j.at("lambda").get<double>();
  r.params.p = j.at("p").get<double>();
  r.params.alpha = j.at("alpha").get<double>();
  const auto& lj = j.at("log_joint");
  r.log_joint = lj.is_null() ? -std::numeric_limits<double>::infinity() : lj.get<double>();
  if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

SamplerState initial_state(std::size_t N, std::size_t T, const FitConfig& config, Rng& rng) {
  const ModelParams& params = config.params;
  if (config.init == InitMode::kEmpty) {
    if (config.sampler == SamplerKind::kGibbs) return SamplerState::empty(N, T, params);
    // The finite model starts from one unlinked cause.
    BinaryMatrix Y(1, T);
    for (std::size_t t = 0; t < T; ++t) Y.set(0, t, rng.bernoulli(params.p));
    return SamplerState(BinaryMatrix(N, 1), std::move(Y), params);
  }
  const std::size_t K = config.init_k;
  if (K == 0 && config.sampler == SamplerKind::kRjmcmc)
    throw std::invalid_argument("the finite model needs init_k >= 1");
  BinaryMatrix Z(N, K);
  for (std::size_t k = 0; k < K; ++k) {
    // Every starting cause is linked, so K = K+.
    do {
      for (std::size_t i = 0; i < N; ++i) Z.set(i, k, rng.bernoulli(0.5));
    } while (N > 0 && Z.col_sum(k) == 0);
  }
  BinaryMatrix Y(K, T);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t t = 0; t < T; ++t) Y.set(k, t, rng.bernoulli(0.5));
  return SamplerState(std::move(Z), std::move(Y), params);
}

namespace {

TraceRecord snapshot(std::size_t iteration, const SamplerState& s, const BinaryMatrix& X,
                     SamplerKind sampler) {
  TraceRecord r;
  r.iteration = iteration;
  r.k_plus = s.k_plus();
  r.k = sampler == SamplerKind::kGibbs ? r.k_plus : s.K();
  r.params = s.params();
  ZPrior prior = IbpPrior{};
  if (sampler == SamplerKind::kRjmcmc) prior = FinitePrior{s.K()};
  r.log_joint = log_joint(X, s.Z(), s.Y(), s.params(), prior);
  return r;
}

}  // namespace

FitResult run_fit(const BinaryMatrix& X, const FitConfig& config,
                  const IterationObserver& observer) {
  config.params.validate();
  if (X.rows() == 0) throw std::invalid_argument("X has no observed variables");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  Rng rng(config.seed);
  const std::size_t N = X.rows();
  FitResult result;
  FiniteState finite{initial_state(N, X.cols(), config, rng), {}};
  SamplerState& state = finite.state;
  if (config.sampler == SamplerKind::kRjmcmc) {
    finite.options.k_prior = parse_k_prior(config.k_prior, config.params.alpha, N);
    finite.options.ratio = config.ratio;
    finite.options.theta = config.theta;
  }
  HyperOptions hypers = config.hypers;
  // The finite model's alpha has no conjugate update; it stays fixed there.
  if (config.sampler == SamplerKind::kRjmcmc) hypers.update_alpha = false;

  auto record = [&](std::size_t iteration) {
    TraceRecord r = snapshot(iteration, state, X, config.sampler);
    if (config.timing) r.wall_ms = elapsed_ms();
    result.trace.push_back(r);
  };
  record(0);

  SummaryAccumulator acc(N);
  for (std::size_t it = 1; it <= config.iterations; ++it) {
    if (config.sampler == SamplerKind::kGibbs)
      gibbs_sweep(state, X, rng);
    else
      rjmcmc_sweep(finite, X, rng);
    update_hypers(state, X, rng, hypers, &result.hyper_stats);
    record(it);
    if (it > config.burn_in) {
      const std::size_t k = config.sampler == SamplerKind::kGibbs ? state.k_plus() : state.K();
      acc.add(state.Z(), state.k_plus(), k);
    }
    if (observer) observer(it, state, acc);
  }
  if (acc.count() == 0) {
    // Nothing past burn-in: summarize the state we ended on.
    const std::size_t k = config.sampler == SamplerKind::kGibbs ? state.k_plus() : state.K();
    acc.add(state.Z(), state.k_plus(), k);
  }
  result.summary = PosteriorSummary::from(acc);
  result.final_state = state;
  return result;
}

nlohmann::ordered_json summary_to_json(const FitResult& result, const FitConfig& config) {
  const auto& s = result.summary;
  nlohmann::ordered_json j;
  j["sampler"] = to_string(config.sampler);
  j["seed"] = config.seed;
  j["sample_count"] = s.sample_count;
  j["mean_k_plus"] = s.mean_k_plus;
  j["mean_k"] = s.mean_k;
  nlohmann::ordered_json zzt = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < s.N; ++a) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t b = 0; b < s.N; ++b) row.push_back(s.zzt(a, b));
    zzt.push_back(row);
  }
  j["mean_zzt"] = zzt;
  const auto& fs = result.final_state;
  j["final_state"] = {{"Z", fs.Z().to_rows()},
                      {"Y", fs.Y().to_rows()},
                      {"params",
                       {{"epsilon", fs.params().epsilon},
                        {"lambda", fs.params().lambda},
                        {"p", fs.params().p},
                        {"alpha", fs.params().alpha}}}};
  if (config.hypers.infer && result.hyper_stats.steps > 0) {
    const double n = static_cast<double>(result.hyper_stats.steps);
    j["acceptance"] = {{"lambda", result.hyper_stats.lambda_accepts / n},
                       {"epsilon", result.hyper_stats.epsilon_accepts / n}};
  }
  j["config"] = config_to_json(config);
  return j;
}

PosteriorSummary summary_from_json(const nlohmann::json& j) {
  PosteriorSummary s;
  try {
    const auto& zzt = j.at("mean_zzt");
    s.N = zzt.size();
    for (const auto& row : zzt) {
      if (row.size() != s.N) throw DataError("mean_zzt is not square");
      for (const auto& v : row) s.mean_zzt.push_back(v.get<double>());
    }
    s.mean_k_plus = j.at("mean_k_plus").get<double>();
    s.mean_k = j.value("mean_k", s.mean_k_plus);
    s.sample_count = j.at("sample_count").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed summary: ") + e.what());
  }
  return s;
}

void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& r : trace) out << to_json(r).dump() << '\n';
}

std::vector<TraceRecord> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(trace_record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": unreadable trace record (truncated file?): " + e.what());
    }
  }
  return out;
}

}  // namespace hcause
