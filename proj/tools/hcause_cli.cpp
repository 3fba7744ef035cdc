// hcause: generate datasets, fit samplers, score summaries, replicate the
// synthetic experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcause/experiments.hpp"
#include "hcause/harness.hpp"
#include "hcause/ibp.hpp"
#include "hcause/io.hpp"
#include "hcause/runner.hpp"

namespace fs = std::filesystem;
using namespace hcause;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kDegenerate = 3;

// Bad flags or config values.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path + " is not valid JSON: " + e.what());
  }
}

void write_json(const fs::path& path, const ojson& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_zzt_csv(const fs::path& path, const PosteriorSummary& s) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out.precision(17);
  for (std::size_t a = 0; a < s.N; ++a)
    for (std::size_t b = 0; b < s.N; ++b) out << a << ',' << b << ',' << s.zzt(a, b) << '\n';
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("expected a comma-separated list of integers, got '" + text + "'");
    out.push_back(std::stoul(item));
  }
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// Flags shared by every command.
struct Common {
  std::uint64_t seed = 1;
  std::size_t iterations = 0;
  std::string sampler, init, config, out = ".";
  bool infer_hypers = false;
  std::size_t chains = 1, jobs = 1;
  CLI::Option *seed_opt = nullptr, *iter_opt = nullptr, *sampler_opt = nullptr,
              *init_opt = nullptr, *infer_opt = nullptr;
};

void add_common(CLI::App* cmd, Common& c) {
  c.seed_opt = cmd->add_option("--seed", c.seed, "Random seed");
  c.iter_opt = cmd->add_option("--iterations", c.iterations, "Sampler iterations");
  c.sampler_opt = cmd->add_option("--sampler", c.sampler, "gibbs or rjmcmc")
                      ->check(CLI::IsMember({"gibbs", "rjmcmc"}));
  c.init_opt = cmd->add_option("--init", c.init, "empty or random10");
  c.infer_opt = cmd->add_flag("--infer-hypers", c.infer_hypers, "Sample lambda, epsilon, p, alpha");
  cmd->add_option("--config", c.config, "JSON config; flags override it");
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--chains", c.chains, "Independent chains")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

// ---- generate -------------------------------------------------------------

struct GenerateSpec {
  std::string structure;  // canonical name, or empty
  std::size_t N = 6, T = 500;
  long K = -1;            // -1: unconstrained IBP draw
  ModelParams params{0.01, 0.9, 0.1, 3.0};
  std::uint64_t seed = 1;
  std::size_t max_tries = 1'000'000;
};

ojson spec_to_json(const GenerateSpec& g) {
  ojson j;
  if (!g.structure.empty()) j["structure"] = g.structure;
  else {
    j["N"] = g.N;
    if (g.K >= 0) j["K"] = g.K;
  }
  j["T"] = g.T;
  j["params"] = {{"epsilon", g.params.epsilon},
                 {"lambda", g.params.lambda},
                 {"p", g.params.p},
                 {"alpha", g.params.alpha}};
  j["seed"] = g.seed;
  j["max_tries"] = g.max_tries;
  return j;
}

void apply_spec_json(GenerateSpec& g, const nlohmann::json& j) {
  for (const auto& [key, v] : j.items()) {
    if (key == "structure") g.structure = v.get<std::string>();
    else if (key == "N") g.N = v.get<std::size_t>();
    else if (key == "K") g.K = v.get<long>();
    else if (key == "T") g.T = v.get<std::size_t>();
    else if (key == "seed") g.seed = v.get<std::uint64_t>();
    else if (key == "max_tries") g.max_tries = v.get<std::size_t>();
    else if (key == "params") {
      FitConfig tmp;
      tmp.params = g.params;
      apply_config_json(tmp, {{"params", v}});
      g.params = tmp.params;
    } else if (key == "command" || key == "outputs") {
      // manifest bookkeeping
    } else throw UsageError("unknown generate key '" + key + "'");
  }
}

int cmd_generate(const Common& c, GenerateSpec g, const std::vector<CLI::Option*>& given,
                 const GenerateSpec& flags) {
  if (!c.config.empty()) apply_spec_json(g, load_json(c.config));
  for (auto* o : given) {
    if (!o->count()) continue;
    const std::string n = o->get_name();
    if (n == "--structure") g.structure = flags.structure;
    else if (n == "--N") g.N = flags.N, g.structure.clear();
    else if (n == "--K") g.K = flags.K, g.structure.clear();
    else if (n == "--T") g.T = flags.T;
    else if (n == "--epsilon") g.params.epsilon = flags.params.epsilon;
    else if (n == "--lambda") g.params.lambda = flags.params.lambda;
    else if (n == "--p") g.params.p = flags.params.p;
    else if (n == "--alpha") g.params.alpha = flags.params.alpha;
    else if (n == "--max-tries") g.max_tries = flags.max_tries;
  }
  if (c.seed_opt->count()) g.seed = c.seed;
  g.params.validate();

  Rng rng(g.seed);
  BinaryMatrix Z;
  if (!g.structure.empty()) Z = canonical_structure(g.structure);
  else if (g.K >= 0) Z = rejection_sample_Z(g.N, static_cast<std::size_t>(g.K), g.params.alpha, rng, g.max_tries);
  else Z = sample_ibp(g.N, g.params.alpha, rng);
  const Dataset d = generate_dataset(Z, g.T, g.params, rng);

  const fs::path out(c.out);
  write_bundle(out, d);
  ojson manifest = spec_to_json(g);
  manifest["command"] = "generate";
  manifest["outputs"] = {"X.csv", "Z.csv", "Y.csv", "params.json"};
  write_json(out / "manifest.json", manifest);
  std::cout << "wrote " << d.X.rows() << "x" << d.X.cols() << " dataset with K+ = " << Z.cols()
            << " to " << out.string() << '\n';
  return 0;
}

// ---- fit ------------------------------------------------------------------

struct FitFlags {
  std::string data;
  std::size_t burn_in = 0;
  std::string k_prior;
  bool timing = false;
  double epsilon = 0, lambda = 0, p = 0, alpha = 0;
  std::string rj_ratio, theta;
  CLI::Option *burn_opt, *kp_opt, *timing_opt, *eps_opt, *lam_opt, *p_opt, *alpha_opt, *ratio_opt,
      *theta_opt;
};

FitConfig build_fit_config(const Common& c, const FitFlags& f) {
  FitConfig cfg;
  if (!c.config.empty()) {
    const auto j = load_json(c.config);
    try {
      // A fit summary carries its config under "config".
      apply_config_json(cfg, j.contains("config") ? j.at("config") : j);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  try {
    if (c.seed_opt->count()) cfg.seed = c.seed;
    if (c.iter_opt->count()) cfg.iterations = c.iterations;
    if (c.sampler_opt->count()) cfg.sampler = parse_sampler(c.sampler);
    if (c.init_opt->count()) cfg.init = parse_init(c.init, &cfg.init_k);
    if (c.infer_opt->count()) cfg.hypers.infer = true;
    if (f.burn_opt->count()) cfg.burn_in = f.burn_in;
    if (f.kp_opt->count()) cfg.k_prior = f.k_prior;
    if (f.timing_opt->count()) cfg.timing = true;
    if (f.eps_opt->count()) cfg.params.epsilon = f.epsilon;
    if (f.lam_opt->count()) cfg.params.lambda = f.lambda;
    if (f.p_opt->count()) cfg.params.p = f.p;
    if (f.alpha_opt->count()) cfg.params.alpha = f.alpha;
    if (f.ratio_opt->count())
      cfg.ratio = f.rj_ratio == "printed" ? DimensionRatio::kPrinted : DimensionRatio::kOrdered;
    if (f.theta_opt->count())
      cfg.theta = f.theta == "printed" ? ThetaDenominator::kPrinted : ThetaDenominator::kPredictive;
    cfg.params.validate();
    if (cfg.sampler == SamplerKind::kRjmcmc)
      parse_k_prior(cfg.k_prior, cfg.params.alpha, 1);  // fail early on a bad spec
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void write_fit_outputs(const fs::path& dir, const FitResult& r, const FitConfig& cfg) {
  fs::create_directories(dir);
  write_trace(dir / "trace.jsonl", r.trace);
  write_json(dir / "summary.json", summary_to_json(r, cfg));
  write_zzt_csv(dir / "zzt.csv", r.summary);
  write_json(dir / "config.json", config_to_json(cfg));
}

int cmd_fit(const Common& c, const FitFlags& f) {
  const FitConfig cfg = build_fit_config(c, f);
  if (f.data.empty()) throw UsageError("fit needs --data <bundle dir or X.csv>");
  const Dataset d = read_bundle(f.data);
  const fs::path out(c.out);

  if (c.chains == 1) {
    const FitResult r = run_fit(d.X, cfg);
    write_fit_outputs(out, r, cfg);
    std::cout << "E[K+] = " << r.summary.mean_k_plus << " over " << r.summary.sample_count
              << " samples; outputs in " << out.string() << '\n';
    return 0;
  }

  std::vector<FitResult> results(c.chains);
  std::vector<FitConfig> configs(c.chains, cfg);
  for (std::size_t k = 0; k < c.chains; ++k) configs[k].seed = mix_seed(cfg.seed, k);
  std::vector<std::string> errors(c.chains);
  std::vector<int> codes(c.chains, 0);
  parallel_for(c.chains, c.jobs, [&](std::size_t k) {
    try {
      results[k] = run_fit(d.X, configs[k]);
    } catch (const DegeneracyError& e) {
      errors[k] = e.what();
      codes[k] = kDegenerate;
    } catch (const std::exception& e) {
      errors[k] = e.what();
      codes[k] = kData;
    }
  });
  for (std::size_t k = 0; k < c.chains; ++k)
    if (codes[k]) {
      std::cerr << "chain " << k << ": " << errors[k] << '\n';
      return codes[k];
    }

  // Pool the chains: equal-weight average of their summaries.
  PosteriorSummary pooled = results[0].summary;
  pooled.sample_count = 0;
  pooled.mean_k_plus = pooled.mean_k = 0;
  std::fill(pooled.mean_zzt.begin(), pooled.mean_zzt.end(), 0.0);
  ojson chains = ojson::array();
  for (std::size_t k = 0; k < c.chains; ++k) {
    const auto& s = results[k].summary;
    write_fit_outputs(out / ("chain_" + std::to_string(k)), results[k], configs[k]);
    pooled.sample_count += s.sample_count;
    pooled.mean_k_plus += s.mean_k_plus / c.chains;
    pooled.mean_k += s.mean_k / c.chains;
    for (std::size_t j = 0; j < s.mean_zzt.size(); ++j) pooled.mean_zzt[j] += s.mean_zzt[j] / c.chains;
    chains.push_back({{"dir", "chain_" + std::to_string(k)}, {"seed", configs[k].seed},
                      {"mean_k_plus", s.mean_k_plus}});
  }
  ojson j;
  j["chains"] = chains;
  j["sample_count"] = pooled.sample_count;
  j["mean_k_plus"] = pooled.mean_k_plus;
  j["mean_k"] = pooled.mean_k;
  ojson zzt = ojson::array();
  for (std::size_t a = 0; a < pooled.N; ++a) {
    ojson row = ojson::array();
    for (std::size_t b = 0; b < pooled.N; ++b) row.push_back(pooled.zzt(a, b));
    zzt.push_back(row);
  }
  j["mean_zzt"] = zzt;
  j["config"] = config_to_json(cfg);
  write_json(out / "summary.json", j);
  write_zzt_csv(out / "zzt.csv", pooled);
  std::cout << "pooled E[K+] = " << pooled.mean_k_plus << " over " << c.chains
            << " chains; outputs in " << out.string() << '\n';
  return 0;
}

// ---- eval -----------------------------------------------------------------

int cmd_eval(const Common& c, const std::string& summary_path, const std::string& truth_dir) {
  if (summary_path.empty() || truth_dir.empty())
    throw UsageError("eval needs --summary <summary.json> and --truth <bundle dir>");
  std::ifstream in(summary_path);
  if (!in) throw DataError("cannot open " + summary_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(summary_path + ": " + e.what());
  }
  const PosteriorSummary s = summary_from_json(j);
  const Dataset truth = read_bundle(truth_dir);
  if (!truth.truth) throw DataError(truth_dir + " has no Z.csv");
  const BinaryMatrix& Z = truth.truth->Z;

  ojson report;
  report["in_degree_error"] = in_degree_error(s, Z);
  report["structure_error"] = structure_error(s, Z);
  report["mean_k_plus"] = s.mean_k_plus;
  report["k_true"] = Z.cols();
  report["sample_count"] = s.sample_count;
  std::cout << report.dump(2) << '\n';
  if (c.out != ".") {
    fs::create_directories(c.out);
    write_json(fs::path(c.out) / "metrics.json", report);
  }
  return 0;
}

// ---- replicate ------------------------------------------------------------

struct ReplicateFlags {
  std::string figure;
  std::size_t datasets = 10, N = 6, T = 0;
  std::string k_values, structures, samplers, inits, k_prior, checkpoints, rj_ratio, theta;
  CLI::Option *datasets_opt, *N_opt, *T_opt, *kv_opt, *st_opt, *sm_opt, *in_opt, *kp_opt, *cp_opt,
      *ratio_opt, *theta_opt;
};

std::vector<SamplerKind> parse_samplers(const std::string& s) {
  std::vector<SamplerKind> out;
  for (const auto& n : split(s)) out.push_back(parse_sampler(n));
  return out;
}

template <class Options>
void apply_variants(Options& o, const ReplicateFlags& f) {
  if (f.ratio_opt->count())
    o.ratio = f.rj_ratio == "printed" ? DimensionRatio::kPrinted : DimensionRatio::kOrdered;
  if (f.theta_opt->count())
    o.theta = f.theta == "printed" ? ThetaDenominator::kPrinted : ThetaDenominator::kPredictive;
}

int cmd_replicate(const Common& c, const ReplicateFlags& f) {
  const fs::path out(c.out);
  fs::create_directories(out);
  if (f.figure == "fig3") {
    Fig3Options o;
    if (!c.config.empty()) {
      for (const auto& [k, v] : load_json(c.config).items()) {
        if (k == "datasets") o.datasets = v.get<std::size_t>();
        else if (k == "iterations") o.iterations = v.get<std::size_t>();
        else if (k == "N") o.N = v.get<std::size_t>();
        else if (k == "T") o.T = v.get<std::size_t>();
        else if (k == "seed") o.seed = v.get<std::uint64_t>();
        else if (k == "k_values") o.k_values = v.get<std::vector<std::size_t>>();
        else throw UsageError("unknown fig3 config key '" + k + "'");
      }
    }
    if (f.datasets_opt->count()) o.datasets = f.datasets;
    if (c.iter_opt->count()) o.iterations = c.iterations;
    if (c.seed_opt->count()) o.seed = c.seed;
    if (f.N_opt->count()) o.N = f.N;
    if (f.T_opt->count()) o.T = f.T;
    if (f.kv_opt->count()) o.k_values = parse_size_list(f.k_values);
    if (f.sm_opt->count()) o.samplers = parse_samplers(f.samplers);
    if (c.sampler_opt->count()) o.samplers = {parse_sampler(c.sampler)};
    if (f.in_opt->count()) {
      o.inits.clear();
      for (const auto& n : split(f.inits)) o.inits.push_back(parse_init(n, &o.init_k));
    }
    if (c.init_opt->count()) o.inits = {parse_init(c.init, &o.init_k)};
    if (f.kp_opt->count()) o.k_prior = f.k_prior;
    apply_variants(o, f);
    o.jobs = c.jobs;
    const auto r = run_fig3(o);
    write_fig3(out, r);
    std::cout << "sampler,init,k_true,runs,failures,mean,sd\n";
    for (const auto& row : r.rows)
      std::cout << to_string(row.sampler) << ',' << to_string(row.init) << ',' << row.k_true
                << ',' << row.runs << ',' << row.failures << ',' << row.mean_dim << ','
                << row.sd_dim << '\n';
    return 0;
  }
  if (f.figure == "fig4") {
    Fig4Options o;
    if (!c.config.empty()) {
      for (const auto& [k, v] : load_json(c.config).items()) {
        if (k == "datasets") o.datasets = v.get<std::size_t>();
        else if (k == "iterations") o.iterations = v.get<std::size_t>();
        else if (k == "T") o.T = v.get<std::size_t>();
        else if (k == "seed") o.seed = v.get<std::uint64_t>();
        else if (k == "structures") o.structures = v.get<std::vector<std::string>>();
        else if (k == "checkpoints") o.checkpoints = v.get<std::vector<std::size_t>>();
        else throw UsageError("unknown fig4 config key '" + k + "'");
      }
    }
    if (f.datasets_opt->count()) o.datasets = f.datasets;
    if (c.iter_opt->count()) o.iterations = c.iterations;
    if (c.seed_opt->count()) o.seed = c.seed;
    if (f.T_opt->count()) o.T = f.T;
    if (f.st_opt->count()) o.structures = split(f.structures);
    for (const auto& s : o.structures) canonical_structure(s);  // reject typos up front
    if (f.sm_opt->count()) o.samplers = parse_samplers(f.samplers);
    if (c.sampler_opt->count()) o.samplers = {parse_sampler(c.sampler)};
    if (f.kp_opt->count()) o.k_prior = f.k_prior;
    if (f.cp_opt->count()) o.checkpoints = parse_size_list(f.checkpoints);
    apply_variants(o, f);
    o.jobs = c.jobs;
    const auto r = run_fig4(o);
    write_fig4(out, r);
    std::cout << "structure,sampler,iteration,runs,mean_structure_error,sd\n";
    for (const auto& row : r.rows)
      std::cout << row.structure << ',' << to_string(row.sampler) << ',' << row.iteration << ','
                << row.runs << ',' << row.mean_structure << ',' << row.sd_structure << '\n';
    for (const auto& e : r.errors) std::cerr << "error: " << e << '\n';
    return 0;
  }
  throw UsageError("replicate takes fig3 or fig4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden-cause inference for binary data (noisy-OR + IBP)"};
  app.require_subcommand(1);

  Common cg, cf, ce, cr;

  auto* gen = app.add_subcommand("generate", "Simulate a dataset bundle");
  add_common(gen, cg);
  GenerateSpec gflags;
  std::vector<CLI::Option*> gen_opts{
      gen->add_option("--structure", gflags.structure, "degree1|disconnected|undercomplete|overcomplete"),
      gen->add_option("--N", gflags.N, "Observed variables (IBP draw)"),
      gen->add_option("--K", gflags.K, "Required K+ for the IBP draw"),
      gen->add_option("--T", gflags.T, "Trials"),
      gen->add_option("--epsilon", gflags.params.epsilon, "Leak probability"),
      gen->add_option("--lambda", gflags.params.lambda, "Per-cause transmission probability"),
      gen->add_option("--p", gflags.params.p, "Prior probability that a cause is active"),
      gen->add_option("--alpha", gflags.params.alpha, "IBP concentration"),
      gen->add_option("--max-tries", gflags.max_tries, "Rejection sampling budget")};

  auto* fit = app.add_subcommand("fit", "Run a sampler on a dataset");
  add_common(fit, cf);
  FitFlags ff;
  fit->add_option("--data", ff.data, "Bundle directory or X.csv");
  ff.burn_opt = fit->add_option("--burn-in", ff.burn_in, "Iterations left out of the summary");
  ff.kp_opt = fit->add_option("--k-prior", ff.k_prior,
                              "RJMCMC prior on K: poisson | poisson:m | geometric:q | uniform:cap");
  ff.timing_opt = fit->add_flag("--timing", ff.timing, "Record wall_ms in the trace");
  ff.eps_opt = fit->add_option("--epsilon", ff.epsilon, "Leak probability");
  ff.lam_opt = fit->add_option("--lambda", ff.lambda, "Per-cause transmission probability");
  ff.p_opt = fit->add_option("--p", ff.p, "Prior probability that a cause is active");
  ff.alpha_opt = fit->add_option("--alpha", ff.alpha, "IBP concentration");
  ff.ratio_opt = fit->add_option("--rj-ratio", ff.rj_ratio, "ordered or printed")
                     ->check(CLI::IsMember({"ordered", "printed"}));
  ff.theta_opt = fit->add_option("--theta-denominator", ff.theta, "predictive or printed")
                     ->check(CLI::IsMember({"predictive", "printed"}));

  auto* ev = app.add_subcommand("eval", "Score a fit summary against the true structure");
  add_common(ev, ce);
  std::string summary_path, truth_dir;
  ev->add_option("--summary", summary_path, "summary.json from fit");
  ev->add_option("--truth", truth_dir, "Bundle directory with Z.csv");

  auto* rep = app.add_subcommand("replicate", "Run the dimensionality or structure experiments");
  add_common(rep, cr);
  ReplicateFlags rf;
  rep->add_option("figure", rf.figure, "fig3 or fig4")->required()->check(CLI::IsMember({"fig3", "fig4"}));
  rf.datasets_opt = rep->add_option("--datasets", rf.datasets, "Datasets per condition");
  rf.N_opt = rep->add_option("--N", rf.N, "Observed variables for fig3");
  rf.T_opt = rep->add_option("--T", rf.T, "Trials per dataset");
  rf.kv_opt = rep->add_option("--k-values", rf.k_values, "e.g. 1,2,3,4");
  rf.st_opt = rep->add_option("--structures", rf.structures, "Comma-separated structure names");
  rf.sm_opt = rep->add_option("--samplers", rf.samplers, "e.g. gibbs,rjmcmc");
  rf.in_opt = rep->add_option("--inits", rf.inits, "e.g. empty,random10");
  rf.kp_opt = rep->add_option("--k-prior", rf.k_prior, "RJMCMC prior on K");
  rf.cp_opt = rep->add_option("--checkpoints", rf.checkpoints, "Iterations scored in fig4");
  rf.ratio_opt = rep->add_option("--rj-ratio", rf.rj_ratio, "ordered or printed")
                     ->check(CLI::IsMember({"ordered", "printed"}));
  rf.theta_opt = rep->add_option("--theta-denominator", rf.theta, "predictive or printed")
                     ->check(CLI::IsMember({"predictive", "printed"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(cg, GenerateSpec{}, gen_opts, gflags);
    if (fit->parsed()) return cmd_fit(cf, ff);
    if (ev->parsed()) return cmd_eval(ce, summary_path, truth_dir);
    if (rep->parsed()) return cmd_replicate(cr, rf);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegeneracyError& e) {
    std::cerr << "numerical degeneracy: " << e.what() << '\n';
    return kDegenerate;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return kData;
  } catch (const ExhaustionError& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
