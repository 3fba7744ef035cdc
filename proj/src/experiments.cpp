#include "hcause/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include "hcause/harness.hpp"
#include "hcause/io.hpp"

namespace hcause {

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t j = 0; j < n; ++j) fn(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t j = next++; j < n; j = next++) fn(j);
    });
  for (auto& w : workers) w.join();
}

std::pair<double, double> mean_sd(const std::vector<double>& values) {
  if (values.empty()) return {std::nan(""), std::nan("")};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

namespace {

std::uint64_t dataset_seed(std::uint64_t seed, std::size_t condition, std::size_t dataset) {
  return mix_seed(seed, condition * 100'000 + dataset);
}

std::uint64_t chain_seed(std::uint64_t data_seed, SamplerKind sampler, InitMode init) {
  const std::uint64_t stream = 1 + 2 * static_cast<std::uint64_t>(sampler == SamplerKind::kRjmcmc) +
                               static_cast<std::uint64_t>(init == InitMode::kRandom);
  return mix_seed(data_seed, stream);
}

}  // namespace

Fig3Result run_fig3(const Fig3Options& o) {
  struct Task {
    std::size_t k_true, dataset;
    SamplerKind sampler;
    InitMode init;
  };
  std::vector<Task> tasks;
  for (std::size_t k : o.k_values)
    for (SamplerKind s : o.samplers)
      for (InitMode init : o.inits)
        for (std::size_t d = 0; d < o.datasets; ++d) tasks.push_back({k, d, s, init});

  Fig3Result result;
  result.runs.resize(tasks.size());
  parallel_for(tasks.size(), o.jobs, [&](std::size_t j) {
    const Task& task = tasks[j];
    Fig3Run& run = result.runs[j];
    run.sampler = task.sampler;
    run.init = task.init;
    run.k_true = task.k_true;
    run.dataset = task.dataset;
    try {
      const std::uint64_t ds = dataset_seed(o.seed, task.k_true, task.dataset);
      Rng data_rng(ds);
      const BinaryMatrix Z = rejection_sample_Z(o.N, task.k_true, o.params.alpha, data_rng,
                                                o.max_tries);
      const Dataset data = generate_dataset(Z, o.T, o.params, data_rng);
      FitConfig cfg;
      cfg.sampler = task.sampler;
      cfg.init = task.init;
      cfg.init_k = o.init_k;
      cfg.iterations = o.iterations;
      cfg.seed = chain_seed(ds, task.sampler, task.init);
      cfg.params = o.params;
      cfg.k_prior = o.k_prior;
      cfg.ratio = o.ratio;
      cfg.theta = o.theta;
      const FitResult fit = run_fit(data.X, cfg);
      run.expected_dim = task.sampler == SamplerKind::kGibbs ? fit.summary.mean_k_plus
                                                             : fit.summary.mean_k;
      run.expected_k_plus = fit.summary.mean_k_plus;
    } catch (const std::exception& e) {
      run.error = e.what();
    }
  });

  for (std::size_t k : o.k_values)
    for (SamplerKind s : o.samplers)
      for (InitMode init : o.inits) {
        Fig3Row row{s, init, k};
        std::vector<double> dims, abs_err, bias;
        for (const auto& r : result.runs) {
          if (r.k_true != k || r.sampler != s || r.init != init) continue;
          ++row.runs;
          if (!r.error.empty()) {
            ++row.failures;
            continue;
          }
          dims.push_back(r.expected_dim);
          abs_err.push_back(std::abs(r.expected_dim - static_cast<double>(k)));
          bias.push_back(r.expected_dim - static_cast<double>(k));
        }
        std::tie(row.mean_dim, row.sd_dim) = mean_sd(dims);
        row.mean_abs_error = mean_sd(abs_err).first;
        row.mean_bias = mean_sd(bias).first;
        result.rows.push_back(row);
      }
  return result;
}

Fig4Result run_fig4(const Fig4Options& o) {
  struct Task {
    std::size_t structure, dataset;
    SamplerKind sampler;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < o.structures.size(); ++s)
    for (SamplerKind sampler : o.samplers)
      for (std::size_t d = 0; d < o.datasets; ++d) tasks.push_back({s, d, sampler});

  std::vector<std::size_t> checkpoints;
  for (std::size_t c : o.checkpoints)
    if (c >= 1 && c <= o.iterations) checkpoints.push_back(c);
  if (checkpoints.empty() || checkpoints.back() != o.iterations)
    checkpoints.push_back(o.iterations);

  std::vector<std::vector<Fig4Point>> per_task(tasks.size());
  std::vector<std::string> task_errors(tasks.size());
  parallel_for(tasks.size(), o.jobs, [&](std::size_t j) {
    const Task& task = tasks[j];
    const std::string& name = o.structures[task.structure];
    try {
      const BinaryMatrix Z_true = canonical_structure(name);
      const std::uint64_t ds = dataset_seed(o.seed, 1000 + task.structure, task.dataset);
      Rng data_rng(ds);
      const Dataset data = generate_dataset(Z_true, o.T, o.params, data_rng);
      FitConfig cfg;
      cfg.sampler = task.sampler;
      cfg.init = InitMode::kEmpty;
      cfg.iterations = o.iterations;
      cfg.seed = chain_seed(ds, task.sampler, InitMode::kEmpty);
      cfg.params = o.params;
      cfg.k_prior = o.k_prior;
      cfg.ratio = o.ratio;
      cfg.theta = o.theta;
      const auto start = std::chrono::steady_clock::now();
      std::size_t next = 0;
      run_fit(data.X, cfg, [&](std::size_t it, const SamplerState&, const SummaryAccumulator& acc) {
        if (next >= checkpoints.size() || it != checkpoints[next]) return;
        ++next;
        const PosteriorSummary summary = PosteriorSummary::from(acc);
        Fig4Point pt{name, task.sampler, task.dataset, it};
        pt.in_degree_error = in_degree_error(summary, Z_true);
        pt.structure_error = structure_error(summary, Z_true);
        pt.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        per_task[j].push_back(pt);
      });
    } catch (const std::exception& e) {
      task_errors[j] = name + "/" + to_string(task.sampler) + "/" +
                       std::to_string(task.dataset) + ": " + e.what();
    }
  });

  Fig4Result result;
  for (std::size_t j = 0; j < tasks.size(); ++j) {
    result.points.insert(result.points.end(), per_task[j].begin(), per_task[j].end());
    if (!task_errors[j].empty()) result.errors.push_back(task_errors[j]);
  }
  for (const auto& name : o.structures)
    for (SamplerKind s : o.samplers)
      for (std::size_t c : checkpoints) {
        std::vector<double> indeg, structural, wall;
        for (const auto& pt : result.points) {
          if (pt.structure != name || pt.sampler != s || pt.iteration != c) continue;
          indeg.push_back(pt.in_degree_error);
          structural.push_back(pt.structure_error);
          wall.push_back(pt.wall_seconds);
        }
        Fig4Row row{name, s, c, indeg.size()};
        std::tie(row.mean_in_degree, row.sd_in_degree) = mean_sd(indeg);
        std::tie(row.mean_structure, row.sd_structure) = mean_sd(structural);
        std::tie(row.mean_wall_seconds, row.sd_wall_seconds) = mean_sd(wall);
        result.rows.push_back(row);
      }
  return result;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out.precision(10);
  return out;
}

}  // namespace

void write_fig3(const std::filesystem::path& dir, const Fig3Result& result) {
  std::filesystem::create_directories(dir);
  auto table = open_out(dir / "fig3.csv");
  table << "sampler,init,k_true,runs,failures,mean_expected_dim,sd_expected_dim,"
           "mean_abs_error,mean_bias\n";
  for (const auto& r : result.rows)
    table << to_string(r.sampler) << ',' << to_string(r.init) << ',' << r.k_true << ','
          << r.runs << ',' << r.failures << ',' << r.mean_dim << ',' << r.sd_dim << ','
          << r.mean_abs_error << ',' << r.mean_bias << '\n';
  auto runs = open_out(dir / "fig3_runs.csv");
  runs << "sampler,init,k_true,dataset,expected_dim,expected_k_plus,error\n";
  for (const auto& r : result.runs)
    runs << to_string(r.sampler) << ',' << to_string(r.init) << ',' << r.k_true << ','
         << r.dataset << ',' << r.expected_dim << ',' << r.expected_k_plus << ",\""
         << r.error << "\"\n";
}

void write_fig4(const std::filesystem::path& dir, const Fig4Result& result) {
  std::filesystem::create_directories(dir);
  auto table = open_out(dir / "fig4.csv");
  table << "structure,sampler,iteration,runs,mean_in_degree_error,sd_in_degree_error,"
           "mean_structure_error,sd_structure_error\n";
  for (const auto& r : result.rows)
    table << r.structure << ',' << to_string(r.sampler) << ',' << r.iteration << ','
          << r.runs << ',' << r.mean_in_degree << ',' << r.sd_in_degree << ','
          << r.mean_structure << ',' << r.sd_structure << '\n';
  auto timing = open_out(dir / "fig4_runtime.csv");
  timing << "structure,sampler,iteration,runs,mean_wall_seconds,sd_wall_seconds\n";
  for (const auto& r : result.rows)
    timing << r.structure << ',' << to_string(r.sampler) << ',' << r.iteration << ','
           << r.runs << ',' << r.mean_wall_seconds << ',' << r.sd_wall_seconds << '\n';
  if (!result.errors.empty()) {
    auto errs = open_out(dir / "fig4_errors.txt");
    for (const auto& e : result.errors) errs << e << '\n';
  }
}

}  // namespace hcause
