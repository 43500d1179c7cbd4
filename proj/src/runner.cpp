#include "olre/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "olre/csv.hpp"
#include "olre/errors.hpp"
#include "olre/run_config.hpp"
#include "olre/svg_plot.hpp"

namespace fs = std::filesystem;

namespace olre {

namespace {

// Seed layout: trial i trains on base_seed + i, the test set is drawn from
// base_seed - 1 and the warm-up sample from base_seed - 2 (unsigned
// wrap-around is fine), so the streams never overlap.
constexpr std::uint64_t kTestSeedOffset = 1;
constexpr std::uint64_t kWarmupSeedOffset = 2;

struct WarmupSample {
  std::vector<ObservationPair> pairs;
  Eigen::MatrixXd x, x_prime;  // the same pairs as column matrices
};

WarmupSample draw_warmup(const ScenarioSpec& scenario, int n, std::uint64_t base_seed) {
  WarmupSample w;
  w.pairs.reserve(static_cast<std::size_t>(n));
  w.x.resize(scenario.dim, n);
  w.x_prime.resize(scenario.dim, n);
  Rng rng(base_seed - kWarmupSeedOffset);
  for (int i = 0; i < n; ++i) {
    w.pairs.push_back(sample_pair(scenario, rng));
    w.x.col(i) = w.pairs.back().x;
    w.x_prime.col(i) = w.pairs.back().x_prime;
  }
  return w;
}

double median_pairwise_distance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& x_prime) {
  Eigen::MatrixXd pooled(x.rows(), x.cols() + x_prime.cols());
  pooled << x, x_prime;
  const auto n = pooled.cols();
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      d.push_back((pooled.col(i) - pooled.col(j)).norm());
  if (d.empty()) throw std::invalid_argument("median distance: need at least 2 points");
  std::sort(d.begin(), d.end());
  const double med = d[d.size() / 2];
  if (!(med > 0.0))
    throw std::invalid_argument("median distance: degenerate warm-up sample");
  return med;
}

CvPlan make_cv_plan(const RunConfig& cfg, const WarmupSample& warmup) {
  CvPlan plan;
  plan.folds = cfg.cv_folds;
  plan.lambda_grid = cfg.cv_lambda_grid;
  if (!cfg.cv_sigma_grid.empty()) {
    plan.sigma_grid = cfg.cv_sigma_grid;
  } else {
    const double med = median_pairwise_distance(warmup.x, warmup.x_prime);
    for (const double f : cfg.cv_sigma_factors) plan.sigma_grid.push_back(med * f);
  }
  return plan;
}

// Model selection on the warm-up sample, memoized per alpha (methods with
// the same alpha share one CV run).
class Selector {
 public:
  Selector(const RunConfig& cfg, const ScenarioSpec& scenario, std::ostream& err,
           bool verbose)
      : cfg_(cfg), scenario_(scenario), err_(err), verbose_(verbose) {}

  const CvResult& result_for(double alpha) {
    for (const auto& [a, r] : cache_)
      if (a == alpha) return r;
    ensure_warmup();
    const CvPlan plan = make_cv_plan(cfg_, warmup_);
    CvResult r = cross_validate(warmup_.x, warmup_.x_prime, plan, alpha,
                                cfg_.cv_dictionary_size,
                                cfg_.base_seed - kWarmupSeedOffset);
    if (verbose_)
      err_ << "[select] alpha=" << alpha << " sigma*=" << r.best_sigma
           << " lambda*=" << r.best_lambda << "\n";
    cache_.emplace_back(alpha, std::move(r));
    return cache_.back().second;
  }

  const WarmupSample& warmup() {
    ensure_warmup();
    return warmup_;
  }

 private:
  void ensure_warmup() {
    if (warmup_.pairs.empty()) {
      if (cfg_.warmup_n < cfg_.cv_folds)
        throw std::invalid_argument("insufficient warm-up samples for cross-validation");
      warmup_ = draw_warmup(scenario_, cfg_.warmup_n, cfg_.base_seed);
    }
  }

  const RunConfig& cfg_;
  ScenarioSpec scenario_;
  std::ostream& err_;
  bool verbose_;
  WarmupSample warmup_;
  std::vector<std::pair<double, CvResult>> cache_;
};

std::vector<MethodConfig> resolve_methods(const RunConfig& cfg, Selector& selector) {
  std::vector<MethodConfig> out;
  std::optional<double> sigma = cfg.sigma;
  if (!sigma) sigma = selector.result_for(cfg.methods.front().alpha).best_sigma;
  for (const auto& m : cfg.methods) {
    MethodConfig r;
    r.kind = m.kind;
    r.alpha = m.alpha;
    r.sigma = *sigma;
    r.beta = m.beta;
    r.a = m.a;
    r.t0 = m.t0;
    r.dictionary_size = m.dictionary_size;
    if (m.kind == MethodKind::Rulsif)
      r.lambda = m.lambda ? *m.lambda : selector.result_for(m.alpha).best_lambda;
    out.push_back(r);
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write \"" + path.string() + "\"");
  out << content;
}

std::string trial_csv(const RunConfig& cfg, const std::vector<MethodConfig>& methods,
                      const std::vector<std::vector<TrialReport>>& reports) {
  std::ostringstream out;
  out << "scenario,method,alpha,beta,a,t0,sigma,lambda,M,seed,t,error\n";
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const MethodConfig& m = methods[mi];
    for (const auto& rep : reports[mi]) {
      for (std::size_t c = 0; c < rep.checkpoints.size(); ++c) {
        out << to_string(cfg.scenario) << "," << to_string(m.kind) << ","
            << fmt17(m.alpha) << ",";
        if (m.kind == MethodKind::Olre)
          out << fmt17(m.beta) << "," << fmt17(m.a) << "," << m.t0 << ",";
        else
          out << ",,,";
        out << fmt17(m.sigma) << ",";
        if (m.kind == MethodKind::Rulsif)
          out << fmt17(m.lambda) << "," << m.dictionary_size << ",";
        else
          out << ",,";
        out << rep.seed << "," << rep.checkpoints[c] << "," << fmt17(rep.errors[c])
            << "\n";
      }
    }
  }
  return out.str();
}

std::string aggregate_csv(const RunConfig& cfg, const std::vector<MethodConfig>& methods,
                          const std::vector<std::vector<TrialReport>>& reports) {
  std::ostringstream out;
  out << "scenario,method,alpha,beta,t,mean_error,std_error,n_trials\n";
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    if (reports[mi].empty()) continue;
    const AggregateReport agg = aggregate(reports[mi]);
    for (std::size_t c = 0; c < agg.checkpoints.size(); ++c) {
      out << to_string(cfg.scenario) << "," << to_string(methods[mi].kind) << ","
          << fmt17(methods[mi].alpha) << ",";
      if (methods[mi].kind == MethodKind::Olre)
        out << fmt17(methods[mi].beta);
      out << "," << agg.checkpoints[c] << "," << fmt17(agg.mean_error[c]) << ","
          << fmt17(agg.std_error[c]) << "," << agg.n_trials << "\n";
    }
  }
  return out.str();
}

std::string cv_table_csv(const CvResult& r) {
  std::ostringstream out;
  out << "sigma,lambda,mean_score,status\n";
  for (const auto& cell : r.table)
    out << fmt17(cell.sigma) << "," << fmt17(cell.lambda) << ","
        << (cell.failed ? "" : fmt17(cell.mean_score)) << ","
        << (cell.failed ? "failed" : "ok") << "\n";
  return out.str();
}

}  // namespace

int cmd_run(const std::string& config_path, int jobs, bool verbose, std::ostream& err) {
  const RunConfig cfg = parse_run_config(config_path);
  const ScenarioSpec scenario = scenario_spec(cfg.scenario);

  Selector selector(cfg, scenario, err, verbose);
  const std::vector<MethodConfig> methods = resolve_methods(cfg, selector);

  for (const auto& m : methods) {
    if (m.kind != MethodKind::Olre) continue;
    const double bound = t0_theory_bound(m.a, m.beta);
    if (static_cast<double>(m.t0) < bound)
      err << "warning: olre t0 = " << m.t0 << " is below the guarantee threshold "
          << std::ceil(bound) << " for a = " << m.a << ", beta = " << m.beta << "\n";
  }

  const TestSet test =
      make_test_set(scenario, cfg.n_test, cfg.base_seed - kTestSeedOffset);
  const std::vector<ObservationPair>* prefix =
      cfg.reuse_warmup_pairs ? &selector.warmup().pairs : nullptr;

  struct Task {
    std::size_t method;
    int trial;
  };
  std::vector<Task> tasks;
  for (std::size_t mi = 0; mi < methods.size(); ++mi)
    for (int i = 0; i < cfg.n_trials; ++i) tasks.push_back({mi, i});

  std::vector<std::optional<TrialReport>> results(tasks.size());
  std::vector<std::string> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      const Task& task = tasks[k];
      const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(task.trial);
      try {
        results[k] = run_trial(scenario, methods[task.method], cfg.T, cfg.checkpoints,
                               test, seed, prefix);
        if (verbose) {
          std::lock_guard<std::mutex> lock(log_mutex);
          err << "[run] " << to_string(methods[task.method].kind) << " trial "
              << task.trial << " done\n";
        }
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "method=" << to_string(methods[task.method].kind) << " trial=" << task.trial
            << " seed=" << seed << ": " << e.what();
        failures[k] = msg.str();
      }
    }
  };

  const int n_threads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Collect in deterministic task order; output is written only now, after
  // every worker has finished.
  std::vector<std::vector<TrialReport>> reports(methods.size());
  std::vector<std::string> failure_lines;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    if (results[k])
      reports[tasks[k].method].push_back(std::move(*results[k]));
    else
      failure_lines.push_back(failures[k]);
  }

  fs::create_directories(cfg.output_dir);
  const fs::path out_dir(cfg.output_dir);
  write_file(out_dir / "trials.csv", trial_csv(cfg, methods, reports));
  write_file(out_dir / "aggregate.csv", aggregate_csv(cfg, methods, reports));
  write_file(out_dir / "resolved_config.txt", render_resolved_config(cfg, methods));
  if (!failure_lines.empty()) {
    std::ostringstream manifest;
    for (const auto& line : failure_lines) manifest << line << "\n";
    write_file(out_dir / "failures.txt", manifest.str());
    err << "error: " << failure_lines.size()
        << " trial(s) failed numerically; partial results in " << cfg.output_dir << "\n";
    return 1;
  }
  return 0;
}

int cmd_select(const std::string& config_path, bool verbose, std::ostream& err) {
  const RunConfig cfg = parse_run_config(config_path);
  const ScenarioSpec scenario = scenario_spec(cfg.scenario);
  Selector selector(cfg, scenario, err, verbose);
  const double alpha = cfg.methods.front().alpha;
  const CvResult& r = selector.result_for(alpha);

  fs::create_directories(cfg.output_dir);
  const fs::path out_dir(cfg.output_dir);
  std::ostringstream sel;
  sel << "alpha = " << fmt17(alpha) << "\n";
  sel << "sigma = " << fmt17(r.best_sigma) << "\n";
  sel << "lambda = " << fmt17(r.best_lambda) << "\n";
  write_file(out_dir / "selection.txt", sel.str());
  write_file(out_dir / "cv_table.csv", cv_table_csv(r));
  err << "selected sigma = " << fmt17(r.best_sigma)
      << ", lambda = " << fmt17(r.best_lambda) << " (alpha = " << alpha << ")\n";
  return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& svg_path, std::ostream& err) {
  const CsvTable table = read_csv(csv_path);
  write_file(svg_path, render_error_plot(table));
  err << "wrote " << svg_path << "\n";
  return 0;
}

}  // namespace olre
