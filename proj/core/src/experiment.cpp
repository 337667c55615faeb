#include "seqelim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "seqelim/bounds.hpp"
#include "seqelim/early_elimination.hpp"
#include "seqelim/errors.hpp"
#include "seqelim/parallel.hpp"

namespace seqelim {

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument([&] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::string_view to_string(ExperimentMode mode) {
  return mode == ExperimentMode::PriorResampled ? "prior" : "fixed";
}

std::string_view to_string(Command command) { return command == Command::Simulate ? "simulate" : "estimate"; }

namespace {

bool is_bernoulli(Algorithm a) { return a != Algorithm::VT_Normal; }
bool uses_j(Algorithm a) { return a == Algorithm::VT_EE || a == Algorithm::PW_EE; }

void check_thresholds(const ExperimentConfig& cfg, std::vector<std::string>& errors, bool need_k) {
  if (is_bernoulli(cfg.algorithm)) {
    if (need_k && !cfg.k) errors.emplace_back("k: required for " + std::string(to_string(cfg.algorithm)));
    if (cfg.k && *cfg.k < 1) errors.emplace_back("k: must be >= 1");
    if (cfg.c) errors.emplace_back("c: only used by vt_normal");
    if (cfg.sigma) errors.emplace_back("sigma: only used by vt_normal");
  } else {
    if (!cfg.c) errors.emplace_back("c: required for vt_normal");
    else if (!(*cfg.c > 0.0) || !std::isfinite(*cfg.c)) errors.emplace_back("c: must be positive");
    if (cfg.k) errors.emplace_back("k: not used by vt_normal");
    if (cfg.sigma && (!(*cfg.sigma > 0.0) || !std::isfinite(*cfg.sigma)))
      errors.emplace_back("sigma: must be positive");
  }
  if (uses_j(cfg.algorithm)) {
    if (!cfg.j) errors.emplace_back("j: required for " + std::string(to_string(cfg.algorithm)));
    else if (*cfg.j < 1) errors.emplace_back("j: must be >= 1");
  } else if (cfg.j) {
    errors.emplace_back("j: only used by vt_ee and pw_ee");
  }
}

EstimateWithError with_count(EstimateWithError e, std::int64_t count) {
  e.replications = count;
  return e;
}

EstimateWithError proportion(std::int64_t hits, std::int64_t count) {
  const double p = static_cast<double>(hits) / static_cast<double>(count);
  const double se = count > 1 ? std::sqrt(p * (1.0 - p) / static_cast<double>(count - 1)) : 0.0;
  return {p, se, count};
}

struct SimulationAccumulator {
  std::int64_t correct = 0;
  std::int64_t capped = 0;
  std::int64_t degenerate = 0;
  std::int64_t best_early = 0;
  RunningCoMoments samples;  // x = N, y = control value
  RunningMoments nonbest_early;

  void merge(const SimulationAccumulator& o) {
    correct += o.correct;
    capped += o.capped;
    degenerate += o.degenerate;
    best_early += o.best_early;
    samples.merge(o.samples);
    nonbest_early.merge(o.nonbest_early);
  }
};

BanditInstance make_instance(const ExperimentConfig& cfg, std::vector<double> means) {
  return is_bernoulli(cfg.algorithm) ? BanditInstance::bernoulli(std::move(means))
                                     : BanditInstance::normal(std::move(means), cfg.sigma_or_default());
}

ElimConfig make_elim_config(const ExperimentConfig& cfg) {
  ElimConfig e;
  e.k = cfg.k;
  e.c = cfg.c;
  e.j = cfg.j;
  e.max_subrounds = cfg.max_subrounds;
  return e;
}

// 1 / (P1 (1 - P2)) for the two largest means.
double top_two_control(const std::vector<double>& means) {
  double first = means[0] >= means[1] ? means[0] : means[1];
  double second = means[0] >= means[1] ? means[1] : means[0];
  for (std::size_t i = 2; i < means.size(); ++i) {
    if (means[i] > first) {
      second = first;
      first = means[i];
    } else if (means[i] > second) {
      second = means[i];
    }
  }
  return 1.0 / (first * (1.0 - second));
}

SimulationAccumulator simulate_range(const ExperimentConfig& cfg, std::int64_t count, unsigned threads) {
  const ElimConfig elim = make_elim_config(cfg);
  const bool fixed = cfg.mode == ExperimentMode::FixedMeans;
  const std::optional<BanditInstance> fixed_instance =
      fixed ? std::optional<BanditInstance>(make_instance(cfg, cfg.means)) : std::nullopt;
  const bool track_early = uses_j(cfg.algorithm);

  return reduce_replications<SimulationAccumulator>(
      count, threads, [&](std::int64_t i, SimulationAccumulator& acc) {
        RngStream stream(cfg.master_seed, static_cast<std::uint64_t>(i));
        double control = 0.0;
        std::optional<BanditInstance> drawn;
        if (!fixed) {
          std::vector<double> means = sample_bandit_means(cfg.prior, cfg.n, stream);
          if (cfg.control_variate) control = top_two_control(means);
          drawn = make_instance(cfg, std::move(means));
        }
        const BanditInstance& instance = fixed ? *fixed_instance : *drawn;
        const RunOutcome out = run_algorithm(cfg.algorithm, instance, elim, stream);
        acc.correct += out.correct ? 1 : 0;
        acc.capped += out.terminated_by_cap ? 1 : 0;
        acc.degenerate += instance.degenerate ? 1 : 0;
        acc.samples.add(static_cast<double>(out.total_samples), control);
        if (track_early) {
          acc.best_early += out.best_eliminated_early ? 1 : 0;
          acc.nonbest_early.add(out.nonbest_eliminated_early);
        }
      });
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void throw_if(const std::vector<std::string>& errors) {
  if (!errors.empty()) throw ValidationError(errors);
}

}  // namespace

std::vector<std::string> validate_simulation(const ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  if (cfg.n < 2) errors.emplace_back("n: must be >= 2");
  if (cfg.replications < 1) errors.emplace_back("replications: must be >= 1");
  if (cfg.max_subrounds < 1) errors.emplace_back("max_subrounds: must be >= 1");
  if (cfg.mode == ExperimentMode::FixedMeans) {
    if (static_cast<int>(cfg.means.size()) != cfg.n) errors.emplace_back("means: length must equal n");
    for (std::size_t i = 0; i < cfg.means.size(); ++i) {
      const double m = cfg.means[i];
      if (is_bernoulli(cfg.algorithm) ? !(m > 0.0 && m < 1.0) : !std::isfinite(m))
        errors.push_back("means[" + std::to_string(i) + "]: " +
                         (is_bernoulli(cfg.algorithm) ? "must lie in (0, 1)" : "must be finite"));
    }
  } else {
    if (!cfg.means.empty()) errors.emplace_back("means: only allowed in fixed mode");
    if (is_bernoulli(cfg.algorithm) && cfg.prior.kind != PriorKind::Uniform01)
      errors.emplace_back("prior: Bernoulli rewards need the uniform01 prior");
  }
  check_thresholds(cfg, errors, true);
  if (cfg.control_variate &&
      (cfg.algorithm != Algorithm::VT || cfg.prior.kind != PriorKind::Uniform01 ||
       cfg.mode != ExperimentMode::PriorResampled))
    errors.emplace_back("control_variate: only for vt with resampled uniform01 means");
  return errors;
}

std::vector<std::string> validate_estimation(const ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  if (cfg.n < 2) errors.emplace_back("n: must be >= 2");
  if (cfg.mode != ExperimentMode::PriorResampled) errors.emplace_back("mode: estimators integrate over the prior");
  if (!cfg.means.empty()) errors.emplace_back("means: not used by estimators");
  const bool closed_form = cfg.algorithm == Algorithm::PW_EE;
  if (!closed_form && cfg.replications < kMinEstimatorReplications)
    errors.push_back("replications: estimators need at least " + std::to_string(kMinEstimatorReplications));
  if (cfg.replications < 1) errors.emplace_back("replications: must be >= 1");
  if (is_bernoulli(cfg.algorithm) && cfg.prior.kind != PriorKind::Uniform01)
    errors.emplace_back("prior: Bernoulli estimators need the uniform01 prior");
  if (cfg.algorithm == Algorithm::VT_Normal && cfg.prior.kind != PriorKind::StdNormal)
    errors.emplace_back("prior: Normal estimators need the std_normal prior");
  const bool need_k = cfg.algorithm == Algorithm::VT || cfg.algorithm == Algorithm::PW;
  check_thresholds(cfg, errors, need_k);
  if (cfg.control_variate && cfg.algorithm != Algorithm::VT)
    errors.emplace_back("control_variate: only for the vt estimator");
  return errors;
}

ResultRow run_experiment(const ExperimentConfig& cfg) {
  throw_if(validate_simulation(cfg));
  const auto start = std::chrono::steady_clock::now();
  const SimulationAccumulator acc = simulate_range(cfg, cfg.replications, cfg.threads);

  ResultRow row;
  row.command = Command::Simulate;
  row.config = cfg;
  const std::int64_t reps = cfg.replications;
  row.p_correct = proportion(acc.correct, reps);
  const ControlVariateResult cv =
      apply_control_variate(acc.samples, cfg.control_variate ? control_variate_mean(cfg.n) : 0.0);
  if (cfg.control_variate) {
    row.expected_n = with_count(cv.estimate, reps);
    row.expected_n_raw = with_count(cv.raw, reps);
    row.cv_variance_reduction = cv.variance_reduction;
  } else {
    row.expected_n = with_count(cv.raw, reps);
  }
  if (uses_j(cfg.algorithm)) {
    row.best_elim_early_rate = proportion(acc.best_early, reps);
    row.nonbest_elim_early_mean = with_count(acc.nonbest_early.estimate(), reps);
  }
  row.capped_runs = acc.capped;
  row.degenerate_runs = acc.degenerate;
  row.wall_time_seconds = elapsed_since(start);
  return row;
}

ResultRow run_estimation(const ExperimentConfig& cfg) {
  throw_if(validate_estimation(cfg));
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t reps = cfg.replications;
  const McPlan plan{reps, StreamFamily{cfg.master_seed, 0}, cfg.threads};

  ResultRow row;
  row.command = Command::Estimate;
  row.config = cfg;
  auto fill_bounds = [&](const BoundsEstimate& b) {
    row.lower = with_count(b.lower, reps);
    row.upper = with_count(b.upper, reps);
    row.expected_n = with_count(b.expected_n, reps);
    row.skipped_ties = b.skipped_ties;
    if (b.expected_n_cv) {
      row.expected_n = with_count(b.expected_n_cv->estimate, reps);
      row.expected_n_raw = with_count(b.expected_n, reps);
      row.cv_variance_reduction = b.expected_n_cv->variance_reduction;
    }
  };

  switch (cfg.algorithm) {
    case Algorithm::VT:
      fill_bounds(estimate_vt_bounds(cfg.prior, cfg.n, *cfg.k, plan, cfg.control_variate));
      break;
    case Algorithm::PW:
      fill_bounds(estimate_pw_bounds(cfg.prior, cfg.n, *cfg.k, plan));
      break;
    case Algorithm::VT_Normal:
      fill_bounds(estimate_normal_bounds(cfg.n, *cfg.c, cfg.sigma_or_default(), plan));
      break;
    case Algorithm::VT_EE:
      row.best_elim_early_rate = with_count(vt_ee_best_elim_prob(cfg.n, *cfg.j, plan), reps);
      row.nonbest_elim_early_mean = with_count(vt_ee_nonbest_mean(cfg.n, *cfg.j, plan), reps);
      break;
    case Algorithm::PW_EE:
      row.best_elim_early_rate = EstimateWithError{pw_ee_best_elim_prob(cfg.n, *cfg.j), 0.0, reps};
      row.nonbest_elim_early_mean = EstimateWithError{pw_ee_nonbest_mean(cfg.n, *cfg.j), 0.0, reps};
      break;
  }
  row.wall_time_seconds = elapsed_since(start);
  return row;
}

double estimate_seconds(Command command, const ExperimentConfig& cfg) {
  const unsigned workers = resolve_threads(cfg.threads);
  if (command == Command::Simulate) {
    throw_if(validate_simulation(cfg));
    const std::int64_t pilot = std::min<std::int64_t>(cfg.replications, 256);
    const auto start = std::chrono::steady_clock::now();
    simulate_range(cfg, pilot, 1);
    return elapsed_since(start) * static_cast<double>(cfg.replications) / static_cast<double>(pilot) / workers;
  }
  throw_if(validate_estimation(cfg));
  if (cfg.algorithm == Algorithm::PW_EE) return 0.0;
  ExperimentConfig pilot = cfg;
  pilot.replications = kMinEstimatorReplications;
  pilot.threads = 1;
  const auto start = std::chrono::steady_clock::now();
  run_estimation(pilot);
  return elapsed_since(start) * static_cast<double>(cfg.replications) / static_cast<double>(pilot.replications) /
         workers;
}

}  // namespace seqelim
