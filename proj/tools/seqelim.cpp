// seqelim: command-line front end for the simulators, estimators,
// threshold calibration and closed-form analytics.
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid input,
// 3 estimated run time above --budget (override with --force).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqelim/bounds.hpp"
#include "seqelim/calibration.hpp"
#include "seqelim/early_elimination.hpp"
#include "seqelim/errors.hpp"
#include "seqelim/experiment.hpp"
#include "seqelim/normal_walk.hpp"
#include "seqelim/parallel.hpp"
#include "seqelim/ruin.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace seqelim;

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct BudgetRefused {
  double estimate;
  double budget;
};

// Flags shared by every subcommand.
struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> reps;
  std::optional<unsigned> threads;
  std::string format = "csv";
  std::string out = "-";
  bool force = false;
  double budget = 300.0;
  bool no_timing = false;

  void attach(CLI::App* app, bool with_config = true) {
    if (with_config) app->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--seed", seed, "master seed");
    app->add_option("--reps", reps, "replications");
    app->add_option("--threads", threads, "worker threads (default: SEQELIM_THREADS, else all cores)");
    app->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", out, "output path, - for stdout");
    app->add_flag("--force", force, "run even when the estimated time exceeds --budget");
    app->add_option("--budget", budget, "refuse runs estimated to take longer (seconds)");
    app->add_flag("--no-timing", no_timing, "report wall_time_seconds as 0 for byte-stable output");
  }

  unsigned thread_count() const {
    if (threads) return *threads;
    if (const char* env = std::getenv("SEQELIM_THREADS")) {
      try {
        const long v = std::stol(env);
        if (v < 0) throw std::invalid_argument("negative");
        return static_cast<unsigned>(v);
      } catch (const std::exception&) {
        throw ValidationError({"SEQELIM_THREADS: must be a non-negative integer"});
      }
    }
    return 0;
  }

  void check_budget(double seconds) const {
    if (!force && seconds > budget) throw BudgetRefused{seconds, budget};
  }
};

// Experiment fields that may be given as flags; each overrides the config.
struct ExperimentFlags {
  std::optional<std::string> algorithm;
  std::optional<std::string> prior;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<double> c;
  std::optional<int> j;
  std::optional<double> sigma;
  std::vector<double> means;
  std::optional<std::int64_t> max_subrounds;
  bool control_variate = false;

  void attach(CLI::App* app) {
    app->add_option("--algorithm", algorithm, "vt, vt_ee, pw, pw_ee or vt_normal");
    app->add_option("--prior", prior, "uniform01 or std_normal");
    app->add_option("-n,--arms", n, "number of arms");
    app->add_option("-k", k, "success threshold (Bernoulli)");
    app->add_option("-c", c, "sum threshold (Normal)");
    app->add_option("-j", j, "early-elimination horizon");
    app->add_option("--sigma", sigma, "reward standard deviation (Normal)");
    app->add_option("--means", means, "fixed arm means, comma separated")->delimiter(',');
    app->add_option("--max-subrounds", max_subrounds, "safety cap on (sub)rounds");
    app->add_flag("--control-variate", control_variate, "apply the 1/(P1(1-P2)) control variate");
  }

  ExperimentConfig resolve(const Common& common) const {
    ExperimentConfig cfg = common.config.empty() ? ExperimentConfig{} : load_experiment_config(common.config);
    std::vector<std::string> errors;
    if (algorithm) {
      try {
        cfg.algorithm = parse_algorithm(*algorithm);
      } catch (const ValidationError& e) {
        errors.insert(errors.end(), e.violations().begin(), e.violations().end());
      }
    }
    if (prior) {
      try {
        cfg.prior = PriorSpec{parse_prior_kind(*prior)};
      } catch (const std::exception& e) {
        errors.push_back(std::string("prior: ") + e.what());
      }
    } else if (common.config.empty() && cfg.algorithm == Algorithm::VT_Normal) {
      cfg.prior = PriorSpec::std_normal();
    }
    if (!means.empty()) {
      cfg.means = means;
      cfg.mode = ExperimentMode::FixedMeans;
      if (!n) cfg.n = static_cast<int>(means.size());
    }
    if (n) cfg.n = *n;
    if (k) cfg.k = k;
    if (c) cfg.c = c;
    if (j) cfg.j = j;
    if (sigma) cfg.sigma = sigma;
    if (max_subrounds) cfg.max_subrounds = *max_subrounds;
    if (control_variate) cfg.control_variate = true;
    if (common.seed) cfg.master_seed = *common.seed;
    if (common.reps) cfg.replications = *common.reps;
    cfg.threads = common.thread_count();
    if (!errors.empty()) throw ValidationError(errors);
    return cfg;
  }
};

// One flat record written as a one-line CSV or a JSON object.
using Record = std::vector<std::pair<std::string, json>>;

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_records(const std::vector<Record>& records, const Common& common) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (common.out != "-") {
    file.open(common.out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + common.out + "' for writing");
    out = &file;
  }
  if (common.format == "json") {
    json arr = json::array();
    for (const auto& rec : records) {
      json o = json::object();
      for (const auto& [key, value] : rec) o[key] = value;
      arr.push_back(o);
    }
    *out << (records.size() == 1 ? arr[0] : arr).dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < records.front().size(); ++i) *out << (i ? "," : "") << records.front()[i].first;
    *out << '\n';
    for (const auto& rec : records) {
      for (std::size_t i = 0; i < rec.size(); ++i) *out << (i ? "," : "") << cell(rec[i].second);
      *out << '\n';
    }
  }
  out->flush();
  if (!*out) throw std::runtime_error("failed writing output");
}

void add_estimate(Record& rec, const std::string& name, const EstimateWithError& e) {
  rec.emplace_back(name, e.value);
  rec.emplace_back(name + "_se", e.std_error);
}

int run_rows(Command command, const ExperimentFlags& flags, const Common& common) {
  const ExperimentConfig cfg = flags.resolve(common);
  if (command == Command::Simulate) {
    const auto errors = validate_simulation(cfg);
    if (!errors.empty()) throw ValidationError(errors);
  } else {
    const auto errors = validate_estimation(cfg);
    if (!errors.empty()) throw ValidationError(errors);
  }
  if (!common.force) common.check_budget(estimate_seconds(command, cfg));
  ResultRow row = command == Command::Simulate ? run_experiment(cfg) : run_estimation(cfg);
  if (common.no_timing) row.wall_time_seconds = 0.0;
  emit({row}, parse_output_format(common.format), common.out);
  return 0;
}

struct CalibrateFlags {
  std::optional<std::string> algorithm;
  std::optional<std::string> prior;
  std::optional<int> n;
  std::optional<double> alpha;
  std::optional<double> sigma;
  std::optional<std::string> policy;
  std::optional<std::int64_t> scan_reps;
  std::optional<int> max_k;
  std::optional<double> max_c;

  void attach(CLI::App* app) {
    app->add_option("--algorithm", algorithm, "vt, pw or vt_normal");
    app->add_option("--prior", prior, "uniform01 (Bernoulli) or std_normal (Normal)");
    app->add_option("-n,--arms", n, "number of arms");
    app->add_option("--alpha", alpha, "target probability of a correct choice");
    app->add_option("--sigma", sigma, "reward standard deviation (vt_normal)");
    app->add_option("--policy", policy, "lower, lower_slack or interval");
    app->add_option("--scan-reps", scan_reps, "replications per probe while scanning");
    app->add_option("--max-k", max_k, "largest k searched");
    app->add_option("--max-c", max_c, "largest c searched");
  }
};

Record calibration_record(const CalibrationConfig& cfg, const CalibrationResult& r) {
  const bool normal = cfg.algorithm == Algorithm::VT_Normal;
  Record rec;
  rec.emplace_back("algorithm", std::string(to_string(cfg.algorithm)));
  rec.emplace_back("prior", std::string(to_string(cfg.prior.kind)));
  rec.emplace_back("n", cfg.n);
  rec.emplace_back("alpha", cfg.alpha);
  rec.emplace_back("sigma", normal ? json(cfg.sigma.value_or(1.0)) : json(nullptr));
  rec.emplace_back("policy", std::string(to_string(cfg.options.policy)));
  rec.emplace_back("scan_replications", cfg.options.scan_replications);
  rec.emplace_back("final_replications", cfg.options.final_replications);
  rec.emplace_back("master_seed", cfg.options.master_seed);
  rec.emplace_back("k_selected", normal ? json(nullptr) : json(r.k_selected));
  rec.emplace_back("c_selected", normal ? json(r.c_selected) : json(nullptr));
  add_estimate(rec, "lower", r.bounds_at_k.lower);
  add_estimate(rec, "upper", r.bounds_at_k.upper);
  add_estimate(rec, "expected_n", r.bounds_at_k.expected_n);
  if (r.bounds_at_k_minus_1) {
    add_estimate(rec, "lower_below", r.bounds_at_k_minus_1->lower);
    add_estimate(rec, "upper_below", r.bounds_at_k_minus_1->upper);
    add_estimate(rec, "expected_n_below", r.bounds_at_k_minus_1->expected_n);
  } else {
    for (const char* name : {"lower_below", "upper_below", "expected_n_below"}) {
      rec.emplace_back(name, nullptr);
      rec.emplace_back(std::string(name) + "_se", nullptr);
    }
  }
  rec.emplace_back("score_at_k", r.score_at_k);
  rec.emplace_back("score_below", r.bounds_at_k_minus_1 ? json(r.score_below) : json(nullptr));
  rec.emplace_back("mix_prob", r.mix_prob);
  rec.emplace_back("probes", r.probes);
  return rec;
}

int run_calibrate(const CalibrateFlags& flags, const Common& common) {
  CalibrationConfig cfg = common.config.empty() ? CalibrationConfig{} : load_calibration_config(common.config);
  std::vector<std::string> errors;
  if (flags.algorithm) {
    try {
      cfg.algorithm = parse_algorithm(*flags.algorithm);
      if (common.config.empty())
        cfg.prior = cfg.algorithm == Algorithm::VT_Normal ? PriorSpec::std_normal() : PriorSpec::uniform01();
    } catch (const ValidationError& e) {
      errors.insert(errors.end(), e.violations().begin(), e.violations().end());
    }
  }
  if (flags.prior) {
    try {
      cfg.prior = PriorSpec{parse_prior_kind(*flags.prior)};
    } catch (const std::exception& e) {
      errors.push_back(std::string("prior: ") + e.what());
    }
  }
  if (flags.policy) {
    try {
      cfg.options.policy = parse_selection_policy(*flags.policy);
    } catch (const ValidationError& e) {
      errors.insert(errors.end(), e.violations().begin(), e.violations().end());
    }
  }
  if (flags.n) cfg.n = *flags.n;
  if (flags.alpha) cfg.alpha = *flags.alpha;
  if (flags.sigma) cfg.sigma = flags.sigma;
  if (flags.scan_reps) cfg.options.scan_replications = *flags.scan_reps;
  if (flags.max_k) cfg.options.max_k = *flags.max_k;
  if (flags.max_c) cfg.options.max_c = *flags.max_c;
  if (common.reps) cfg.options.final_replications = *common.reps;
  if (common.seed) cfg.options.master_seed = *common.seed;
  cfg.options.threads = common.thread_count();

  if (cfg.n < 2) errors.emplace_back("n: must be >= 2");
  if (!(cfg.alpha > 0.5 && cfg.alpha < 1.0)) errors.emplace_back("alpha: must lie in (0.5, 1)");
  if (cfg.algorithm == Algorithm::VT_EE || cfg.algorithm == Algorithm::PW_EE)
    errors.emplace_back("algorithm: calibration supports vt, pw and vt_normal");
  if (cfg.algorithm == Algorithm::VT_Normal && cfg.prior.kind != PriorKind::StdNormal)
    errors.emplace_back("prior: vt_normal calibration uses the std_normal prior");
  if (cfg.algorithm != Algorithm::VT_Normal && cfg.prior.kind != PriorKind::Uniform01)
    errors.emplace_back("prior: Bernoulli calibration needs the uniform01 prior");
  if (cfg.sigma && !(*cfg.sigma > 0.0)) errors.emplace_back("sigma: must be positive");
  if (cfg.options.scan_replications < kMinEstimatorReplications ||
      cfg.options.final_replications < kMinEstimatorReplications)
    errors.push_back("replications: calibration needs at least " + std::to_string(kMinEstimatorReplications));
  if (!errors.empty()) throw ValidationError(errors);

  if (!common.force) {
    // One pilot probe; a search needs a few dozen scan probes and a few final ones.
    const McPlan pilot{kMinEstimatorReplications, StreamFamily{cfg.options.master_seed, 0}, 1};
    const auto start = std::chrono::steady_clock::now();
    if (cfg.algorithm == Algorithm::VT_Normal) estimate_normal_bounds(cfg.n, 1.0, cfg.sigma.value_or(1.0), pilot);
    else if (cfg.algorithm == Algorithm::PW) estimate_pw_bounds(cfg.prior, cfg.n, 1, pilot);
    else estimate_vt_bounds(cfg.prior, cfg.n, 1, pilot);
    const double per_rep =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / pilot.replications;
    const double reps = 30.0 * cfg.options.scan_replications + 4.0 * cfg.options.final_replications;
    common.check_budget(per_rep * reps / resolve_threads(cfg.options.threads));
  }

  const CalibrationResult r =
      cfg.algorithm == Algorithm::VT_Normal
          ? calibrate_c_normal(cfg.n, cfg.alpha, cfg.sigma.value_or(1.0), cfg.options)
          : calibrate_k(cfg.prior, cfg.n, cfg.alpha, cfg.algorithm, cfg.options);
  write_records({calibration_record(cfg, r)}, common);
  return 0;
}

// ---- analytics ----

struct AnalyticsFlags {
  double x = 0.0, y = 0.0, p1 = 0.0, p2 = 0.0, mu = 0.0, b = 0.0, c = 0.0, sigma = 1.0;
  int k = 1, n = 2, j = 1;
  std::int64_t points = kDefaultQuadraturePoints;
};

int run_analytics(const std::string& what, const AnalyticsFlags& f, const Common& common, CLI::App* sub) {
  Record rec;
  if (what == "ruin") {
    const RuinGameParams g{f.x, f.y, f.k};
    rec = {{"x", f.x}, {"y", f.y}, {"k", f.k}, {"win_prob", ruin_win_prob(g)}, {"expected_plays", ruin_expected_plays(g)}};
  } else if (what == "pw") {
    const PwGameParams g{f.p1, f.p2, f.k};
    const PwArmPlays arms = pw_arm_plays(g);
    rec = {{"p1", f.p1},
           {"p2", f.p2},
           {"k", f.k},
           {"win_prob", pw_win_prob(g)},
           {"expected_rounds", pw_expected_rounds(g)},
           {"expected_total_plays", pw_expected_total_plays(g)},
           {"mean_plays_N", pw_mean_plays_N(f.p1, f.p2, f.k)},
           {"plays_first", arms.first},
           {"plays_second", arms.second}};
  } else if (what == "normal") {
    NormalWalkParams w{f.mu, f.b};
    const bool scaled = sub->get_subcommand("normal")->count("-c") > 0;
    if (scaled) w = ScaledNormalWalk{f.mu, f.c, f.sigma}.to_unit();
    const Interval p = normal_crossing_prob_bounds(w);
    const Interval t = normal_expected_tau_bounds(w);
    rec = {{"drift", w.drift},
           {"boundary", w.boundary},
           {"crossing_lower", p.lower},
           {"crossing_upper", p.upper},
           {"crossing_approx", normal_crossing_prob_approx(w)},
           {"tau_lower", t.lower},
           {"tau_upper", t.upper},
           {"tau_approx", normal_expected_tau_approx(w)},
           {"M", scaled ? json(vt_normal_M(f.mu, f.c, f.sigma)) : json(nullptr)}};
  } else if (what == "ee") {
    const McPlan plan{common.reps.value_or(1'000'000), StreamFamily{common.seed.value_or(0), 0}, common.thread_count()};
    if (plan.replications < 1) throw ValidationError({"reps: must be >= 1"});
    common.check_budget(0.15e-6 * static_cast<double>(plan.replications) / resolve_threads(plan.threads));
    const EstimateWithError pl = vt_ee_best_elim_prob(f.n, f.j, plan);
    const EstimateWithError dn = vt_ee_nonbest_mean(f.n, f.j, plan);
    rec = {{"n", f.n},
           {"j", f.j},
           {"replications", plan.replications},
           {"vt_ee_best_elim_prob", pl.value},
           {"vt_ee_best_elim_prob_se", pl.std_error},
           {"vt_ee_nonbest_mean", dn.value},
           {"vt_ee_nonbest_mean_se", dn.std_error},
           {"pw_ee_best_elim_prob", pw_ee_best_elim_prob(f.n, f.j)},
           {"pw_ee_nonbest_mean", pw_ee_nonbest_mean(f.n, f.j)}};
  } else {
    rec = {{"n", f.n}, {"quadrature_points", f.points}, {"control_variate_mean", control_variate_mean(f.n, f.points)}};
  }
  write_records({rec}, common);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential elimination for Bayesian best-arm identification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "seqelim 0.1.0");

  Common common;
  ExperimentFlags sim_flags, est_flags;
  CalibrateFlags cal_flags;
  AnalyticsFlags an;

  auto* simulate = app.add_subcommand("simulate", "run an elimination rule on simulated bandits");
  common.attach(simulate);
  sim_flags.attach(simulate);

  auto* estimate = app.add_subcommand("estimate", "Monte-Carlo bounds and early-elimination analytics");
  Common est_common;
  est_common.attach(estimate);
  est_flags.attach(estimate);

  auto* calibrate = app.add_subcommand("calibrate", "smallest threshold meeting a target confidence");
  Common cal_common;
  cal_common.attach(calibrate);
  cal_flags.attach(calibrate);

  auto* analytics = app.add_subcommand("analytics", "closed-form quantities");
  Common an_common;
  an_common.attach(analytics, false);
  analytics->require_subcommand(1);
  std::string what;
  auto* ruin = analytics->add_subcommand("ruin", "gambler's ruin game between two Bernoulli arms");
  ruin->add_option("-x", an.x, "better mean")->required();
  ruin->add_option("-y", an.y, "other mean")->required();
  ruin->add_option("-k", an.k, "goal")->required();
  auto* pw = analytics->add_subcommand("pw", "two-arm play-the-winner game");
  pw->add_option("--p1", an.p1)->required();
  pw->add_option("--p2", an.p2)->required();
  pw->add_option("-k", an.k, "goal")->required();
  auto* normal = analytics->add_subcommand("normal", "Normal random-walk crossing bounds");
  normal->add_option("--mu", an.mu, "drift (or mean gap with -c)")->required();
  auto* b_opt = normal->add_option("-b", an.b, "boundary of the unit-variance walk");
  auto* c_opt = normal->add_option("-c", an.c, "threshold of the scaled walk");
  normal->add_option("--sigma", an.sigma, "reward standard deviation with -c");
  b_opt->excludes(c_opt);
  auto* ee = analytics->add_subcommand("ee", "early-elimination probabilities");
  ee->add_option("-n", an.n)->required();
  ee->add_option("-j", an.j)->required();
  auto* cv = analytics->add_subcommand("cv-mean", "mean of the 1/(P1(1-P2)) control variate");
  cv->add_option("-n", an.n)->required();
  cv->add_option("--points", an.points, "midpoint-rule resolution");
  for (auto* sub : {ruin, pw, normal, ee, cv}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (simulate->parsed()) return run_rows(Command::Simulate, sim_flags, common);
    if (estimate->parsed()) return run_rows(Command::Estimate, est_flags, est_common);
    if (calibrate->parsed()) return run_calibrate(cal_flags, cal_common);
    for (auto* sub : {ruin, pw, normal, ee, cv}) {
      if (sub->parsed()) {
        if (sub == normal && b_opt->count() == 0 && c_opt->count() == 0)
          throw ValidationError({"normal: give -b or -c"});
        return run_analytics(sub->get_name(), an, an_common, analytics);
      }
    }
  } catch (const BudgetRefused& r) {
    std::cerr << "seqelim: estimated run time " << r.estimate << " s exceeds the budget of " << r.budget
              << " s; rerun with --force or raise --budget\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    std::cerr << "seqelim: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "seqelim: invalid argument: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SingularityError& e) {
    std::cerr << "seqelim: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "seqelim: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
