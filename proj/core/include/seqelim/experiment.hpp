#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqelim/calibration.hpp"
#include "seqelim/prior.hpp"
#include "seqelim/simulators.hpp"
#include "seqelim/statistics.hpp"

namespace seqelim {

enum class ExperimentMode { PriorResampled, FixedMeans };

std::string_view to_string(ExperimentMode mode);

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::PriorResampled;
  std::vector<double> means;  // FixedMeans only
  Algorithm algorithm = Algorithm::VT;
  PriorSpec prior = PriorSpec::uniform01();
  int n = 2;
  std::optional<int> k;
  std::optional<double> c;
  std::optional<int> j;
  std::optional<double> sigma;  // Normal rewards; 1 when unset
  std::int64_t replications = 1;
  std::uint64_t master_seed = 0;
  bool control_variate = false;
  std::int64_t max_subrounds = kDefaultMaxSubrounds;
  unsigned threads = 0;  // not part of the result

  double sigma_or_default() const noexcept { return sigma.value_or(1.0); }
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

enum class Command { Simulate, Estimate };

std::string_view to_string(Command command);

// One output line. Optional estimates are blank in CSV and null in JSON.
// Every EstimateWithError carries the row's replication count.
struct ResultRow {
  Command command = Command::Simulate;
  ExperimentConfig config;
  std::optional<EstimateWithError> p_correct;
  std::optional<EstimateWithError> expected_n;
  std::optional<EstimateWithError> lower;
  std::optional<EstimateWithError> upper;
  std::optional<EstimateWithError> best_elim_early_rate;
  std::optional<EstimateWithError> nonbest_elim_early_mean;
  // Without the control variate, when it was applied.
  std::optional<EstimateWithError> expected_n_raw;
  std::optional<double> cv_variance_reduction;
  std::int64_t capped_runs = 0;
  std::int64_t skipped_ties = 0;
  std::int64_t degenerate_runs = 0;
  double wall_time_seconds = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// Every violated field, empty when the config is valid.
std::vector<std::string> validate_simulation(const ExperimentConfig& cfg);
std::vector<std::string> validate_estimation(const ExperimentConfig& cfg);

// Runs the configured simulator on streams 0..replications-1 of
// master_seed. In PriorResampled mode each replication first draws its n
// means from its own stream. With control_variate (VT, uniform prior,
// resampled means) expected_n is adjusted with Y = 1/(P1 (1 - P2)) of the
// drawn means. Throws ValidationError.
ResultRow run_experiment(const ExperimentConfig& cfg);

// Estimators for the configured algorithm:
//   VT, PW, VT_Normal  lower / upper / expected_n bounds
//   VT_EE              P(best eliminated early) and E[N*] by Monte Carlo
//   PW_EE              exact closed forms (zero standard error)
// Throws ValidationError.
ResultRow run_estimation(const ExperimentConfig& cfg);

// Rough wall time in seconds, from a short timed pilot run.
double estimate_seconds(Command command, const ExperimentConfig& cfg);

// ---- serialization ----

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(std::string_view text);

// Fixed CSV header, fields in declaration order.
const std::vector<std::string>& csv_columns();

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const std::vector<ResultRow>& rows);
std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows);

// Inverse of the writers; throw std::runtime_error on malformed input.
std::vector<ResultRow> parse_csv(std::string_view text);
std::vector<ResultRow> parse_json(std::string_view text);

// Writes rows to path ("-" for stdout). Throws std::runtime_error when the
// file cannot be written, and std::invalid_argument for an empty row set.
void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path);

// ---- configuration files ----

// Calibration request read from a config file.
struct CalibrationConfig {
  Algorithm algorithm = Algorithm::VT;
  PriorSpec prior = PriorSpec::uniform01();
  int n = 2;
  double alpha = 0.95;
  std::optional<double> sigma;
  CalibrationOptions options;
};

// A JSON object with the ExperimentConfig fields ("mode" is "prior" or
// "fixed", "seed" is the master seed). Unknown keys and type errors are
// reported together as a ValidationError.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::string& path);
CalibrationConfig parse_calibration_config(std::string_view json_text);
CalibrationConfig load_calibration_config(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace seqelim
