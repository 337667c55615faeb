// Golden regression: runs every config named in tables.csv once and checks
// the listed metrics. Usage: seqelim_golden_tests <tables.csv> <configs dir>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "seqelim/experiment.hpp"

using namespace seqelim;

namespace {

struct Check {
  std::string command, config, metric, source, note;
  double expected = 0, abs = 0, rel = 0, se_mult = 0, ref_se = 0;
  bool slow = false;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<Check> read_checks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<Check> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = split(line);
    if (f.size() < 10) throw std::runtime_error("malformed line: " + line);
    Check c;
    c.command = f[0];
    c.config = f[1];
    c.metric = f[2];
    c.expected = std::stod(f[3]);
    c.abs = std::stod(f[4]);
    c.rel = std::stod(f[5]);
    c.se_mult = std::stod(f[6]);
    c.ref_se = std::stod(f[7]);
    c.source = f[8];
    c.slow = f[9] == "1";
    c.note = f.size() > 10 ? f[10] : "";
    out.push_back(c);
  }
  return out;
}

std::optional<EstimateWithError> metric(const ResultRow& row, const std::string& name) {
  if (name == "p_correct") return row.p_correct;
  if (name == "expected_n") return row.expected_n;
  if (name == "lower") return row.lower;
  if (name == "upper") return row.upper;
  if (name == "best_elim_early_rate") return row.best_elim_early_rate;
  if (name == "nonbest_elim_early_mean") return row.nonbest_elim_early_mean;
  throw std::runtime_error("unknown metric " + name);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <tables.csv> <configs dir>\n", argv[0]);
    return 2;
  }
  const char* slow_env = std::getenv("SEQELIM_SLOW_TESTS");
  const bool run_slow = slow_env && std::string(slow_env) == "1";
  const auto checks = read_checks(argv[1]);

  std::map<std::pair<std::string, std::string>, ResultRow> results;
  int failures = 0, passed = 0, skipped = 0;
  for (const auto& c : checks) {
    if (c.slow && !run_slow) {
      std::printf("SKIP %-40s %-24s (slow; set SEQELIM_SLOW_TESTS=1)\n", c.config.c_str(), c.metric.c_str());
      ++skipped;
      continue;
    }
    const auto key = std::make_pair(c.command, c.config);
    auto it = results.find(key);
    if (it == results.end()) {
      auto cfg = load_experiment_config(std::string(argv[2]) + "/" + c.config);
      cfg.threads = 0;
      const auto row = c.command == "simulate" ? run_experiment(cfg) : run_estimation(cfg);
      it = results.emplace(key, row).first;
      if (row.capped_runs != 0) {
        std::printf("FAIL %-40s capped_runs = %lld\n", c.config.c_str(), static_cast<long long>(row.capped_runs));
        ++failures;
      }
    }
    const auto value = metric(it->second, c.metric);
    if (!value) {
      std::printf("FAIL %-40s %-24s missing from the result row\n", c.config.c_str(), c.metric.c_str());
      ++failures;
      continue;
    }
    const double tol = c.abs + c.rel * std::abs(c.expected) +
                       c.se_mult * std::sqrt(value->std_error * value->std_error + c.ref_se * c.ref_se);
    const double diff = std::abs(value->value - c.expected);
    const bool ok = diff <= tol;
    std::printf("%s %-40s %-24s value %.6g (se %.2g) expected %.6g tol %.3g [%s]\n", ok ? "PASS" : "FAIL",
                c.config.c_str(), c.metric.c_str(), value->value, value->std_error, c.expected, tol,
                c.source.c_str());
    ok ? ++passed : ++failures;
  }
  std::printf("%d passed, %d failed, %d skipped\n", passed, failures, skipped);
  return failures == 0 ? 0 : 1;
}
