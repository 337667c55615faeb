#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "seqelim/errors.hpp"
#include "seqelim/experiment.hpp"

namespace seqelim {

namespace {

using nlohmann::json;

// Reads typed fields from a JSON object, collecting every problem instead of
// stopping at the first.
class FieldReader {
 public:
  FieldReader(std::string_view text, std::set<std::string> allowed) {
    try {
      doc_ = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ValidationError({std::string("config: not valid JSON (") + e.what() + ")"});
    }
    if (!doc_.is_object()) throw ValidationError({"config: top level must be a JSON object"});
    for (const auto& [key, value] : doc_.items())
      if (!allowed.count(key)) errors_.push_back(key + ": unknown field");
  }

  bool has(const char* key) const { return doc_.contains(key) && !doc_.at(key).is_null(); }

  template <class T>
  std::optional<T> get(const char* key) {
    if (!has(key)) return std::nullopt;
    const json& v = doc_.at(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw std::invalid_argument("");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw std::invalid_argument("");
        if constexpr (std::is_unsigned_v<T>) {
          if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
            throw std::invalid_argument("");
        }
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw std::invalid_argument("");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw std::invalid_argument("");
      }
      return v.get<T>();
    } catch (const std::exception&) {
      errors_.push_back(std::string(key) + ": wrong type");
      return std::nullopt;
    }
  }

  template <class Parse>
  void parse(const char* key, Parse&& parse_fn) {
    const auto text = get<std::string>(key);
    if (!text) return;
    try {
      parse_fn(*text);
    } catch (const ValidationError& e) {
      for (const auto& v : e.violations()) errors_.push_back(v);
    } catch (const std::exception& e) {
      errors_.push_back(std::string(key) + ": " + e.what());
    }
  }

  void fail(std::string message) { errors_.push_back(std::move(message)); }

  void finish() const {
    if (!errors_.empty()) throw ValidationError(errors_);
  }

 private:
  json doc_;
  std::vector<std::string> errors_;
};

PriorSpec prior_from(std::string_view text) { return PriorSpec{parse_prior_kind(text)}; }

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  FieldReader r(json_text, {"description", "algorithm", "mode", "prior", "n", "k", "c", "j", "sigma", "means",
                            "replications", "seed", "control_variate", "max_subrounds", "threads"});
  ExperimentConfig cfg;
  r.parse("algorithm", [&](const std::string& s) { cfg.algorithm = parse_algorithm(s); });
  r.parse("prior", [&](const std::string& s) { cfg.prior = prior_from(s); });
  if (const auto means = r.get<std::vector<double>>("means")) cfg.means = *means;
  cfg.mode = cfg.means.empty() ? ExperimentMode::PriorResampled : ExperimentMode::FixedMeans;
  r.parse("mode", [&](const std::string& s) {
    if (s == "prior") cfg.mode = ExperimentMode::PriorResampled;
    else if (s == "fixed") cfg.mode = ExperimentMode::FixedMeans;
    else r.fail("mode: must be prior or fixed");
  });
  if (const auto n = r.get<int>("n")) cfg.n = *n;
  else if (!cfg.means.empty()) cfg.n = static_cast<int>(cfg.means.size());
  else if (!r.has("n")) r.fail("n: required");
  cfg.k = r.get<int>("k");
  cfg.c = r.get<double>("c");
  cfg.j = r.get<int>("j");
  cfg.sigma = r.get<double>("sigma");
  if (const auto reps = r.get<std::int64_t>("replications")) cfg.replications = *reps;
  else if (!r.has("replications")) r.fail("replications: required");
  if (const auto seed = r.get<std::uint64_t>("seed")) cfg.master_seed = *seed;
  if (const auto cv = r.get<bool>("control_variate")) cfg.control_variate = *cv;
  if (const auto cap = r.get<std::int64_t>("max_subrounds")) cfg.max_subrounds = *cap;
  if (const auto threads = r.get<unsigned>("threads")) cfg.threads = *threads;
  r.finish();
  return cfg;
}

CalibrationConfig parse_calibration_config(std::string_view json_text) {
  FieldReader r(json_text, {"description", "algorithm", "prior", "n", "alpha", "sigma", "policy", "scan_replications",
                            "final_replications", "seed", "max_k", "max_c", "c_resolution", "threads"});
  CalibrationConfig cfg;
  r.parse("algorithm", [&](const std::string& s) { cfg.algorithm = parse_algorithm(s); });
  cfg.prior = cfg.algorithm == Algorithm::VT_Normal ? PriorSpec::std_normal() : PriorSpec::uniform01();
  r.parse("prior", [&](const std::string& s) { cfg.prior = prior_from(s); });
  r.parse("policy", [&](const std::string& s) { cfg.options.policy = parse_selection_policy(s); });
  if (const auto n = r.get<int>("n")) cfg.n = *n;
  else if (!r.has("n")) r.fail("n: required");
  if (const auto alpha = r.get<double>("alpha")) cfg.alpha = *alpha;
  else if (!r.has("alpha")) r.fail("alpha: required");
  cfg.sigma = r.get<double>("sigma");
  if (const auto v = r.get<std::int64_t>("scan_replications")) cfg.options.scan_replications = *v;
  if (const auto v = r.get<std::int64_t>("final_replications")) cfg.options.final_replications = *v;
  if (const auto v = r.get<std::uint64_t>("seed")) cfg.options.master_seed = *v;
  if (const auto v = r.get<int>("max_k")) cfg.options.max_k = *v;
  if (const auto v = r.get<double>("max_c")) cfg.options.max_c = *v;
  if (const auto v = r.get<double>("c_resolution")) cfg.options.c_resolution = *v;
  if (const auto v = r.get<unsigned>("threads")) cfg.options.threads = *v;
  r.finish();
  return cfg;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_text_file(path));
}

CalibrationConfig load_calibration_config(const std::string& path) {
  return parse_calibration_config(read_text_file(path));
}

}  // namespace seqelim
