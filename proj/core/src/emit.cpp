#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "seqelim/errors.hpp"
#include "seqelim/experiment.hpp"

namespace seqelim {

namespace {

using json = nlohmann::ordered_json;

enum class Kind { Text, Integer, Unsigned, Real, Flag, List };

struct Column {
  const char* name;
  Kind kind;
};

// Declaration order of ResultRow, with each estimate split into value and
// standard error.
const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      {"command", Kind::Text},
      {"algorithm", Kind::Text},
      {"mode", Kind::Text},
      {"prior", Kind::Text},
      {"n", Kind::Integer},
      {"k", Kind::Integer},
      {"c", Kind::Real},
      {"j", Kind::Integer},
      {"sigma", Kind::Real},
      {"means", Kind::List},
      {"replications", Kind::Integer},
      {"master_seed", Kind::Unsigned},
      {"control_variate", Kind::Flag},
      {"max_subrounds", Kind::Integer},
      {"p_correct", Kind::Real},
      {"p_correct_se", Kind::Real},
      {"expected_n", Kind::Real},
      {"expected_n_se", Kind::Real},
      {"lower", Kind::Real},
      {"lower_se", Kind::Real},
      {"upper", Kind::Real},
      {"upper_se", Kind::Real},
      {"best_elim_early_rate", Kind::Real},
      {"best_elim_early_rate_se", Kind::Real},
      {"nonbest_elim_early_mean", Kind::Real},
      {"nonbest_elim_early_mean_se", Kind::Real},
      {"expected_n_raw", Kind::Real},
      {"expected_n_raw_se", Kind::Real},
      {"cv_variance_reduction", Kind::Real},
      {"capped_runs", Kind::Integer},
      {"skipped_ties", Kind::Integer},
      {"degenerate_runs", Kind::Integer},
      {"wall_time_seconds", Kind::Real},
  };
  return cols;
}

template <class T>
json optional_value(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

void put_estimate(json& obj, const std::string& name, const std::optional<EstimateWithError>& e) {
  obj[name] = e ? json(e->value) : json(nullptr);
  obj[name + "_se"] = e ? json(e->std_error) : json(nullptr);
}

json row_to_json(const ResultRow& row) {
  const ExperimentConfig& c = row.config;
  json o = json::object();
  o["command"] = std::string(to_string(row.command));
  o["algorithm"] = std::string(to_string(c.algorithm));
  o["mode"] = std::string(to_string(c.mode));
  o["prior"] = std::string(to_string(c.prior.kind));
  o["n"] = c.n;
  o["k"] = optional_value(c.k);
  o["c"] = optional_value(c.c);
  o["j"] = optional_value(c.j);
  o["sigma"] = optional_value(c.sigma);
  o["means"] = c.means;
  o["replications"] = c.replications;
  o["master_seed"] = c.master_seed;
  o["control_variate"] = c.control_variate;
  o["max_subrounds"] = c.max_subrounds;
  put_estimate(o, "p_correct", row.p_correct);
  put_estimate(o, "expected_n", row.expected_n);
  put_estimate(o, "lower", row.lower);
  put_estimate(o, "upper", row.upper);
  put_estimate(o, "best_elim_early_rate", row.best_elim_early_rate);
  put_estimate(o, "nonbest_elim_early_mean", row.nonbest_elim_early_mean);
  put_estimate(o, "expected_n_raw", row.expected_n_raw);
  o["cv_variance_reduction"] = optional_value(row.cv_variance_reduction);
  o["capped_runs"] = row.capped_runs;
  o["skipped_ties"] = row.skipped_ties;
  o["degenerate_runs"] = row.degenerate_runs;
  o["wall_time_seconds"] = row.wall_time_seconds;
  return o;
}

template <class T>
std::optional<T> get_optional(const json& o, const char* key) {
  const json& v = o.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

std::optional<EstimateWithError> get_estimate(const json& o, const std::string& name, std::int64_t reps) {
  const json& v = o.at(name);
  if (v.is_null()) return std::nullopt;
  return EstimateWithError{v.get<double>(), o.at(name + "_se").get<double>(), reps};
}

ResultRow row_from_json(const json& o) {
  ResultRow row;
  const std::string command = o.at("command").get<std::string>();
  if (command == "simulate") row.command = Command::Simulate;
  else if (command == "estimate") row.command = Command::Estimate;
  else throw std::runtime_error("unknown command '" + command + "'");

  ExperimentConfig& c = row.config;
  c.algorithm = parse_algorithm(o.at("algorithm").get<std::string>());
  const std::string mode = o.at("mode").get<std::string>();
  if (mode == "prior") c.mode = ExperimentMode::PriorResampled;
  else if (mode == "fixed") c.mode = ExperimentMode::FixedMeans;
  else throw std::runtime_error("unknown mode '" + mode + "'");
  c.prior = PriorSpec{parse_prior_kind(o.at("prior").get<std::string>())};
  c.n = o.at("n").get<int>();
  c.k = get_optional<int>(o, "k");
  c.c = get_optional<double>(o, "c");
  c.j = get_optional<int>(o, "j");
  c.sigma = get_optional<double>(o, "sigma");
  c.means = o.at("means").get<std::vector<double>>();
  c.replications = o.at("replications").get<std::int64_t>();
  c.master_seed = o.at("master_seed").get<std::uint64_t>();
  c.control_variate = o.at("control_variate").get<bool>();
  c.max_subrounds = o.at("max_subrounds").get<std::int64_t>();

  const std::int64_t reps = c.replications;
  row.p_correct = get_estimate(o, "p_correct", reps);
  row.expected_n = get_estimate(o, "expected_n", reps);
  row.lower = get_estimate(o, "lower", reps);
  row.upper = get_estimate(o, "upper", reps);
  row.best_elim_early_rate = get_estimate(o, "best_elim_early_rate", reps);
  row.nonbest_elim_early_mean = get_estimate(o, "nonbest_elim_early_mean", reps);
  row.expected_n_raw = get_estimate(o, "expected_n_raw", reps);
  row.cv_variance_reduction = get_optional<double>(o, "cv_variance_reduction");
  row.capped_runs = o.at("capped_runs").get<std::int64_t>();
  row.skipped_ties = o.at("skipped_ties").get<std::int64_t>();
  row.degenerate_runs = o.at("degenerate_runs").get<std::int64_t>();
  row.wall_time_seconds = o.at("wall_time_seconds").get<double>();
  return row;
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_real(v.get<double>());
  std::string out;
  for (const auto& item : v) {
    if (!out.empty()) out += ';';
    out += format_real(item.get<double>());
  }
  return out;
}

template <class T>
T parse_number(std::string_view text, const char* column) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::runtime_error(std::string("bad number in column ") + column + ": '" + std::string(text) + "'");
  return value;
}

json parse_cell(std::string_view text, const Column& col) {
  if (col.kind == Kind::List) {
    json arr = json::array();
    std::size_t start = 0;
    while (start < text.size()) {
      const std::size_t end = std::min(text.find(';', start), text.size());
      arr.push_back(parse_number<double>(text.substr(start, end - start), col.name));
      start = end + 1;
    }
    return arr;
  }
  if (text.empty()) return nullptr;
  switch (col.kind) {
    case Kind::Text: return std::string(text);
    case Kind::Integer: return parse_number<std::int64_t>(text, col.name);
    case Kind::Unsigned: return parse_number<std::uint64_t>(text, col.name);
    case Kind::Real: return parse_number<double>(text, col.name);
    case Kind::Flag:
      if (text == "true") return true;
      if (text == "false") return false;
      throw std::runtime_error(std::string("bad flag in column ") + col.name);
    case Kind::List: break;
  }
  return nullptr;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ValidationError({"format: must be csv or json"});
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : columns()) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].name;
  out << '\n';
  for (const auto& row : rows) {
    const json o = row_to_json(row);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << format_cell(o.at(cols[i].name));
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) arr.push_back(row_to_json(row));
  out << arr.dump(2) << '\n';
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream s;
  write_csv(s, rows);
  return s.str();
}

std::string to_json(const std::vector<ResultRow>& rows) {
  std::ostringstream s;
  write_json(s, rows);
  return s.str();
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw std::runtime_error("empty CSV");
  const auto& cols = columns();
  const auto header = split_fields(lines[0]);
  if (header.size() != cols.size()) throw std::runtime_error("CSV header does not match the result schema");
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (header[i] != cols[i].name) throw std::runtime_error("unexpected CSV column '" + std::string(header[i]) + "'");

  std::vector<ResultRow> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    if (fields.size() != cols.size())
      throw std::runtime_error("CSV line " + std::to_string(r + 1) + " has the wrong number of fields");
    json o = json::object();
    for (std::size_t i = 0; i < cols.size(); ++i) o[cols[i].name] = parse_cell(fields[i], cols[i]);
    rows.push_back(row_from_json(o));
  }
  return rows;
}

std::vector<ResultRow> parse_json(std::string_view text) {
  const json arr = json::parse(text.begin(), text.end());
  if (!arr.is_array()) throw std::runtime_error("result JSON must be an array");
  std::vector<ResultRow> rows;
  for (const auto& o : arr) rows.push_back(row_from_json(o));
  return rows;
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit: no rows");
  auto write = [&](std::ostream& out) {
    if (format == OutputFormat::Csv) write_csv(out, rows);
    else write_json(out, rows);
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace seqelim
