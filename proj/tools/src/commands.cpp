// Copyright 2026 The subtde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subtde/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "subtde/cli/csv.hpp"
#include "subtde/errors.hpp"
#include "subtde/parallel.hpp"
#include "subtde/stats.hpp"

namespace subtde::cli {
namespace {

std::vector<std::string> split_columns(std::string_view columns) {
  std::vector<std::string> out(1);
  for (char c : columns) {
    if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void preamble(CsvWriter& csv, std::string_view command, const RunConfig& config,
              std::uint64_t seed) {
  csv.comment("subtde " + std::string(command) + " schema=" +
              std::to_string(kSchemaVersion));
  csv.comment("config_hash=" + hex(config_hash(command, config)) +
              " seed=" + std::to_string(seed));
}

std::string method_name(interp::Method m) { return std::string(interp::to_string(m)); }

void summary_fields(std::vector<std::string>& row, const Summary& s) {
  row.push_back(format_number(s.mean));
  row.push_back(format_number(s.median));
  row.push_back(format_number(s.stddev));
}

nlohmann::json summary_json(const std::vector<double>& values) {
  if (values.empty()) return nullptr;
  const auto s = aggregate(values);
  return {{"mean", s.mean}, {"median", s.median}, {"std", s.stddev}, {"count", s.count}};
}

double parse_cell(const std::string& cell) {
  if (cell == "nan" || cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  try {
    return std::stod(cell);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kFormatError, "bad numeric CSV cell '" + cell + "'");
  }
}

}  // namespace

void write_simulate(const RunConfig& config, std::ostream& out, unsigned threads) {
  const auto cfg = scenario_config(config);
  const auto ms = methods(config);
  const auto trial = scenario::run_trial(cfg, ms, threads);

  CsvWriter csv(out);
  preamble(csv, "simulate", config, cfg.seed);
  csv.comment("units: toa_error_s and tdoa_error_s in seconds (mean absolute error "
              "over sensors and sensor pairs); position_error dimensionless "
              "(|x_hat - x| / |x - r_c|)");
  csv.row(split_columns(kSimulateColumns));
  for (const auto& r : trial.records) {
    csv.row({std::to_string(r.source), method_name(r.method),
             format_number(r.mean_toa_error()), format_number(r.mean_tdoa_error()),
             format_number(r.position_error), r.failed ? "1" : "0"});
  }
}

void write_sweep(const RunConfig& config, std::ostream& out, unsigned threads) {
  const auto spec = sweep_spec(config);
  const auto table = scenario::run_sweep(spec, threads);

  CsvWriter csv(out);
  preamble(csv, "sweep", config, spec.base.seed);
  csv.comment("units: *_s columns in seconds; position_* dimensionless; statistics "
              "pooled over sources and sensors or sensor pairs; median is the lower "
              "middle value");
  auto header = split_columns(kSweepStatColumns);
  header.insert(header.begin(), std::string(scenario::to_string(table.parameter)));
  csv.row(header);
  for (const auto& r : table.rows) {
    std::vector<std::string> row{format_number(r.value), method_name(r.method)};
    summary_fields(row, r.toa);
    summary_fields(row, r.tdoa);
    summary_fields(row, r.position);
    row.push_back(std::to_string(r.sources));
    row.push_back(std::to_string(r.failures));
    csv.row(row);
  }
}

void write_ingest(const RunConfig& config, std::ostream& out) {
  const auto plan = ingest_plan(config);
  CsvWriter csv(out);
  preamble(csv, "ingest", config, plan.seed);
  csv.comment("units: tdoa_error_s in seconds (mean absolute error over sensor "
              "pairs); position_error_m in meters");
  csv.comment("caveat: " + std::string(ingest::kGroundTruthCaveat));
  csv.row(split_columns(kIngestColumns));
  for (const auto& files : plan.measurements) {
    const auto set = ingest::load_measurement(files.audio, files.geometry);
    const auto truth = ingest::ground_truth_pipeline(set, plan.options);
    const auto rows =
        ingest::evaluate_measurement(truth, set.geometry, plan.options, plan.evaluation);
    for (const auto& r : rows) {
      double mean = std::numeric_limits<double>::quiet_NaN();
      if (!r.tdoa_errors.empty()) {
        mean = 0.0;
        for (double e : r.tdoa_errors) mean += e;
        mean /= static_cast<double>(r.tdoa_errors.size());
      }
      csv.row({set.source_label, std::to_string(r.event), method_name(r.method),
               format_number(mean),
               format_number(r.position_error_m.value_or(
                   std::numeric_limits<double>::quiet_NaN())),
               r.failed ? "1" : "0"});
    }
  }
}

void write_report(const RunConfig& config, std::ostream& out) {
  const auto input = config.get("input");
  if (!input) throw Error(ErrorCode::kConfigError, "report needs 'input'");
  std::ifstream in(*input);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot read " + *input);
  const auto table = read_csv(in);

  const long method_col = table.column("method");
  long tdoa_col = table.column("tdoa_error_s");
  long pos_col = table.column("position_error");
  if (pos_col < 0) pos_col = table.column("position_error_m");
  const long failed_col = table.column("failed");
  if (method_col < 0 || tdoa_col < 0 || pos_col < 0 || failed_col < 0) {
    throw Error(ErrorCode::kFormatError,
                *input + ": not a simulate or ingest CSV (missing columns)");
  }

  std::vector<std::string> order;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> groups;
  std::map<std::string, std::size_t> failures;
  for (const auto& row : table.rows) {
    const auto& m = row[static_cast<std::size_t>(method_col)];
    if (!groups.count(m)) order.push_back(m);
    auto& g = groups[m];
    if (row[static_cast<std::size_t>(failed_col)] == "1") {
      ++failures[m];
      continue;
    }
    const double t = parse_cell(row[static_cast<std::size_t>(tdoa_col)]);
    const double p = parse_cell(row[static_cast<std::size_t>(pos_col)]);
    if (!std::isnan(t)) g.first.push_back(t);
    if (!std::isnan(p)) g.second.push_back(p);
  }

  nlohmann::json doc;
  doc["input"] = *input;
  doc["metadata"] = table.comments;
  doc["methods"] = nlohmann::json::array();
  for (const auto& m : order) {
    const auto& g = groups[m];
    doc["methods"].push_back({{"method", m},
                              {"failures", failures[m]},
                              {"tdoa_error_s", summary_json(g.first)},
                              {table.header[static_cast<std::size_t>(pos_col)],
                               summary_json(g.second)}});
  }
  out << doc.dump(2) << '\n';
}

int run_command(std::string_view command, const RunConfig& config,
                std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  try {
    const unsigned threads = default_thread_count();
    if (command == "simulate") {
      write_simulate(config, buffer, threads);
    } else if (command == "sweep") {
      write_sweep(config, buffer, threads);
    } else if (command == "ingest") {
      write_ingest(config, buffer);
    } else if (command == "report") {
      write_report(config, buffer);
    } else {
      err << "error: unknown command '" << command << "'\n";
      return kExitConfig;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kConfigError ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  if (const auto path = config.get("output"); path && !path->empty() && *path != "-") {
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    file << buffer.str();
    if (!file) {
      err << "error: cannot write " << *path << '\n';
      return kExitRuntime;
    }
  } else {
    out << buffer.str();
  }
  return kExitOk;
}

}  // namespace subtde::cli
