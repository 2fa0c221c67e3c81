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

#include "subtde/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "subtde/errors.hpp"
#include "subtde/tde.hpp"

namespace subtde::cli {
namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::kConfigError, what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view value) {
  const std::string v(trim(value));
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    config_error("key '" + std::string(key) + "': '" + v + "' is not a number");
  }
  return out;
}

long to_long(std::string_view key, std::string_view value) {
  const std::string v(trim(value));
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    config_error("key '" + std::string(key) + "': '" + v + "' is not an integer");
  }
  return out;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t end = std::min(value.find(',', start), value.size());
    const auto item = trim(value.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

}  // namespace

const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys = {
      "output",        "seed",           "rate_hz",        "speed_of_sound",
      "snr_db",        "window_ms",      "num_sources",    "bandwidth_ratio",
      "sensors",       "array_radius_m", "factor",         "s_sinc",
      "s_ws",          "thiran_order",   "window_shape",   "methods",
      "sweep_parameter", "sweep_values", "audio",          "geometry",
      "target_rate_hz", "events",        "input",
  };
  return keys;
}

RunConfig RunConfig::parse(std::string_view text, std::string_view origin) {
  RunConfig config;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      config_error(std::string(origin) + ":" + std::to_string(line_no) +
                   ": expected 'key = value'");
    }
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    config_error("unknown configuration key '" + std::string(key) + "'");
  }
  entries_[std::string(key)] = std::string(trim(value));
}

void RunConfig::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    config_error("expected key=value, got '" + std::string(assignment) + "'");
  }
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

bool RunConfig::has(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

std::optional<std::string> RunConfig::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double RunConfig::number(std::string_view key, double fallback) const {
  const auto v = get(key);
  return v ? to_double(key, *v) : fallback;
}

long RunConfig::integer(std::string_view key, long fallback) const {
  const auto v = get(key);
  return v ? to_long(key, *v) : fallback;
}

std::string RunConfig::text(std::string_view key, std::string_view fallback) const {
  return get(key).value_or(std::string(fallback));
}

std::vector<std::string> RunConfig::list(std::string_view key) const {
  const auto v = get(key);
  return v ? split_list(*v) : std::vector<std::string>{};
}

std::uint64_t config_hash(std::string_view command, const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  feed(command);
  feed("\n");
  for (const auto& [key, value] : config.entries()) {
    if (key == "output") continue;
    feed(key);
    feed("=");
    feed(value);
    feed("\n");
  }
  return h;
}

std::vector<interp::Method> methods(const RunConfig& config) {
  const auto names = config.list("methods");
  if (names.empty() || (names.size() == 1 && names.front() == "all")) {
    return {std::begin(interp::kAllMethods), std::end(interp::kAllMethods)};
  }
  std::vector<interp::Method> out;
  for (const auto& name : names) {
    const auto m = interp::parse_method(name);
    if (!m) config_error("key 'methods': unknown method '" + name + "'");
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  return out;
}

scenario::ScenarioConfig scenario_config(const RunConfig& config) {
  scenario::ScenarioConfig cfg;
  cfg.rate_hz = config.number("rate_hz", cfg.rate_hz);
  cfg.speed_of_sound = config.number("speed_of_sound", cfg.speed_of_sound);
  cfg.snr_db = config.number("snr_db", cfg.snr_db);
  cfg.window_ms = config.number("window_ms", cfg.window_ms);
  cfg.num_sources = static_cast<int>(config.integer("num_sources", cfg.num_sources));
  cfg.bandwidth_ratio = config.number("bandwidth_ratio", cfg.bandwidth_ratio);
  cfg.sensors = static_cast<std::size_t>(
      config.integer("sensors", static_cast<long>(cfg.sensors)));
  cfg.array_radius_m = config.number("array_radius_m", cfg.array_radius_m);
  cfg.factor = static_cast<int>(config.integer("factor", cfg.factor));
  if (config.has("s_sinc")) cfg.s_sinc = static_cast<int>(config.integer("s_sinc", 1));
  if (config.has("s_ws")) cfg.s_ws = static_cast<int>(config.integer("s_ws", 9));
  cfg.thiran_order = static_cast<int>(config.integer("thiran_order", cfg.thiran_order));
  cfg.seed = static_cast<std::uint64_t>(config.integer("seed", static_cast<long>(cfg.seed)));
  if (const auto shape = config.get("window_shape")) {
    const auto parsed = tde::parse_window_shape(*shape);
    if (!parsed) config_error("key 'window_shape': unknown shape '" + *shape + "'");
    cfg.window_shape = *parsed;
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  return cfg;
}

scenario::SweepSpec sweep_spec(const RunConfig& config) {
  scenario::SweepSpec spec;
  spec.base = scenario_config(config);
  const auto name = config.get("sweep_parameter");
  if (!name) config_error("sweep needs 'sweep_parameter'");
  const auto parameter = scenario::parse_sweep_parameter(*name);
  if (!parameter) config_error("key 'sweep_parameter': unknown parameter '" + *name + "'");
  spec.parameter = *parameter;
  for (const auto& v : config.list("sweep_values")) {
    spec.grid.push_back(to_double("sweep_values", v));
  }
  spec.methods = methods(config);
  try {
    spec.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  return spec;
}

IngestPlan ingest_plan(const RunConfig& config) {
  IngestPlan plan;
  const auto audio = config.list("audio");
  const auto geometry = config.list("geometry");
  if (audio.empty()) config_error("ingest needs 'audio'");
  if (audio.size() != geometry.size()) {
    config_error("'audio' and 'geometry' must list the same number of files");
  }
  for (std::size_t i = 0; i < audio.size(); ++i) {
    for (const auto& path : {audio[i], geometry[i]}) {
      if (!std::filesystem::exists(path)) config_error("missing file " + path);
    }
    plan.measurements.push_back({audio[i], geometry[i]});
  }
  plan.options.window_ms = config.number("window_ms", plan.options.window_ms);
  plan.options.events =
      static_cast<std::size_t>(config.integer("events", static_cast<long>(plan.options.events)));
  plan.options.speed_of_sound = config.number("speed_of_sound", plan.options.speed_of_sound);
  if (const auto shape = config.get("window_shape")) {
    const auto parsed = tde::parse_window_shape(*shape);
    if (!parsed) config_error("key 'window_shape': unknown shape '" + *shape + "'");
    plan.options.window_shape = *parsed;
  }
  auto& ev = plan.evaluation;
  ev.target_rate_hz = config.number("target_rate_hz", ev.target_rate_hz);
  ev.factor = static_cast<int>(config.integer("factor", ev.factor));
  ev.s_sinc = static_cast<int>(config.integer("s_sinc", ev.s_sinc));
  ev.s_ws = static_cast<int>(config.integer("s_ws", ev.s_ws));
  ev.methods = methods(config);
  plan.seed = static_cast<std::uint64_t>(config.integer("seed", 1));
  if (plan.options.events < 1) config_error("key 'events' must be >= 1");
  if (!(plan.options.window_ms > 0.0)) config_error("key 'window_ms' must be positive");
  if (!(ev.target_rate_hz > 0.0)) config_error("key 'target_rate_hz' must be positive");
  if (ev.factor < 1 || ev.s_sinc < 1 || ev.s_ws < 1) {
    config_error("factor, s_sinc and s_ws must be >= 1");
  }
  return plan;
}

}  // namespace subtde::cli
