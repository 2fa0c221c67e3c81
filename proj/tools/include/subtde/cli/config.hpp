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

#ifndef SUBTDE_CLI_CONFIG_HPP_
#define SUBTDE_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subtde/ingest.hpp"
#include "subtde/interp.hpp"
#include "subtde/scenario.hpp"

namespace subtde::cli {

/// Plain-text run configuration: one `key = value` per line, `#` starts a
/// comment. Only keys from known_keys() are accepted.
class RunConfig {
 public:
  static RunConfig parse(std::string_view text, std::string_view origin = "config");
  static RunConfig load(const std::filesystem::path& path);

  /// Throws Error(kConfigError) naming the key when it is unknown.
  void set(std::string_view key, std::string_view value);
  /// Accepts "key=value".
  void set_assignment(std::string_view assignment);

  bool has(std::string_view key) const;
  std::optional<std::string> get(std::string_view key) const;
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return entries_;
  }

  double number(std::string_view key, double fallback) const;
  long integer(std::string_view key, long fallback) const;
  std::string text(std::string_view key, std::string_view fallback) const;
  std::vector<std::string> list(std::string_view key) const;

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

const std::vector<std::string_view>& known_keys();

/// FNV-1a over the sorted explicit entries, prefixed by the command name.
std::uint64_t config_hash(std::string_view command, const RunConfig& config);

std::vector<interp::Method> methods(const RunConfig& config);
scenario::ScenarioConfig scenario_config(const RunConfig& config);
scenario::SweepSpec sweep_spec(const RunConfig& config);

struct MeasurementFiles {
  std::filesystem::path audio;
  std::filesystem::path geometry;
};

struct IngestPlan {
  std::vector<MeasurementFiles> measurements;
  ingest::IngestOptions options;
  ingest::EvaluationOptions evaluation;
  std::uint64_t seed = 1;
};

/// Checks that every listed file exists.
IngestPlan ingest_plan(const RunConfig& config);

}  // namespace subtde::cli

#endif  // SUBTDE_CLI_CONFIG_HPP_
