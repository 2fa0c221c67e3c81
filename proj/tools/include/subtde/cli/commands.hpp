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

#ifndef SUBTDE_CLI_COMMANDS_HPP_
#define SUBTDE_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string_view>

#include "subtde/cli/config.hpp"

namespace subtde::cli {

enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitConfig = 2 };

// Column layouts. Changing any of them requires bumping kSchemaVersion.
inline constexpr std::string_view kSimulateColumns =
    "source,method,toa_error_s,tdoa_error_s,position_error,failed";
inline constexpr std::string_view kSweepStatColumns =
    "method,toa_mean_s,toa_median_s,toa_std_s,tdoa_mean_s,tdoa_median_s,"
    "tdoa_std_s,position_mean,position_median,position_std,sources,failures";
inline constexpr std::string_view kIngestColumns =
    "source,event,method,tdoa_error_s,position_error_m,failed";

void write_simulate(const RunConfig& config, std::ostream& out, unsigned threads);
void write_sweep(const RunConfig& config, std::ostream& out, unsigned threads);
void write_ingest(const RunConfig& config, std::ostream& out);
/// JSON summary per method of a simulate or ingest CSV named by `input`.
void write_report(const RunConfig& config, std::ostream& out);

/// Runs one subcommand, writing to the configured `output` (stdout when
/// unset). Errors are reported on `err`; the return value is the exit code.
int run_command(std::string_view command, const RunConfig& config,
                std::ostream& out, std::ostream& err);

}  // namespace subtde::cli

#endif  // SUBTDE_CLI_COMMANDS_HPP_
