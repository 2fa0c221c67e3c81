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

#ifndef SUBTDE_SCENARIO_HPP_
#define SUBTDE_SCENARIO_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subtde/interp.hpp"
#include "subtde/locate.hpp"
#include "subtde/signal.hpp"
#include "subtde/stats.hpp"
#include "subtde/tde.hpp"

// Simulation world: image sources around a circular array, synthesized
// sensor signals, per-trial error collection and parameter sweeps.
namespace subtde::scenario {

inline constexpr double kCriticalBandwidth = 0.5;  // B = f_s / 2
inline constexpr double kLimitedBandwidth = 0.4;   // B = 2 f_s / 5

struct ScenarioConfig {
  double rate_hz = 8000.0;
  double speed_of_sound = locate::kSpeedOfSound;
  double snr_db = 40.0;
  double window_ms = 4.0;
  int num_sources = 200;
  double bandwidth_ratio = kCriticalBandwidth;  // B / f_s, in (0, 0.5]
  std::size_t sensors = 6;
  double array_radius_m = 0.05;
  int factor = 200;
  std::optional<int> s_sinc;  // unset: per-condition default
  std::optional<int> s_ws;
  int thiran_order = 24;
  tde::WindowShape window_shape = tde::WindowShape::kRectangular;
  std::uint64_t seed = 1;

  /// L = round(window_ms * rate / 1000).
  std::size_t window_samples() const;
  bool critically_sampled() const;
  locate::ArrayGeometry geometry() const;

  /// Throws kInvalidArgument when a field is out of range or L does not
  /// exceed the minimum window length of the array.
  void validate() const;
};

/// Interpolation settings used for `method` in this scenario. Defaults for S:
/// sinc 1 (critically sampled), otherwise L for TDOA and L/2 for TOA; WS 9.
interp::InterpConfig method_config(const ScenarioConfig& cfg,
                                   interp::Method method,
                                   tde::EstimateKind kind);

struct ImageSource {
  int index = 0;  // k, 1-based
  double angle_rad = 0.0;
  locate::Vector position;
  double center_toa = 0.0;  // k L / f_s
};

/// x_k = r_c + (cos t_k, sin t_k) k c L / f_s with t_k uniform in [0, 2 pi)
/// drawn from a per-source seed.
std::vector<ImageSource> place_image_sources(const ScenarioConfig& cfg);

/// One signal per sensor with a unit pulse for every source at the
/// spherical-wave TOA, band-limited and noisy as configured. The noise
/// reference power is taken over an L-sample window around a pulse.
std::vector<SampledSignal> synth_sensor_signals(
    const ScenarioConfig& cfg, const locate::ArrayGeometry& geometry,
    std::span<const ImageSource> sources);

/// Absolute errors of one method for one image source.
struct SourceErrors {
  int source = 0;
  interp::Method method = interp::Method::kNone;
  std::vector<double> toa_errors;   // seconds, one per sensor
  std::vector<double> tdoa_errors;  // seconds, one per sensor pair
  double position_error = 0.0;      // normalized, dimensionless
  bool failed = false;
  std::string failure;

  double mean_toa_error() const;
  double mean_tdoa_error() const;
};

struct TrialResult {
  std::vector<interp::Method> methods;
  /// Ordered by (source, method) following `methods`.
  std::vector<SourceErrors> records;

  /// Pools every sensor/pair/source error of `method`; failed sources are
  /// skipped.
  std::vector<double> toa_errors(interp::Method method) const;
  std::vector<double> tdoa_errors(interp::Method method) const;
  std::vector<double> position_errors(interp::Method method) const;
  /// Per-source mean |TDOA error|, for resampling statistics.
  std::vector<double> per_source_tdoa(interp::Method method) const;
  std::size_t failures(interp::Method method) const;
};

/// Windows every sensor at each source's arrival time at the array center,
/// estimates TOAs and pairwise TDOAs with each method, localizes, and records
/// errors against the true geometry. Per-source failures are recorded.
TrialResult run_trial(const ScenarioConfig& cfg,
                      std::span<const interp::Method> methods,
                      unsigned threads = 0);

enum class SweepParameter { kRateHz, kFactor, kSnrDb, kWindowMs, kHalfWidth };

std::string_view to_string(SweepParameter parameter);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

struct SweepSpec {
  ScenarioConfig base;
  SweepParameter parameter = SweepParameter::kRateHz;
  std::vector<double> grid;
  std::vector<interp::Method> methods;

  /// Non-empty grid, values inside the supported range of the parameter.
  void validate() const;
};

/// `base` with the swept parameter set to `value`. kHalfWidth sets S for
/// both sinc and WS.
ScenarioConfig apply_parameter(const ScenarioConfig& base,
                               SweepParameter parameter, double value);

struct ErrorRow {
  double value = 0.0;
  interp::Method method = interp::Method::kNone;
  Summary toa;
  Summary tdoa;
  Summary position;
  std::size_t sources = 0;
  std::size_t failures = 0;
};

struct ErrorTable {
  SweepParameter parameter = SweepParameter::kRateHz;
  std::vector<ErrorRow> rows;  // grid order, then method order
};

/// Aggregates a trial into one row per method.
std::vector<ErrorRow> summarize(const TrialResult& trial, double value);

/// One trial per grid value, seeded with mix_seed(base.seed, grid index).
ErrorTable run_sweep(const SweepSpec& spec, unsigned threads = 0);

}  // namespace subtde::scenario

#endif  // SUBTDE_SCENARIO_HPP_
