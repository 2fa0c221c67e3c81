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

#ifndef SUBTDE_INGEST_HPP_
#define SUBTDE_INGEST_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subtde/interp.hpp"
#include "subtde/locate.hpp"
#include "subtde/signal.hpp"
#include "subtde/tde.hpp"

// Measured multichannel RIRs: matched filtering from the direct path, event
// picking, full-rate reference estimates and decimated evaluation.
namespace subtde::ingest {

inline constexpr std::string_view kGroundTruthCaveat =
    "reference estimates are sample-quantized at the full rate without "
    "interpolation; errors below one full-rate sample are not meaningful";

struct MeasurementSet {
  std::vector<SampledSignal> rirs;
  locate::ArrayGeometry geometry;
  std::string source_label;
  double rate_hz = 0.0;
};

/// Sidecar JSON: {"sensors": [[x, y, z], ...], "source_label": "...",
/// "rate_hz": 48000}. Coordinates in meters; 2-element entries are accepted.
/// Throws kFormatError for bad audio / JSON and kGeometryMismatch when the
/// channel count differs from the number of sensors (or the nominal rate
/// differs from the file rate).
MeasurementSet load_measurement(const std::filesystem::path& audio_path,
                                const std::filesystem::path& geometry_path);

struct MatchedFilterKernel {
  SampledSignal kernel;      // unit energy
  long origin = 0;           // index of the direct-path peak inside kernel
  std::size_t direct_index = 0;  // direct-path peak in the RIR
};

/// Kernel = `direct_window_samples` around the global |max| of the RIR,
/// energy-normalized. Throws kNoPeak for an all-zero RIR.
MatchedFilterKernel estimate_matched_filter(const SampledSignal& rir,
                                            std::size_t direct_window_samples);

/// Matched-filters `rir` with `k`, aligning output peaks with event peaks.
SampledSignal compensate(const SampledSignal& rir, const MatchedFilterKernel& k);

using PeakList = std::vector<std::size_t>;

/// Greedy selection of the `count` largest local maxima of |signal| at least
/// `min_separation` samples apart, returned in time order. Throws
/// kInsufficientPeaks when fewer qualify.
PeakList pick_peaks(const SampledSignal& signal, std::size_t count,
                    std::size_t min_separation);

/// Anti-alias low-pass (cutoff 0.45 of the output rate, delay compensated)
/// and keep every factor-th sample. Throws kInvalidFactor for factor < 1.
SampledSignal downsample(const SampledSignal& signal, int factor);

struct IngestOptions {
  double window_ms = 2.0;
  std::size_t events = 4;
  double speed_of_sound = locate::kSpeedOfSound;
  tde::WindowShape window_shape = tde::WindowShape::kRectangular;
};

struct EventReference {
  long center = 0;                 // full-rate window position v
  std::vector<long> channel_peaks;  // per-channel picked peak indices
  std::vector<double> toas;        // seconds, per sensor
  std::vector<double> tdoas;       // seconds, sensor_pairs() order
  std::optional<locate::Vector> position;
};

struct GroundTruth {
  std::vector<SampledSignal> compensated;
  std::size_t window_samples = 0;
  std::vector<EventReference> events;  // time order
};

/// Matched filter -> pick events -> window -> no-interpolation estimates and
/// localizations at the full rate.
GroundTruth ground_truth_pipeline(const MeasurementSet& set,
                                  const IngestOptions& options = {});

struct EvaluationOptions {
  double target_rate_hz = 8000.0;
  int factor = 500;
  int s_sinc = 3;
  int s_ws = 13;
  std::vector<interp::Method> methods{std::begin(interp::kAllMethods),
                                      std::end(interp::kAllMethods)};

  interp::InterpConfig config_for(interp::Method method) const;
};

struct EventErrors {
  std::size_t event = 0;
  interp::Method method = interp::Method::kNone;
  std::vector<double> tdoa_errors;  // |tau_hat - tau_ref| per pair, seconds
  std::optional<double> position_error_m;
  bool failed = false;
  std::string failure;
};

/// Decimates the compensated RIRs to the target rate, windows each reference
/// event, estimates with every method and compares with the reference.
std::vector<EventErrors> evaluate_measurement(
    const GroundTruth& truth, const locate::ArrayGeometry& geometry,
    const IngestOptions& options, const EvaluationOptions& evaluation);

}  // namespace subtde::ingest

#endif  // SUBTDE_INGEST_HPP_
