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

#ifndef SUBTDE_TDE_HPP_
#define SUBTDE_TDE_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include "subtde/interp.hpp"
#include "subtde/signal.hpp"

// Windowing, correlation and interpolated TOA / TDOA estimation.
namespace subtde::tde {

/// Cross-correlations of frames up to this length are computed directly in
/// the time domain; longer frames go through a zero-padded FFT.
inline constexpr std::size_t kDirectCorrelationMaxLength = 256;

enum class WindowShape { kRectangular, kHann };

std::string_view to_string(WindowShape shape);
std::optional<WindowShape> parse_window_shape(std::string_view name);

/// h[k] = sum_i measured[k - origin + i] * kernel[i] for k in [0, size).
/// With origin = 0 an event shaped like the kernel starting at sample k peaks
/// at k; passing the kernel's own peak index aligns output peaks with the
/// event peaks instead.
SampledSignal matched_filter(const SampledSignal& measured,
                             const SampledSignal& kernel, long origin = 0);

/// One analysis window h[v - L/2 + k] * w[k], k in [0, L).
struct Frame {
  std::vector<double> samples;
  long center = 0;  // v
  double rate_hz = 1.0;
  bool zero_padded = false;

  std::size_t length() const noexcept { return samples.size(); }
  /// Absolute sample index of frame sample 0.
  long origin() const noexcept {
    return center - static_cast<long>(samples.size() / 2);
  }
};

Frame sliding_window(const SampledSignal& h, long center, std::size_t length,
                     WindowShape shape = WindowShape::kRectangular);

/// Frames of every sensor at one window position.
struct FrameSet {
  long window_index = 0;
  std::size_t length = 0;
  WindowShape shape = WindowShape::kRectangular;
  std::vector<Frame> frames;
};

FrameSet make_frame_set(std::span<const SampledSignal> signals, long center,
                        std::size_t length,
                        WindowShape shape = WindowShape::kRectangular);

/// Full linear cross-correlation r[l] = sum_i a[i] b[i + l] for
/// l in [-(L-1), L-1], stored at index l + L - 1. A positive lag means b is
/// later than a.
std::vector<double> xcorr(std::span<const double> a, std::span<const double> b);
std::vector<double> xcorr_direct(std::span<const double> a,
                                 std::span<const double> b);
std::vector<double> xcorr_fft(std::span<const double> a,
                              std::span<const double> b);

interp::PeakNeighborhood xcorr_neighborhood(std::span<const double> a,
                                            std::span<const double> b,
                                            double rate_hz);

enum class EstimateKind { kToa, kTdoa };

struct TdeEstimate {
  EstimateKind kind = EstimateKind::kToa;
  std::size_t sensor = 0;        // TOA sensor, or reference sensor m for TDOA
  std::size_t other_sensor = 0;  // sensor n for TDOA
  double seconds = 0.0;
  interp::Method method = interp::Method::kNone;
  interp::Refinement refinement;
};

/// TOA of the strongest event in the frame, on the absolute time axis.
TdeEstimate estimate_toa(const Frame& frame, const interp::InterpConfig& cfg,
                         std::size_t sensor = 0);

/// tau_{m,n} = t_n - t_m from the cross-correlation of two frames.
TdeEstimate estimate_tdoa(const Frame& frame_m, const Frame& frame_n,
                          const interp::InterpConfig& cfg, std::size_t m = 0,
                          std::size_t n = 1);

}  // namespace subtde::tde

#endif  // SUBTDE_TDE_HPP_
