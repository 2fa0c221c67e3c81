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

#ifndef SUBTDE_SIGNALS_HPP_
#define SUBTDE_SIGNALS_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "subtde/signal.hpp"

// Synthesis of fractionally delayed, band-limited reflection pulses.
namespace subtde::signals {

/// Smallest order that keeps the measured delay of a 0.4 f_s probe within
/// 0.01 samples for every fractional part.
inline constexpr int kDefaultThiranOrder = 24;

/// Fractional parts with magnitude below this are realized as integer shifts.
inline constexpr double kDegenerateTolerance = 1e-9;

/// Samples appended per filter order so the all-pass tail is not truncated.
inline constexpr std::size_t kTailAllowancePerOrder = 4;

/// Band-limiting FIR: Kaiser windowed sinc of this order (taps = order + 1).
inline constexpr std::size_t kBandlimitOrder = 128;
/// Kaiser beta for ~70 dB stop-band attenuation.
inline constexpr double kKaiserBeta = 6.755;

/// Pass this as `snr_db` to skip noise entirely.
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

struct DelaySplit {
  long integer;     // floor(delay + 1/2)
  double fraction;  // in [-0.5, 0.5)
};

DelaySplit split_delay(double total_delay_samples);

struct ThiranSpec {
  int order = kDefaultThiranOrder;
  double total_delay_samples = 0.0;
};

struct PulseSpec {
  double toa_seconds = 0.0;
  double amplitude = 1.0;
  double bandlimit_hz = 0.0;  // equal to rate/2 for critically sampled pulses
};

/// Denominator coefficients a_0..a_P of an order-P Thiran all-pass whose DC
/// group delay is P + frac_delay samples. Throws kDegenerateDelay when a
/// product denominator vanishes (frac_delay ~ 0); use an integer shift then.
std::vector<double> thiran_coeffs(int order, double frac_delay);

/// Delays `signal` by `delay.total_delay_samples`. The integer part is a
/// shift, the remaining fraction in [-0.5, 0.5) is realized by a Thiran
/// filter. Output length is size + ceil(delay) + kTailAllowancePerOrder*order.
SampledSignal apply_fractional_delay(const SampledSignal& signal,
                                     const ThiranSpec& delay);

/// Linear-phase FIR coefficients of a Kaiser windowed-sinc low-pass with
/// cutoff `cutoff_cycles` (cycles/sample, in (0, 0.5)). `order` must be even.
std::vector<double> lowpass_kernel(double cutoff_cycles, std::size_t order,
                                   double kaiser_beta = kKaiserBeta);

/// "Same"-mode FIR filtering with the order/2 group delay removed.
std::vector<double> filter_zero_phase(std::span<const double> input,
                                      std::span<const double> kernel);

/// Low-pass to `cutoff_hz` with timing preserved. cutoff_hz == rate/2 is the
/// identity. Throws kInvalidCutoff outside (0, rate/2].
SampledSignal bandlimit(const SampledSignal& signal, double cutoff_hz);

struct NoiseOptions {
  /// When set, the reference signal power is the mean power over a window of
  /// this many samples centered on the largest-magnitude sample. Otherwise the
  /// whole record is used.
  std::optional<std::size_t> reference_window;
};

/// Adds white Gaussian noise at `snr_db` relative to the reference power.
/// Deterministic for a given seed. Throws kZeroSignal on an all-zero input.
SampledSignal add_noise(const SampledSignal& signal, double snr_db,
                        std::uint64_t seed, const NoiseOptions& options = {});

/// Reference power used by add_noise.
double reference_power(std::span<const double> samples,
                       const NoiseOptions& options);

/// A pulse rendered into a short buffer; sample i belongs at index start + i
/// of the full record.
struct LocalPulse {
  long start = 0;
  std::vector<double> samples;
};

/// Renders a single reflection: unit impulse delayed by toa*rate samples,
/// band-limited to spec.bandlimit_hz and scaled by the amplitude.
LocalPulse render_pulse(const PulseSpec& spec, double rate_hz,
                        int thiran_order = kDefaultThiranOrder);

/// Adds `pulse` into `record`, clipping at both ends.
void accumulate(std::span<double> record, const LocalPulse& pulse);

/// Full-length record holding one reflection. Throws kPulseOutOfRange when
/// the delay plus filter tail does not fit in `length_samples`.
SampledSignal synth_reflection(const PulseSpec& spec, double rate_hz,
                               std::size_t length_samples,
                               int thiran_order = kDefaultThiranOrder);

}  // namespace subtde::signals

#endif  // SUBTDE_SIGNALS_HPP_
