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

#include "subtde/signals.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "subtde/errors.hpp"

namespace subtde::signals {
namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Direct-form all-pass: numerator is the reversed denominator.
std::vector<double> run_allpass(std::span<const double> a,
                                 std::span<const double> x) {
  const std::size_t order = a.size() - 1;
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= order && i <= n; ++i) {
      acc += a[order - i] * x[n - i];
    }
    for (std::size_t i = 1; i <= order && i <= n; ++i) {
      acc -= a[i] * y[n - i];
    }
    y[n] = acc;
  }
  return y;
}

void check_order(int order) {
  if (order < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "Thiran order must be >= 1, got " + std::to_string(order));
  }
}

bool is_critical(double cutoff_hz, double rate_hz) {
  return std::abs(cutoff_hz - 0.5 * rate_hz) <= 1e-12 * rate_hz;
}

}  // namespace

DelaySplit split_delay(double total_delay_samples) {
  const double integer = std::floor(total_delay_samples + 0.5);
  return {static_cast<long>(integer), total_delay_samples - integer};
}

std::vector<double> thiran_coeffs(int order, double frac_delay) {
  check_order(order);
  if (!std::isfinite(frac_delay)) {
    throw Error(ErrorCode::kInvalidArgument, "fractional delay must be finite");
  }
  // Standard Thiran design for total delay D = order + frac_delay:
  // a_p = (-1)^p C(P, p) prod_k (D - P + k) / (D - P + p + k).
  std::vector<double> a(static_cast<std::size_t>(order) + 1, 0.0);
  for (int p = 0; p <= order; ++p) {
    double prod = 1.0;
    for (int k = 0; k <= order; ++k) {
      const double den = frac_delay + p + k;
      if (std::abs(den) < kDegenerateTolerance) {
        throw Error(ErrorCode::kDegenerateDelay,
                    "fractional delay " + std::to_string(frac_delay) +
                        " makes the Thiran design singular; use an integer "
                        "shift");
      }
      prod *= (frac_delay + k) / den;
    }
    a[static_cast<std::size_t>(p)] =
        ((p % 2 == 0) ? 1.0 : -1.0) * binomial(order, p) * prod;
  }
  return a;
}

SampledSignal apply_fractional_delay(const SampledSignal& signal,
                                     const ThiranSpec& delay) {
  check_order(delay.order);
  if (signal.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot delay an empty signal");
  }
  const double total = delay.total_delay_samples;
  if (!(total >= 0.0) || !std::isfinite(total)) {
    throw Error(ErrorCode::kInvalidArgument,
                "delay must be finite and non-negative");
  }
  const auto [integer, fraction] = split_delay(total);
  const auto order = static_cast<std::size_t>(delay.order);
  const std::size_t out_len = signal.size() +
                              static_cast<std::size_t>(std::ceil(total)) +
                              kTailAllowancePerOrder * order;
  const auto x = signal.samples();

  if (std::abs(fraction) < kDegenerateTolerance) {
    std::vector<double> y(out_len, 0.0);
    std::copy(x.begin(), x.end(), y.begin() + integer);
    return SampledSignal(std::move(y), signal.rate_hz());
  }

  const auto a = thiran_coeffs(delay.order, fraction);
  const auto shift = static_cast<long>(integer) - static_cast<long>(order);
  if (shift >= 0) {
    // Integer delay of D_i - P, then the all-pass adds P + D_f.
    std::vector<double> in(out_len, 0.0);
    std::copy(x.begin(), x.end(), in.begin() + shift);
    return SampledSignal(run_allpass(a, in), signal.rate_hz());
  }
  // D_i < P: filter first, then drop the P - D_i leading samples.
  const auto drop = static_cast<std::size_t>(-shift);
  std::vector<double> in(out_len + drop, 0.0);
  std::copy(x.begin(), x.end(), in.begin());
  auto y = run_allpass(a, in);
  y.erase(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(drop));
  return SampledSignal(std::move(y), signal.rate_hz());
}

std::vector<double> lowpass_kernel(double cutoff_cycles, std::size_t order,
                                   double kaiser_beta) {
  if (order == 0 || order % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "FIR order must be even and > 0");
  }
  if (!(cutoff_cycles > 0.0 && cutoff_cycles < 0.5)) {
    throw Error(ErrorCode::kInvalidCutoff,
                "normalized cutoff must lie in (0, 0.5)");
  }
  const double half = static_cast<double>(order) / 2.0;
  const double norm = std::cyl_bessel_i(0.0, kaiser_beta);
  std::vector<double> h(order + 1);
  double sum = 0.0;
  for (std::size_t n = 0; n <= order; ++n) {
    const double t = static_cast<double>(n) - half;
    const double r = t / half;
    const double w =
        std::cyl_bessel_i(0.0, kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) /
        norm;
    h[n] = 2.0 * cutoff_cycles * sinc(2.0 * cutoff_cycles * t) * w;
    sum += h[n];
  }
  for (double& v : h) v /= sum;
  return h;
}

std::vector<double> filter_zero_phase(std::span<const double> input,
                                      std::span<const double> kernel) {
  if (kernel.empty() || kernel.size() % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "kernel length must be odd");
  }
  const long n_in = static_cast<long>(input.size());
  const long n_k = static_cast<long>(kernel.size());
  const long half = (n_k - 1) / 2;
  std::vector<double> y(input.size(), 0.0);
  for (long n = 0; n < n_in; ++n) {
    double acc = 0.0;
    const long k_lo = std::max(0L, n + half - (n_in - 1));
    const long k_hi = std::min(n_k - 1, n + half);
    for (long k = k_lo; k <= k_hi; ++k) {
      acc += kernel[static_cast<std::size_t>(k)] *
             input[static_cast<std::size_t>(n + half - k)];
    }
    y[static_cast<std::size_t>(n)] = acc;
  }
  return y;
}

SampledSignal bandlimit(const SampledSignal& signal, double cutoff_hz) {
  const double rate = signal.rate_hz();
  if (!(cutoff_hz > 0.0) || cutoff_hz > 0.5 * rate * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kInvalidCutoff,
                "cutoff " + std::to_string(cutoff_hz) +
                    " Hz outside (0, rate/2]");
  }
  if (is_critical(cutoff_hz, rate)) return signal;
  const auto kernel = lowpass_kernel(cutoff_hz / rate, kBandlimitOrder);
  return SampledSignal(filter_zero_phase(signal.samples(), kernel), rate);
}

double reference_power(std::span<const double> samples,
                       const NoiseOptions& options) {
  if (samples.empty()) return 0.0;
  std::size_t lo = 0;
  std::size_t hi = samples.size();
  double denom = static_cast<double>(samples.size());
  if (options.reference_window && *options.reference_window > 0) {
    const auto w = static_cast<long>(*options.reference_window);
    const long center = static_cast<long>(argmax_abs(samples));
    const long start = center - w / 2;
    lo = static_cast<std::size_t>(std::max(0L, start));
    hi = static_cast<std::size_t>(
        std::min<long>(static_cast<long>(samples.size()), start + w));
    denom = static_cast<double>(hi - lo);
  }
  double acc = 0.0;
  for (std::size_t i = lo; i < hi; ++i) acc += samples[i] * samples[i];
  return acc / denom;
}

SampledSignal add_noise(const SampledSignal& signal, double snr_db,
                        std::uint64_t seed, const NoiseOptions& options) {
  if (signal.energy() == 0.0) {
    throw Error(ErrorCode::kZeroSignal, "cannot set an SNR for a zero signal");
  }
  if (std::isinf(snr_db) && snr_db > 0) return signal;
  if (std::isnan(snr_db)) {
    throw Error(ErrorCode::kInvalidArgument, "SNR must not be NaN");
  }
  const double p_signal = reference_power(signal.samples(), options);
  const double sigma = std::sqrt(p_signal / std::pow(10.0, snr_db / 10.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> y(signal.samples().begin(), signal.samples().end());
  for (double& v : y) v += noise(rng);
  return SampledSignal(std::move(y), signal.rate_hz());
}

LocalPulse render_pulse(const PulseSpec& spec, double rate_hz,
                        int thiran_order) {
  check_order(thiran_order);
  if (!(rate_hz > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rate must be positive");
  }
  if (!(spec.toa_seconds >= 0.0) || !std::isfinite(spec.toa_seconds)) {
    throw Error(ErrorCode::kPulseOutOfRange, "TOA must be finite and >= 0");
  }
  if (!(spec.bandlimit_hz > 0.0) ||
      spec.bandlimit_hz > 0.5 * rate_hz * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kInvalidCutoff, "pulse bandwidth outside (0, rate/2]");
  }
  const bool critical = is_critical(spec.bandlimit_hz, rate_hz);
  const long fir_half = critical ? 0 : static_cast<long>(kBandlimitOrder / 2);
  const double delay = spec.toa_seconds * rate_hz;
  const auto split = split_delay(delay);

  // Render with the impulse at local index 0 and a local delay that keeps
  // room for the Thiran pre-ringing and the FIR support; the record offset
  // `start` restores the absolute position.
  const long start = split.integer - thiran_order - fir_half;
  const double local_delay = delay - static_cast<double>(start);
  auto delayed = apply_fractional_delay(
      SampledSignal::impulse(1, 0, rate_hz), {thiran_order, local_delay});
  std::vector<double> samples(delayed.samples().begin(),
                              delayed.samples().end());
  if (!critical) {
    samples.resize(samples.size() + static_cast<std::size_t>(fir_half), 0.0);
    const auto kernel =
        lowpass_kernel(spec.bandlimit_hz / rate_hz, kBandlimitOrder);
    samples = filter_zero_phase(samples, kernel);
  }
  for (double& v : samples) v *= spec.amplitude;
  return {start, std::move(samples)};
}

void accumulate(std::span<double> record, const LocalPulse& pulse) {
  const long n = static_cast<long>(record.size());
  for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
    const long idx = pulse.start + static_cast<long>(i);
    if (idx >= 0 && idx < n) record[static_cast<std::size_t>(idx)] += pulse.samples[i];
  }
}

SampledSignal synth_reflection(const PulseSpec& spec, double rate_hz,
                               std::size_t length_samples, int thiran_order) {
  check_order(thiran_order);
  const bool critical = is_critical(spec.bandlimit_hz, rate_hz);
  const double delay = spec.toa_seconds * rate_hz;
  const double needed = std::ceil(delay) +
                        static_cast<double>(kTailAllowancePerOrder) * thiran_order +
                        (critical ? 0.0 : kBandlimitOrder / 2.0);
  if (!(delay >= 0.0) || needed >= static_cast<double>(length_samples)) {
    throw Error(ErrorCode::kPulseOutOfRange,
                "pulse at " + std::to_string(delay) + " samples plus filter " +
                    "tail does not fit in " + std::to_string(length_samples) +
                    " samples");
  }
  const auto pulse = render_pulse(spec, rate_hz, thiran_order);
  std::vector<double> record(length_samples, 0.0);
  accumulate(record, pulse);
  return SampledSignal(std::move(record), rate_hz);
}

}  // namespace subtde::signals
