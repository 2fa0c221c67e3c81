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

#include "subtde/tde.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include <unsupported/Eigen/FFT>

#include "subtde/errors.hpp"

namespace subtde::tde {

std::string_view to_string(WindowShape shape) {
  switch (shape) {
    case WindowShape::kRectangular: return "rectangular";
    case WindowShape::kHann: return "hann";
  }
  return "unknown";
}

std::optional<WindowShape> parse_window_shape(std::string_view name) {
  if (name == "rectangular" || name == "rect") return WindowShape::kRectangular;
  if (name == "hann") return WindowShape::kHann;
  return std::nullopt;
}

SampledSignal matched_filter(const SampledSignal& measured,
                             const SampledSignal& kernel, long origin) {
  if (kernel.empty()) {
    throw Error(ErrorCode::kEmptyKernel, "matched filter kernel is empty");
  }
  if (kernel.size() > measured.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel longer than the measured signal");
  }
  const auto x = measured.samples();
  const auto m = kernel.samples();
  const long n_x = static_cast<long>(x.size());
  const long n_m = static_cast<long>(m.size());
  std::vector<double> h(x.size(), 0.0);
  for (long k = 0; k < n_x; ++k) {
    const long base = k - origin;
    const long i_lo = std::max(0L, -base);
    const long i_hi = std::min(n_m - 1, n_x - 1 - base);
    double acc = 0.0;
    for (long i = i_lo; i <= i_hi; ++i) {
      acc += x[static_cast<std::size_t>(base + i)] * m[static_cast<std::size_t>(i)];
    }
    h[static_cast<std::size_t>(k)] = acc;
  }
  return SampledSignal(std::move(h), measured.rate_hz());
}

Frame sliding_window(const SampledSignal& h, long center, std::size_t length,
                     WindowShape shape) {
  if (length == 0) {
    throw Error(ErrorCode::kInvalidArgument, "window length must be > 0");
  }
  Frame frame;
  frame.center = center;
  frame.rate_hz = h.rate_hz();
  frame.samples.assign(length, 0.0);
  const long start = frame.origin();
  const long size = static_cast<long>(h.size());
  for (std::size_t k = 0; k < length; ++k) {
    const long idx = start + static_cast<long>(k);
    if (idx < 0 || idx >= size) {
      frame.zero_padded = true;
      continue;
    }
    double w = 1.0;
    if (shape == WindowShape::kHann) {
      w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(length));
    }
    frame.samples[k] = h[static_cast<std::size_t>(idx)] * w;
  }
  return frame;
}

FrameSet make_frame_set(std::span<const SampledSignal> signals, long center,
                        std::size_t length, WindowShape shape) {
  FrameSet set;
  set.window_index = center;
  set.length = length;
  set.shape = shape;
  set.frames.reserve(signals.size());
  for (const auto& s : signals) {
    if (!set.frames.empty() && s.rate_hz() != set.frames.front().rate_hz) {
      throw Error(ErrorCode::kInvalidArgument,
                  "all signals in a frame set must share one rate");
    }
    set.frames.push_back(sliding_window(s, center, length, shape));
  }
  return set;
}

namespace {

void check_equal_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cross-correlation needs two non-empty frames of equal length");
  }
}

}  // namespace

std::vector<double> xcorr_direct(std::span<const double> a,
                                 std::span<const double> b) {
  check_equal_lengths(a, b);
  const long n = static_cast<long>(a.size());
  std::vector<double> r(2 * a.size() - 1, 0.0);
  for (long lag = -(n - 1); lag <= n - 1; ++lag) {
    const long i_lo = std::max(0L, -lag);
    const long i_hi = std::min(n - 1, n - 1 - lag);
    double acc = 0.0;
    for (long i = i_lo; i <= i_hi; ++i) {
      acc += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i + lag)];
    }
    r[static_cast<std::size_t>(lag + n - 1)] = acc;
  }
  return r;
}

std::vector<double> xcorr_fft(std::span<const double> a,
                              std::span<const double> b) {
  check_equal_lengths(a, b);
  const std::size_t n = a.size();
  std::size_t nfft = 1;
  while (nfft < 2 * n - 1) nfft <<= 1;
  std::vector<double> pa(nfft, 0.0), pb(nfft, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] = std::conj(fa[k]) * fb[k];
  std::vector<double> circular;
  fft.inv(circular, fa);
  std::vector<double> r(2 * n - 1);
  const long ln = static_cast<long>(n);
  for (long lag = -(ln - 1); lag <= ln - 1; ++lag) {
    const auto idx = static_cast<std::size_t>((lag + static_cast<long>(nfft)) %
                                              static_cast<long>(nfft));
    r[static_cast<std::size_t>(lag + ln - 1)] = circular[idx];
  }
  return r;
}

std::vector<double> xcorr(std::span<const double> a, std::span<const double> b) {
  return a.size() <= kDirectCorrelationMaxLength ? xcorr_direct(a, b)
                                                 : xcorr_fft(a, b);
}

interp::PeakNeighborhood xcorr_neighborhood(std::span<const double> a,
                                            std::span<const double> b,
                                            double rate_hz) {
  return interp::PeakNeighborhood::from_values(xcorr(a, b), rate_hz);
}

TdeEstimate estimate_toa(const Frame& frame, const interp::InterpConfig& cfg,
                         std::size_t sensor) {
  if (std::all_of(frame.samples.begin(), frame.samples.end(),
                  [](double v) { return v == 0.0; })) {
    throw Error(ErrorCode::kInvalidArgument, "TOA frame is all zero");
  }
  const auto n = interp::PeakNeighborhood::from_values(frame.samples, frame.rate_hz);
  TdeEstimate est;
  est.kind = EstimateKind::kToa;
  est.sensor = sensor;
  est.other_sensor = sensor;
  est.method = cfg.method;
  est.refinement = interp::refine(n, cfg);
  const double index = static_cast<double>(frame.origin()) +
                       static_cast<double>(n.peak_index) + est.refinement.offset;
  est.seconds = index / frame.rate_hz;
  return est;
}

TdeEstimate estimate_tdoa(const Frame& frame_m, const Frame& frame_n,
                          const interp::InterpConfig& cfg, std::size_t m,
                          std::size_t n) {
  if (frame_m.rate_hz != frame_n.rate_hz) {
    throw Error(ErrorCode::kInvalidArgument, "frames have different rates");
  }
  const auto nb = xcorr_neighborhood(frame_m.samples, frame_n.samples,
                                     frame_m.rate_hz);
  if (nb.peak_value() == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "cross-correlation is all zero");
  }
  TdeEstimate est;
  est.kind = EstimateKind::kTdoa;
  est.sensor = m;
  est.other_sensor = n;
  est.method = cfg.method;
  est.refinement = interp::refine(nb, cfg);
  const double lag = static_cast<double>(nb.peak_index) + est.refinement.offset -
                     static_cast<double>(frame_m.length() - 1);
  est.seconds = lag / frame_m.rate_hz;
  return est;
}

}  // namespace subtde::tde
