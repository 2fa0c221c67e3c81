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

// Reference computations used by the tests. Nothing here calls into the
// library's estimators, so results can be compared against it.
#ifndef SUBTDE_TESTS_ORACLES_HPP_
#define SUBTDE_TESTS_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

inline double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

/// Hann-windowed low-pass sinc probe with bandwidth `ratio` * f_s, centered
/// at `center`, supported on |t - center| < half_width.
struct Probe {
  double center = 64.0;
  double ratio = 0.4;
  double half_width = 48.0;

  double operator()(double t) const {
    const double x = t - center;
    if (std::abs(x) >= half_width) return 0.0;
    const double w = 0.5 * (1.0 + std::cos(std::numbers::pi * x / half_width));
    return 2.0 * ratio * sinc(2.0 * ratio * x) * w;
  }

  std::vector<double> samples(std::size_t length) const {
    std::vector<double> out(length);
    for (std::size_t n = 0; n < length; ++n) out[n] = (*this)(static_cast<double>(n));
    return out;
  }
};

/// Delay of `y` relative to `probe`: the shift tau maximizing
/// sum_n y[n] * probe(n - tau), searched on a 1/1000-sample grid and polished
/// with a three-point vertex on that grid.
inline double measure_delay(std::span<const double> y, const Probe& probe,
                            double max_delay) {
  auto corr = [&](double tau) {
    double acc = 0.0;
    const long lo = std::max(0L, static_cast<long>(std::floor(probe.center + tau - probe.half_width)));
    const long hi = std::min(static_cast<long>(y.size()) - 1,
                             static_cast<long>(std::ceil(probe.center + tau + probe.half_width)));
    for (long n = lo; n <= hi; ++n) acc += y[static_cast<std::size_t>(n)] * probe(n - tau);
    return acc;
  };
  double best_tau = 0.0;
  double best = -1e300;
  for (long d = 0; d <= static_cast<long>(std::ceil(max_delay)) + 1; ++d) {
    const double c = corr(static_cast<double>(d));
    if (c > best) {
      best = c;
      best_tau = static_cast<double>(d);
    }
  }
  const double coarse = best_tau;
  constexpr int kSteps = 1000;
  for (int k = -kSteps; k <= kSteps; ++k) {
    const double tau = coarse + static_cast<double>(k) / kSteps;
    const double c = corr(tau);
    if (c > best) {
      best = c;
      best_tau = tau;
    }
  }
  const double h = 1.0 / kSteps;
  const double fm = corr(best_tau - h), f0 = corr(best_tau), fp = corr(best_tau + h);
  const double denom = fm - 2.0 * f0 + fp;
  return denom < 0.0 ? best_tau + 0.5 * h * (fm - fp) / denom : best_tau;
}

/// Values of a(t - offset)^2 + b(t - offset) + c style parabola with vertex
/// at `vertex` sampled at t = -1, 0, 1.
inline std::vector<double> parabola_triple(double vertex, double curvature, double top) {
  std::vector<double> out;
  for (int t = -1; t <= 1; ++t) out.push_back(top - curvature * (t - vertex) * (t - vertex));
  return out;
}

inline std::vector<double> gaussian_triple(double vertex, double beta, double scale) {
  std::vector<double> out;
  for (int t = -1; t <= 1; ++t) out.push_back(scale * std::exp(-beta * (t - vertex) * (t - vertex)));
  return out;
}

/// Real sequence of odd length whose DFT is A_k * exp(-i w_k delta) with a
/// smooth magnitude A_k, rotated so that its peak sits at `peak_index`.
inline std::vector<double> linear_phase_pulse(std::size_t length, double delta,
                                              std::size_t peak_index) {
  const std::size_t n = length | 1U;
  const double spread = 0.3 * static_cast<double>(n);
  std::vector<double> g(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 1.0;  // k = 0 term
    for (std::size_t k = 1; k <= (n - 1) / 2; ++k) {
      const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      const double a = std::exp(-std::pow(static_cast<double>(k) / spread, 2));
      acc += 2.0 * a * std::cos(w * (static_cast<double>(t) - delta));
    }
    g[t] = acc / static_cast<double>(n);
  }
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) out[(t + peak_index) % n] = g[t];
  return out;
}

/// sum_{k=k0-S}^{k0+S} f[k] * sinc(d - (k - k0)), written out directly.
inline double ws_sum(std::span<const double> f, std::size_t k0, int s, double d) {
  double acc = 0.0;
  for (int j = -s; j <= s; ++j) {
    const long k = static_cast<long>(k0) + j;
    if (k < 0 || k >= static_cast<long>(f.size())) continue;
    acc += f[static_cast<std::size_t>(k)] * sinc(d - j);
  }
  return acc;
}

inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

/// |DFT|^2 of x at bin k, direct sum.
inline double power_at(std::span<const double> x, std::size_t k) {
  std::complex<double> acc = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * t) / n);
  }
  return std::norm(acc);
}

}  // namespace oracle

#endif  // SUBTDE_TESTS_ORACLES_HPP_
