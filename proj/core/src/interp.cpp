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

#include "subtde/interp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include <unsupported/Eigen/FFT>

#include "subtde/errors.hpp"
#include "subtde/signal.hpp"

namespace subtde::interp {
namespace {

constexpr double kPi = std::numbers::pi;

struct Triple {
  double left, center, right;
};

// Peak and neighbors with the sign flipped so the peak is non-negative.
Triple peak_triple(const PeakNeighborhood& n) {
  const std::size_t k = n.peak_index;
  if (n.values.size() < 3 || k == 0 || k + 1 >= n.values.size()) {
    throw Error(ErrorCode::kEdgePeak,
                "peak index " + std::to_string(k) +
                    " has no neighbor on both sides (size " +
                    std::to_string(n.values.size()) + ")");
  }
  const double s = n.values[k] < 0.0 ? -1.0 : 1.0;
  return {s * n.values[k - 1], s * n.values[k], s * n.values[k + 1]};
}

// Vertex of the parabola through (-1, l), (0, c), (1, r).
Refinement vertex(double l, double c, double r) {
  Refinement out;
  const double curvature = l - 2.0 * c + r;
  const double scale = std::max({std::abs(l), std::abs(c), std::abs(r)});
  if (!(std::abs(curvature) > 1e-14 * scale) || !std::isfinite(curvature)) {
    out.flat = true;
    return out;
  }
  out.offset = (l - r) / (2.0 * curvature);
  if (std::abs(out.offset) > 1.0) {
    out.offset = std::clamp(out.offset, -1.0, 1.0);
    out.clamped = true;
  }
  return out;
}

double wrap_phase(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x <= -kPi ? x + 2.0 * kPi : x;
}

// sinc(m - d) for integer m using a precomputed sin(pi d):
// sin(pi (m - d)) = -(-1)^m sin(pi d).
double shifted_sinc(long m, double d, double sin_pi_d) {
  const double x = static_cast<double>(m) - d;
  if (x == 0.0) return 1.0;
  const double sign = (m % 2 == 0) ? -1.0 : 1.0;
  return sign * sin_pi_d / (kPi * x);
}

struct Support {
  long lo, hi;
  bool clamped;
};

Support support(const PeakNeighborhood& n, int half_width) {
  const long k0 = static_cast<long>(n.peak_index);
  const long last = static_cast<long>(n.values.size()) - 1;
  const long lo = std::max(0L, k0 - half_width);
  const long hi = std::min(last, k0 + half_width);
  return {lo, hi, lo != k0 - half_width || hi != k0 + half_width};
}

void check_grid_args(const PeakNeighborhood& n, int half_width, int factor) {
  if (half_width < 1) {
    throw Error(ErrorCode::kInvalidArgument, "S must be >= 1");
  }
  if (factor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "interpolation factor must be >= 1");
  }
  if (n.values.empty() || n.peak_index >= n.values.size()) {
    throw Error(ErrorCode::kInvalidArgument, "peak index outside the values");
  }
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kNone: return "none";
    case Method::kParabolic: return "parabolic";
    case Method::kGaussian: return "gaussian";
    case Method::kWeightedFrequency: return "weighted_frequency";
    case Method::kSinc: return "sinc";
    case Method::kWhittakerShannon: return "whittaker_shannon";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  if (name == "ws") return Method::kWhittakerShannon;
  if (name == "wf") return Method::kWeightedFrequency;
  return std::nullopt;
}

PeakNeighborhood PeakNeighborhood::from_values(std::vector<double> values,
                                               double rate_hz) {
  PeakNeighborhood n;
  n.peak_index = argmax_abs(values);
  n.values = std::move(values);
  n.rate_hz = rate_hz;
  return n;
}

void InterpConfig::validate() const {
  if (factor < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "interpolation factor must be >= 1, got " + std::to_string(factor));
  }
  if ((method == Method::kSinc || method == Method::kWhittakerShannon) &&
      half_width < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "S must be >= 1, got " + std::to_string(half_width));
  }
}

Refinement interp_parabolic(const PeakNeighborhood& n) {
  const auto t = peak_triple(n);
  return vertex(t.left, t.center, t.right);
}

Refinement interp_gaussian(const PeakNeighborhood& n) {
  auto t = peak_triple(n);
  if (!(t.center > 0.0)) {
    Refinement flat;
    flat.flat = true;
    return flat;
  }
  bool shifted = false;
  const double lowest = std::min({t.left, t.center, t.right});
  if (lowest <= 0.0) {
    const double c = std::abs(lowest) + 0.1 * std::abs(t.center);
    t.left += c;
    t.center += c;
    t.right += c;
    shifted = true;
  }
  auto out = vertex(std::log(t.left), std::log(t.center), std::log(t.right));
  out.shifted = shifted;
  return out;
}

Refinement interp_weighted_frequency(const PeakNeighborhood& n) {
  const std::size_t size = n.values.size();
  if (size < 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "weighted-frequency interpolation needs >= 8 values");
  }
  if (n.peak_index >= size) {
    throw Error(ErrorCode::kInvalidArgument, "peak index outside the values");
  }
  const double peak = n.values[n.peak_index];
  if (peak == 0.0) {
    throw Error(ErrorCode::kDegenerateSpectrum, "all-zero TDE function");
  }
  // Circular shift so the peak sits at index 0 (no phase wrapping for a
  // sub-sample residual delay), normalized by the signed peak.
  std::vector<double> shifted(size);
  for (std::size_t i = 0; i < size; ++i) {
    shifted[i] = n.values[(i + n.peak_index) % size] / peak;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, shifted);

  const std::size_t bins = (size - 1) / 2;  // positive, excludes DC/Nyquist
  std::vector<double> omega(bins), phase(bins), weight(bins);
  double total_weight = 0.0;
  for (std::size_t k = 1; k <= bins; ++k) {
    const auto& f = spectrum[k];
    const double mag2 = std::norm(f);
    omega[k - 1] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(size);
    phase[k - 1] = std::arg(f);
    weight[k - 1] = mag2 * mag2;
    total_weight += weight[k - 1];
  }
  if (!(total_weight >= 1e-12)) {
    throw Error(ErrorCode::kDegenerateSpectrum,
                "spectral weight below 1e-12");
  }
  auto fit = [&] {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
      num += weight[i] * phase[i] * omega[i];
      den += weight[i] * omega[i] * omega[i];
    }
    return num / den;
  };
  double slope = fit();
  bool wrapped = false;
  for (std::size_t i = 0; i < bins; ++i) {
    const double residual = phase[i] - slope * omega[i];
    if (residual <= -kPi || residual > kPi) {
      phase[i] = slope * omega[i] + wrap_phase(residual);
      wrapped = true;
    }
  }
  if (wrapped) slope = fit();

  Refinement out;
  out.offset = -slope;
  if (!std::isfinite(out.offset)) {
    throw Error(ErrorCode::kDegenerateSpectrum, "phase fit diverged");
  }
  if (std::abs(out.offset) > 1.0) {
    out.offset = std::clamp(out.offset, -1.0, 1.0);
    out.clamped = true;
  }
  return out;
}

std::vector<double> search_grid(int factor) {
  if (factor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "interpolation factor must be >= 1");
  }
  std::vector<double> grid;
  grid.reserve(2 * static_cast<std::size_t>(factor) - 1);
  grid.push_back(0.0);
  for (int j = 1; j < factor; ++j) {
    grid.push_back(-static_cast<double>(j) / factor);
    grid.push_back(static_cast<double>(j) / factor);
  }
  return grid;
}

Refinement interp_sinc(const PeakNeighborhood& n, int half_width, int factor) {
  check_grid_args(n, half_width, factor);
  const double peak = n.values[n.peak_index];
  Refinement out;
  if (peak == 0.0) {
    out.flat = true;
    return out;
  }
  const auto sup = support(n, half_width);
  out.clamped = sup.clamped;
  const long k0 = static_cast<long>(n.peak_index);

  std::vector<double> target;
  for (long k = sup.lo; k <= sup.hi; ++k) {
    target.push_back(n.values[static_cast<std::size_t>(k)] / peak);
  }
  double best_cost = std::numeric_limits<double>::infinity();
  for (double d : search_grid(factor)) {
    const double s = std::sin(kPi * d);
    double cost = 0.0;
    for (long k = sup.lo; k <= sup.hi; ++k) {
      const double r = shifted_sinc(k - k0, d, s) -
                       target[static_cast<std::size_t>(k - sup.lo)];
      cost += r * r;
    }
    if (cost < best_cost) {
      best_cost = cost;
      out.offset = d;
    }
  }
  return out;
}

std::vector<double> whittaker_shannon_curve(const PeakNeighborhood& n,
                                            int half_width,
                                            const std::vector<double>& offsets) {
  check_grid_args(n, half_width, 1);
  const double sign = n.values[n.peak_index] < 0.0 ? -1.0 : 1.0;
  const auto sup = support(n, half_width);
  const long k0 = static_cast<long>(n.peak_index);
  std::vector<double> curve;
  curve.reserve(offsets.size());
  for (double d : offsets) {
    const double s = std::sin(kPi * d);
    double acc = 0.0;
    for (long k = sup.lo; k <= sup.hi; ++k) {
      acc += n.values[static_cast<std::size_t>(k)] * shifted_sinc(k - k0, d, s);
    }
    curve.push_back(sign * acc);
  }
  return curve;
}

Refinement interp_whittaker_shannon(const PeakNeighborhood& n, int half_width,
                                    int factor) {
  check_grid_args(n, half_width, factor);
  const auto grid = search_grid(factor);
  const auto curve = whittaker_shannon_curve(n, half_width, grid);
  Refinement out;
  out.clamped = support(n, half_width).clamped;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (curve[i] > best) {
      best = curve[i];
      out.offset = grid[i];
    }
  }
  return out;
}

Refinement refine(const PeakNeighborhood& n, const InterpConfig& cfg) {
  cfg.validate();
  switch (cfg.method) {
    case Method::kNone: return {};
    case Method::kParabolic: return interp_parabolic(n);
    case Method::kGaussian: return interp_gaussian(n);
    case Method::kWeightedFrequency: return interp_weighted_frequency(n);
    case Method::kSinc: return interp_sinc(n, cfg.half_width, cfg.factor);
    case Method::kWhittakerShannon:
      return interp_whittaker_shannon(n, cfg.half_width, cfg.factor);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown interpolation method");
}

double refine_peak(const PeakNeighborhood& n, const InterpConfig& cfg) {
  return static_cast<double>(n.peak_index) + refine(n, cfg).offset;
}

}  // namespace subtde::interp
