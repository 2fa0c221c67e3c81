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

#ifndef SUBTDE_INTERP_HPP_
#define SUBTDE_INTERP_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

// Subsample refinement of the integer peak of a discrete time-delay
// estimation function (a windowed RIR for TOA, a cross-correlation for TDOA).
namespace subtde::interp {

enum class Method {
  kNone,
  kParabolic,
  kGaussian,
  kWeightedFrequency,
  kSinc,
  kWhittakerShannon,
};

inline constexpr Method kAllMethods[] = {
    Method::kNone,   Method::kParabolic, Method::kGaussian,
    Method::kWeightedFrequency, Method::kSinc, Method::kWhittakerShannon,
};

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Discrete TDE function and the index of its largest-magnitude sample.
struct PeakNeighborhood {
  std::vector<double> values;
  std::size_t peak_index = 0;
  double rate_hz = 1.0;

  /// Builds a neighborhood with peak_index = argmax |values|.
  static PeakNeighborhood from_values(std::vector<double> values,
                                      double rate_hz);

  double peak_value() const { return values.at(peak_index); }
};

struct InterpConfig {
  Method method = Method::kNone;
  int half_width = 1;  // S, samples on each side of the peak (sinc, WS)
  int factor = 200;    // i = T / T_i

  void validate() const;
};

struct Refinement {
  double offset = 0.0;  // samples relative to peak_index, in [-1, 1]
  bool flat = false;     // three-point fit degenerate, offset forced to 0
  bool shifted = false;  // Gaussian positivity shift applied
  bool clamped = false;  // truncated sum or offset clipped at a boundary
};

Refinement interp_parabolic(const PeakNeighborhood& n);
Refinement interp_gaussian(const PeakNeighborhood& n);
Refinement interp_weighted_frequency(const PeakNeighborhood& n);
Refinement interp_sinc(const PeakNeighborhood& n, int half_width, int factor);
Refinement interp_whittaker_shannon(const PeakNeighborhood& n, int half_width,
                                    int factor);

/// Candidate offsets searched by the grid methods, j/factor for |j| < factor,
/// in tie-break order: 0, -1/f, +1/f, -2/f, ...
std::vector<double> search_grid(int factor);

/// Band-limited reconstruction sum_k f[k] sinc(d - (k - k0)) over the
/// truncated support, evaluated at each offset d in `offsets`. Values are
/// sign-normalized so the peak sample is positive.
std::vector<double> whittaker_shannon_curve(const PeakNeighborhood& n,
                                            int half_width,
                                            const std::vector<double>& offsets);

/// Peak offset for the configured method.
Refinement refine(const PeakNeighborhood& n, const InterpConfig& cfg);

/// peak_index + refine(n, cfg).offset, in samples.
double refine_peak(const PeakNeighborhood& n, const InterpConfig& cfg);

}  // namespace subtde::interp

#endif  // SUBTDE_INTERP_HPP_
