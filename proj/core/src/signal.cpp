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

#include "subtde/signal.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "subtde/errors.hpp"

namespace subtde {

SampledSignal::SampledSignal(std::vector<double> samples, double rate_hz)
    : samples_(std::move(samples)), rate_hz_(rate_hz) {
  if (!(rate_hz_ > 0.0) || !std::isfinite(rate_hz_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample rate must be positive, got " + std::to_string(rate_hz));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "non-finite sample at index " + std::to_string(i));
    }
  }
}

SampledSignal SampledSignal::zeros(std::size_t length, double rate_hz) {
  return SampledSignal(std::vector<double>(length, 0.0), rate_hz);
}

SampledSignal SampledSignal::impulse(std::size_t length, std::size_t index,
                                     double rate_hz) {
  if (index >= length) {
    throw Error(ErrorCode::kInvalidArgument, "impulse index out of range");
  }
  std::vector<double> x(length, 0.0);
  x[index] = 1.0;
  return SampledSignal(std::move(x), rate_hz);
}

double SampledSignal::energy() const noexcept {
  return std::inner_product(samples_.begin(), samples_.end(), samples_.begin(),
                            0.0);
}

std::size_t argmax_abs(std::span<const double> values) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

double sinc(double x) noexcept {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace subtde
