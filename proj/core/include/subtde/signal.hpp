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

#ifndef SUBTDE_SIGNAL_HPP_
#define SUBTDE_SIGNAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace subtde {

/// Uniformly sampled real-valued sequence. Rate must be positive and every
/// sample finite; both are checked on construction.
class SampledSignal {
 public:
  SampledSignal(std::vector<double> samples, double rate_hz);

  static SampledSignal zeros(std::size_t length, double rate_hz);
  static SampledSignal impulse(std::size_t length, std::size_t index,
                               double rate_hz);

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> mutable_samples() noexcept { return samples_; }
  const std::vector<double>& vector() const noexcept { return samples_; }

  double rate_hz() const noexcept { return rate_hz_; }
  double period() const noexcept { return 1.0 / rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  double operator[](std::size_t i) const { return samples_[i]; }

  double energy() const noexcept;

 private:
  std::vector<double> samples_;
  double rate_hz_;
};

/// Index of the sample with the largest magnitude; first one wins on ties.
std::size_t argmax_abs(std::span<const double> values);

/// Normalized sinc, sin(pi x) / (pi x).
double sinc(double x) noexcept;

}  // namespace subtde

#endif  // SUBTDE_SIGNAL_HPP_
