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

#ifndef SUBTDE_STATS_HPP_
#define SUBTDE_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

namespace subtde {

struct Summary {
  double mean = 0.0;
  double median = 0.0;  // lower middle element for even counts
  double stddev = 0.0;  // population standard deviation
  std::size_t count = 0;
};

/// Throws kEmptySet on empty input. NaN entries are not filtered.
Summary aggregate(std::span<const double> values);

/// Standard error of the mean of `values` estimated by bootstrap resampling
/// with a fixed seed.
double bootstrap_mean_stderr(std::span<const double> values,
                             std::size_t resamples = 400,
                             std::uint64_t seed = 0x5eed);

/// Bootstrap standard error of mean(a) - mean(b) for paired samples of equal
/// length (resampling indices jointly).
double bootstrap_paired_diff_stderr(std::span<const double> a,
                                    std::span<const double> b,
                                    std::size_t resamples = 400,
                                    std::uint64_t seed = 0x5eed);

/// splitmix64 finalizer; used to derive independent per-task seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace subtde

#endif  // SUBTDE_STATS_HPP_
