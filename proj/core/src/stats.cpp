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

#include "subtde/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "subtde/errors.hpp"

namespace subtde {

Summary aggregate(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptySet, "no values to aggregate");
  }
  Summary s;
  s.count = values.size();
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / n);
  std::vector<double> sorted(values.begin(), values.end());
  const auto mid = sorted.begin() +
                   static_cast<std::ptrdiff_t>((sorted.size() - 1) / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  s.median = *mid;
  return s;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double bootstrap_mean_stderr(std::span<const double> values,
                             std::size_t resamples, std::uint64_t seed) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptySet, "no values to resample");
  }
  std::vector<double> zeros(values.size(), 0.0);
  return bootstrap_paired_diff_stderr(values, zeros, resamples, seed);
}

double bootstrap_paired_diff_stderr(std::span<const double> a,
                                    std::span<const double> b,
                                    std::size_t resamples, std::uint64_t seed) {
  if (a.empty() || a.size() != b.size()) {
    throw Error(ErrorCode::kEmptySet,
                "paired bootstrap needs two non-empty samples of equal size");
  }
  if (resamples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two resamples");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
  std::vector<double> means(resamples);
  for (auto& m : means) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::size_t j = pick(rng);
      acc += a[j] - b[j];
    }
    m = acc / static_cast<double>(a.size());
  }
  return aggregate(means).stddev;
}

}  // namespace subtde
