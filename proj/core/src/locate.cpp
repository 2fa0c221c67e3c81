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

#include "subtde/locate.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "subtde/errors.hpp"

namespace subtde::locate {
namespace {

Eigen::Index numeric_rank(const Eigen::JacobiSVD<Matrix>& svd) {
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankTolerance * sv(0)) ++rank;
  }
  return rank;
}

void require_full_rank(const Matrix& v, const Eigen::JacobiSVD<Matrix>& svd) {
  const Eigen::Index needed = std::min(v.rows(), v.cols());
  const Eigen::Index rank = numeric_rank(svd);
  if (rank < needed || needed == 0) {
    throw Error(ErrorCode::kRankDeficient,
                "sensor difference matrix has rank " + std::to_string(rank) +
                    ", need " + std::to_string(needed));
  }
}

}  // namespace

ArrayGeometry::ArrayGeometry(std::vector<Vector> positions)
    : positions_(std::move(positions)) {
  if (positions_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "array has no sensors");
  }
  const auto dim = positions_.front().size();
  if (dim < 2 || dim > 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "sensor coordinates must be 2-D or 3-D");
  }
  for (const auto& p : positions_) {
    if (p.size() != dim) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sensor coordinates differ in dimension");
    }
    if (!p.allFinite()) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite sensor coordinate");
    }
  }
}

ArrayGeometry ArrayGeometry::circular(std::size_t count, double radius,
                                      const Vector& center) {
  if (count == 0 || !(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "circular array needs sensors and a positive radius");
  }
  if (center.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "array center must be 2-D or 3-D");
  }
  std::vector<Vector> positions;
  positions.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(count);
    Vector p = center;
    p(0) += radius * std::cos(angle);
    p(1) += radius * std::sin(angle);
    positions.push_back(std::move(p));
  }
  return ArrayGeometry(std::move(positions));
}

Vector ArrayGeometry::center() const {
  Vector c = Vector::Zero(dimension());
  for (const auto& p : positions_) c += p;
  return c / static_cast<double>(positions_.size());
}

double ArrayGeometry::max_distance() const {
  double d = 0.0;
  for (std::size_t m = 0; m < positions_.size(); ++m) {
    for (std::size_t n = m + 1; n < positions_.size(); ++n) {
      d = std::max(d, (positions_[n] - positions_[m]).norm());
    }
  }
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> sensor_pairs(std::size_t count) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (count < 2) return pairs;
  pairs.reserve(count * (count - 1) / 2);
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t n = m + 1; n < count; ++n) pairs.emplace_back(m, n);
  }
  return pairs;
}

Matrix pair_difference_matrix(const ArrayGeometry& geometry) {
  const auto pairs = sensor_pairs(geometry.size());
  if (pairs.empty()) {
    throw Error(ErrorCode::kRankDeficient, "need at least two sensors");
  }
  Matrix v(static_cast<Eigen::Index>(pairs.size()), geometry.dimension());
  for (std::size_t row = 0; row < pairs.size(); ++row) {
    const auto [m, n] = pairs[row];
    v.row(static_cast<Eigen::Index>(row)) =
        (geometry.position(n) - geometry.position(m)).transpose();
  }
  Eigen::JacobiSVD<Matrix> svd(v);
  require_full_rank(v, svd);
  return v;
}

Vector estimate_slowness(const Matrix& v, const Vector& tdoas) {
  if (v.rows() != tdoas.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "TDOA vector length " + std::to_string(tdoas.size()) +
                    " does not match " + std::to_string(v.rows()) + " pairs");
  }
  Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  require_full_rank(v, svd);
  svd.setThreshold(kRankTolerance);
  return svd.solve(tdoas);
}

double center_toa(std::span<const double> toas) {
  if (toas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no TOAs to average");
  }
  return std::accumulate(toas.begin(), toas.end(), 0.0) /
         static_cast<double>(toas.size());
}

Vector estimate_position(const Vector& slowness, double center_toa_seconds,
                         const ArrayGeometry& geometry, double speed_of_sound) {
  if (slowness.size() != geometry.dimension()) {
    throw Error(ErrorCode::kInvalidArgument,
                "slowness and geometry dimensions differ");
  }
  const double norm = slowness.norm();
  if (!(norm > 0.0)) {
    throw Error(ErrorCode::kZeroSlowness,
                "slowness vector is zero; no propagation direction");
  }
  return geometry.center() -
         slowness * (speed_of_sound * center_toa_seconds) / norm;
}

double localization_error(const Vector& estimate, const Vector& truth,
                          const Vector& array_center) {
  const double range = (array_center - truth).norm();
  if (!(range > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "source coincides with the array center");
  }
  return (truth - estimate).norm() / range;
}

std::size_t min_window_length(const ArrayGeometry& geometry, double rate_hz,
                               double speed_of_sound) {
  const double bound = geometry.max_distance() * rate_hz / speed_of_sound;
  return static_cast<std::size_t>(std::floor(bound)) + 1;
}

Vector plane_wave_tdoas(const ArrayGeometry& geometry, const Vector& slowness) {
  const auto pairs = sensor_pairs(geometry.size());
  Vector tau(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t row = 0; row < pairs.size(); ++row) {
    const auto [m, n] = pairs[row];
    tau(static_cast<Eigen::Index>(row)) =
        (geometry.position(n) - geometry.position(m)).dot(slowness);
  }
  return tau;
}

std::vector<double> spherical_toas(const ArrayGeometry& geometry,
                                   const Vector& source, double speed_of_sound) {
  std::vector<double> toas;
  toas.reserve(geometry.size());
  for (const auto& r : geometry.positions()) {
    toas.push_back((r - source).norm() / speed_of_sound);
  }
  return toas;
}

}  // namespace subtde::locate
