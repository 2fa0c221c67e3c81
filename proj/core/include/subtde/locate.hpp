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

#ifndef SUBTDE_LOCATE_HPP_
#define SUBTDE_LOCATE_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

// Far-field image-source localization from TDOA and TOA estimates.
namespace subtde::locate {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kSpeedOfSound = 343.0;

/// Relative singular-value tolerance for the pseudo-inverse and rank checks.
inline constexpr double kRankTolerance = 1e-10;

/// Sensor positions in meters (2-D or 3-D, all the same dimension).
class ArrayGeometry {
 public:
  explicit ArrayGeometry(std::vector<Vector> positions);

  /// `count` sensors evenly spaced on a circle in the xy-plane, first sensor
  /// on the +x axis.
  static ArrayGeometry circular(std::size_t count, double radius,
                                const Vector& center = Vector::Zero(2));

  std::size_t size() const noexcept { return positions_.size(); }
  Eigen::Index dimension() const noexcept { return positions_.front().size(); }
  const std::vector<Vector>& positions() const noexcept { return positions_; }
  const Vector& position(std::size_t n) const { return positions_.at(n); }

  /// r_c, the mean sensor position.
  Vector center() const;

  /// Largest pairwise sensor distance.
  double max_distance() const;

 private:
  std::vector<Vector> positions_;
};

/// All sensor pairs (m, n) with m < n in lexicographic order. This is the one
/// ordering used for V rows and TDOA vectors.
std::vector<std::pair<std::size_t, std::size_t>> sensor_pairs(std::size_t count);

/// Rows v_{m,n} = r_n - r_m over sensor_pairs(). Throws kRankDeficient unless
/// V has full rank, i.e. rank == min(rows, dimension).
Matrix pair_difference_matrix(const ArrayGeometry& geometry);

/// Least-squares slowness s = V^+ tau. Throws kRankDeficient as above.
Vector estimate_slowness(const Matrix& v, const Vector& tdoas);

/// Mean of the per-sensor TOAs; the TOA at the array center.
double center_toa(std::span<const double> toas);

/// x = r_c - s * (c * t_c) / |s|. Throws kZeroSlowness for s = 0.
Vector estimate_position(const Vector& slowness, double center_toa_seconds,
                         const ArrayGeometry& geometry,
                         double speed_of_sound = kSpeedOfSound);

/// |x - x_hat| / |r_c - x|.
double localization_error(const Vector& estimate, const Vector& truth,
                          const Vector& array_center);

/// Smallest integer L with L > d_max * rate / c.
std::size_t min_window_length(const ArrayGeometry& geometry, double rate_hz,
                              double speed_of_sound = kSpeedOfSound);

/// Exact plane-wave TDOAs for slowness `s`, in sensor_pairs() order.
Vector plane_wave_tdoas(const ArrayGeometry& geometry, const Vector& slowness);

/// Spherical-wave TOA |r_n - x| / c for every sensor.
std::vector<double> spherical_toas(const ArrayGeometry& geometry,
                                   const Vector& source,
                                   double speed_of_sound = kSpeedOfSound);

}  // namespace subtde::locate

#endif  // SUBTDE_LOCATE_HPP_
