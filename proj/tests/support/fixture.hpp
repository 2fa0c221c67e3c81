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

#ifndef SUBTDE_TESTS_SUPPORT_FIXTURE_HPP_
#define SUBTDE_TESTS_SUPPORT_FIXTURE_HPP_

// Synthetic multichannel RIR measurement written to disk: a planar circular
// array, one loudspeaker and three image sources.

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "subtde/signals.hpp"
#include "subtde/wav.hpp"

namespace fixture {

inline constexpr double kRate = 48000.0;
inline constexpr double kBandlimit = 3200.0;
inline constexpr double kSpeed = 343.0;
inline constexpr double kHeight = 1.2;
inline constexpr double kLead = 0.001;  // seconds before t = 0 of the scene
inline constexpr std::size_t kSensors = 8;

using Point = std::array<double, 2>;

struct Measurement {
  std::filesystem::path audio;
  std::filesystem::path geometry;
  std::vector<Point> sensors;
  std::vector<Point> emitters;  // loudspeaker first, then image sources
  std::vector<std::vector<double>> toas;  // [event][sensor], seconds

  double tdoa(std::size_t event, std::size_t m, std::size_t n) const {
    return toas[event][n] - toas[event][m];
  }
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

// centered = true puts the loudspeaker at the array center, at a range of a
// whole number of samples, so every channel's direct path lies on the grid.
inline Measurement write(const std::filesystem::path& dir, bool centered,
                         std::size_t sensor_count = kSensors,
                         std::size_t geometry_rows = kSensors) {
  std::filesystem::create_directories(dir);
  Measurement m;
  m.audio = dir / "rir.wav";
  m.geometry = dir / "geometry.json";
  const double radius = centered ? 28.0 * kSpeed / kRate : 0.2;
  for (std::size_t n = 0; n < sensor_count; ++n) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(n) /
                     static_cast<double>(sensor_count);
    m.sensors.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  const Point speaker = centered ? Point{0.0, 0.0} : Point{0.55, -0.35};
  m.emitters = {speaker, {1.9, 0.5}, {-0.8, 3.2}, {-3.9, -2.6}};
  const std::array<double, 4> gains{1.0, 0.6, 0.45, 0.35};

  const std::size_t length = static_cast<std::size_t>(0.03 * kRate);
  subtde::wav::Audio audio;
  audio.rate_hz = kRate;
  m.toas.assign(m.emitters.size(), std::vector<double>(sensor_count));
  for (std::size_t n = 0; n < sensor_count; ++n) {
    std::vector<double> ch(length, 0.0);
    for (std::size_t e = 0; e < m.emitters.size(); ++e) {
      const double toa = kLead + distance(m.sensors[n], m.emitters[e]) / kSpeed;
      m.toas[e][n] = toa;
      const auto pulse = subtde::signals::render_pulse({toa, gains[e], kBandlimit}, kRate);
      subtde::signals::accumulate(ch, pulse);
    }
    audio.channels.push_back(std::move(ch));
  }
  subtde::wav::write(m.audio, audio);

  std::ofstream js(m.geometry);
  js.precision(17);
  js << "{\"source_label\": \"fixture\", \"rate_hz\": " << kRate << ", \"sensors\": [";
  for (std::size_t n = 0; n < geometry_rows; ++n) {
    const auto& p = m.sensors[n % sensor_count];
    js << (n ? ", " : "") << "[" << p[0] << ", " << p[1] << ", " << kHeight << "]";
  }
  js << "]}\n";
  return m;
}

}  // namespace fixture

#endif  // SUBTDE_TESTS_SUPPORT_FIXTURE_HPP_
