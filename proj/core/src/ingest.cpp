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

#include "subtde/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>

#include "json.hpp"
#include "subtde/errors.hpp"
#include "subtde/signals.hpp"
#include "subtde/wav.hpp"

namespace subtde::ingest {
namespace {

constexpr double kPlanarTolerance = 1e-9;
constexpr std::size_t kAntiAliasTapsPerFactor = 64;
constexpr double kAntiAliasFraction = 0.45;

[[noreturn]] void format_error(const std::filesystem::path& path,
                               const std::string& what) {
  throw Error(ErrorCode::kFormatError, path.string() + ": " + what);
}

// Arrays whose sensors all share one height are located in the plane.
locate::ArrayGeometry geometry_from_rows(const std::vector<std::vector<double>>& rows,
                                         const std::filesystem::path& path) {
  if (rows.empty()) format_error(path, "sensor list is empty");
  const std::size_t dim = rows.front().size();
  if (dim != 2 && dim != 3) format_error(path, "sensors need 2 or 3 coordinates");
  bool planar = dim == 3;
  for (const auto& r : rows) {
    if (r.size() != dim) format_error(path, "sensors differ in dimension");
    if (planar && std::abs(r[2] - rows.front()[2]) > kPlanarTolerance) planar = false;
  }
  const std::size_t used = planar ? 2 : dim;
  std::vector<locate::Vector> positions;
  positions.reserve(rows.size());
  for (const auto& r : rows) {
    locate::Vector p(static_cast<Eigen::Index>(used));
    for (std::size_t d = 0; d < used; ++d) p(static_cast<Eigen::Index>(d)) = r[d];
    positions.push_back(std::move(p));
  }
  return locate::ArrayGeometry(std::move(positions));
}

std::size_t window_length(double window_ms, double rate_hz) {
  const auto n = static_cast<std::size_t>(std::llround(window_ms * rate_hz / 1000.0));
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "event window is too short");
  return n;
}

struct Localized {
  std::vector<double> toas;
  std::vector<double> tdoas;
  std::optional<locate::Vector> position;
};

Localized localize(const tde::FrameSet& frames,
                   const locate::ArrayGeometry& geometry,
                   const interp::InterpConfig& cfg, double speed_of_sound) {
  Localized out;
  const auto pairs = locate::sensor_pairs(frames.frames.size());
  for (std::size_t n = 0; n < frames.frames.size(); ++n) {
    out.toas.push_back(tde::estimate_toa(frames.frames[n], cfg, n).seconds);
  }
  locate::Vector tau(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [m, n] = pairs[p];
    const double t =
        tde::estimate_tdoa(frames.frames[m], frames.frames[n], cfg, m, n).seconds;
    out.tdoas.push_back(t);
    tau(static_cast<Eigen::Index>(p)) = t;
  }
  try {
    const auto s = locate::estimate_slowness(
        locate::pair_difference_matrix(geometry), tau);
    out.position = locate::estimate_position(s, locate::center_toa(out.toas),
                                             geometry, speed_of_sound);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRankDeficient && e.code() != ErrorCode::kZeroSlowness) {
      throw;
    }
  }
  return out;
}

}  // namespace

MeasurementSet load_measurement(const std::filesystem::path& audio_path,
                                const std::filesystem::path& geometry_path) {
  const auto audio = wav::read(audio_path);

  std::ifstream in(geometry_path);
  if (!in) format_error(geometry_path, "cannot open geometry sidecar");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    format_error(geometry_path, e.what());
  }
  if (!doc.is_object() || !doc.contains("sensors") || !doc["sensors"].is_array()) {
    format_error(geometry_path, "expected an object with a \"sensors\" array");
  }
  std::vector<std::vector<double>> rows;
  try {
    rows = doc["sensors"].get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    format_error(geometry_path, e.what());
  }
  if (rows.size() != audio.channels.size()) {
    throw Error(ErrorCode::kGeometryMismatch,
                std::to_string(audio.channels.size()) + " audio channels but " +
                    std::to_string(rows.size()) + " sensor positions");
  }
  if (doc.contains("rate_hz") && doc["rate_hz"].is_number() &&
      std::abs(doc["rate_hz"].get<double>() - audio.rate_hz) > 1e-6) {
    format_error(geometry_path, "sidecar rate differs from the audio file rate");
  }

  MeasurementSet set{
      .rirs = {},
      .geometry = geometry_from_rows(rows, geometry_path),
      .source_label = doc.value("source_label", audio_path.stem().string()),
      .rate_hz = audio.rate_hz,
  };
  for (const auto& ch : audio.channels) set.rirs.emplace_back(ch, audio.rate_hz);
  return set;
}

MatchedFilterKernel estimate_matched_filter(const SampledSignal& rir,
                                            std::size_t direct_window_samples) {
  if (rir.empty() || rir.energy() == 0.0) {
    throw Error(ErrorCode::kNoPeak, "signal has no direct-path peak");
  }
  if (direct_window_samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "direct window must be non-empty");
  }
  const std::size_t w = std::min(direct_window_samples, rir.size());
  const std::size_t peak = argmax_abs(rir.samples());
  const long half = static_cast<long>(w / 2);
  const long start = std::clamp(static_cast<long>(peak) - half, 0L,
                                static_cast<long>(rir.size() - w));
  std::vector<double> seg(rir.samples().begin() + start,
                          rir.samples().begin() + start + static_cast<long>(w));
  const double norm =
      std::sqrt(std::inner_product(seg.begin(), seg.end(), seg.begin(), 0.0));
  for (double& v : seg) v /= norm;
  return {SampledSignal(std::move(seg), rir.rate_hz()),
          static_cast<long>(peak) - start, peak};
}

SampledSignal compensate(const SampledSignal& rir, const MatchedFilterKernel& k) {
  return tde::matched_filter(rir, k.kernel, k.origin);
}

PeakList pick_peaks(const SampledSignal& signal, std::size_t count,
                    std::size_t min_separation) {
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "peak count must be >= 1");
  const auto x = signal.samples();
  const std::size_t n = x.size();
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(x[i]);
    if (a == 0.0) continue;
    const bool left = i == 0 || a > std::abs(x[i - 1]);
    const bool right = i + 1 == n || a >= std::abs(x[i + 1]);
    if (left && right) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(x[a]) > std::abs(x[b]);
                   });
  PeakList chosen;
  for (std::size_t c : candidates) {
    const bool clear = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t p) {
      return (c > p ? c - p : p - c) >= min_separation;
    });
    if (!clear) continue;
    chosen.push_back(c);
    if (chosen.size() == count) break;
  }
  if (chosen.size() < count) {
    throw Error(ErrorCode::kInsufficientPeaks,
                "found " + std::to_string(chosen.size()) + " of " +
                    std::to_string(count) + " requested peaks");
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

SampledSignal downsample(const SampledSignal& signal, int factor) {
  if (factor < 1) {
    throw Error(ErrorCode::kInvalidFactor, "decimation factor must be >= 1");
  }
  if (factor == 1) return signal;
  const auto f = static_cast<std::size_t>(factor);
  const auto kernel =
      signals::lowpass_kernel(kAntiAliasFraction / factor, kAntiAliasTapsPerFactor * f);
  const auto filtered = signals::filter_zero_phase(signal.samples(), kernel);
  std::vector<double> out;
  out.reserve(filtered.size() / f + 1);
  for (std::size_t i = 0; i < filtered.size(); i += f) out.push_back(filtered[i]);
  return SampledSignal(std::move(out), signal.rate_hz() / factor);
}

GroundTruth ground_truth_pipeline(const MeasurementSet& set,
                                  const IngestOptions& options) {
  if (set.rirs.size() != set.geometry.size()) {
    throw Error(ErrorCode::kGeometryMismatch, "channel and sensor counts differ");
  }
  GroundTruth truth;
  truth.window_samples = window_length(options.window_ms, set.rate_hz);
  std::vector<PeakList> peaks;
  for (const auto& rir : set.rirs) {
    const auto kernel = estimate_matched_filter(rir, truth.window_samples);
    truth.compensated.push_back(compensate(rir, kernel));
    peaks.push_back(pick_peaks(truth.compensated.back(), options.events,
                               truth.window_samples));
  }

  const interp::InterpConfig none{.method = interp::Method::kNone};
  for (std::size_t e = 0; e < options.events; ++e) {
    EventReference ref;
    double sum = 0.0;
    for (const auto& p : peaks) {
      ref.channel_peaks.push_back(static_cast<long>(p[e]));
      sum += static_cast<double>(p[e]);
    }
    ref.center = std::lround(sum / static_cast<double>(peaks.size()));
    const auto frames = tde::make_frame_set(truth.compensated, ref.center,
                                            truth.window_samples,
                                            options.window_shape);
    auto loc = localize(frames, set.geometry, none, options.speed_of_sound);
    ref.toas = std::move(loc.toas);
    ref.tdoas = std::move(loc.tdoas);
    ref.position = std::move(loc.position);
    truth.events.push_back(std::move(ref));
  }
  return truth;
}

interp::InterpConfig EvaluationOptions::config_for(interp::Method method) const {
  interp::InterpConfig cfg{.method = method, .half_width = 1, .factor = factor};
  if (method == interp::Method::kSinc) cfg.half_width = s_sinc;
  if (method == interp::Method::kWhittakerShannon) cfg.half_width = s_ws;
  return cfg;
}

std::vector<EventErrors> evaluate_measurement(const GroundTruth& truth,
                                              const locate::ArrayGeometry& geometry,
                                              const IngestOptions& options,
                                              const EvaluationOptions& evaluation) {
  if (truth.compensated.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ground truth holds no channels");
  }
  const double full_rate = truth.compensated.front().rate_hz();
  const double ratio = full_rate / evaluation.target_rate_hz;
  const long factor = std::lround(ratio);
  if (factor < 1 || std::abs(ratio - static_cast<double>(factor)) > 1e-9) {
    throw Error(ErrorCode::kInvalidFactor,
                "full rate is not an integer multiple of the target rate");
  }
  std::vector<SampledSignal> low;
  for (const auto& h : truth.compensated) {
    low.push_back(downsample(h, static_cast<int>(factor)));
  }
  const std::size_t frame_len =
      window_length(options.window_ms, evaluation.target_rate_hz);

  std::vector<EventErrors> out;
  for (std::size_t e = 0; e < truth.events.size(); ++e) {
    const auto& ref = truth.events[e];
    const long center = std::lround(static_cast<double>(ref.center) /
                                    static_cast<double>(factor));
    const auto frames =
        tde::make_frame_set(low, center, frame_len, options.window_shape);
    for (auto method : evaluation.methods) {
      EventErrors row;
      row.event = e;
      row.method = method;
      try {
        const auto loc = localize(frames, geometry, evaluation.config_for(method),
                                  options.speed_of_sound);
        for (std::size_t p = 0; p < loc.tdoas.size(); ++p) {
          row.tdoa_errors.push_back(std::abs(loc.tdoas[p] - ref.tdoas[p]));
        }
        if (loc.position && ref.position) {
          row.position_error_m = (*loc.position - *ref.position).norm();
        }
      } catch (const Error& err) {
        row.failed = true;
        row.failure = err.what();
        row.tdoa_errors.clear();
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace subtde::ingest
