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

#include "subtde/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "subtde/errors.hpp"
#include "subtde/parallel.hpp"
#include "subtde/signals.hpp"

namespace subtde::scenario {
namespace {

constexpr std::uint64_t kAngleStream = 0x616e676c65ULL;
constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

Summary summary_or_nan(const std::vector<double>& values) {
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan, 0};
  }
  return aggregate(values);
}

}  // namespace

std::size_t ScenarioConfig::window_samples() const {
  return static_cast<std::size_t>(std::llround(window_ms * rate_hz / 1000.0));
}

bool ScenarioConfig::critically_sampled() const {
  return std::abs(bandwidth_ratio - kCriticalBandwidth) < 1e-12;
}

locate::ArrayGeometry ScenarioConfig::geometry() const {
  return locate::ArrayGeometry::circular(sensors, array_radius_m);
}

void ScenarioConfig::validate() const {
  if (!(rate_hz > 0.0)) invalid("rate_hz must be positive");
  if (!(speed_of_sound > 0.0)) invalid("speed of sound must be positive");
  if (std::isnan(snr_db)) invalid("snr_db must not be NaN");
  if (!(window_ms > 0.0)) invalid("window_ms must be positive");
  if (num_sources < 1) invalid("num_sources must be >= 1");
  if (!(bandwidth_ratio > 0.0 && bandwidth_ratio <= kCriticalBandwidth)) {
    invalid("bandwidth ratio must lie in (0, 0.5]");
  }
  if (sensors < 3) invalid("at least three sensors are needed in 2-D");
  if (!(array_radius_m > 0.0)) invalid("array radius must be positive");
  if (factor < 1) invalid("interpolation factor must be >= 1");
  if (s_sinc && *s_sinc < 1) invalid("s_sinc must be >= 1");
  if (s_ws && *s_ws < 1) invalid("s_ws must be >= 1");
  if (thiran_order < 1) invalid("thiran_order must be >= 1");
  const std::size_t minimum =
      locate::min_window_length(geometry(), rate_hz, speed_of_sound);
  if (window_samples() < minimum) {
    invalid("window of " + std::to_string(window_samples()) +
            " samples is shorter than the array minimum of " +
            std::to_string(minimum));
  }
}

interp::InterpConfig method_config(const ScenarioConfig& cfg,
                                   interp::Method method,
                                   tde::EstimateKind kind) {
  interp::InterpConfig out;
  out.method = method;
  out.factor = cfg.factor;
  const int frame = static_cast<int>(cfg.window_samples());
  if (method == interp::Method::kSinc) {
    if (cfg.s_sinc) {
      out.half_width = *cfg.s_sinc;
    } else if (cfg.critically_sampled()) {
      out.half_width = 1;
    } else {
      out.half_width = kind == tde::EstimateKind::kTdoa ? frame : frame / 2;
    }
  } else if (method == interp::Method::kWhittakerShannon) {
    out.half_width = cfg.s_ws.value_or(9);
  }
  out.half_width = std::max(out.half_width, 1);
  return out;
}

std::vector<ImageSource> place_image_sources(const ScenarioConfig& cfg) {
  if (cfg.num_sources < 1) invalid("num_sources must be >= 1");
  const auto center = cfg.geometry().center();
  const double spacing = static_cast<double>(cfg.window_samples()) / cfg.rate_hz;
  std::vector<ImageSource> sources;
  sources.reserve(static_cast<std::size_t>(cfg.num_sources));
  for (int k = 1; k <= cfg.num_sources; ++k) {
    std::mt19937_64 rng(mix_seed(mix_seed(cfg.seed, kAngleStream),
                                 static_cast<std::uint64_t>(k)));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    ImageSource s;
    s.index = k;
    s.angle_rad = angle(rng);
    s.center_toa = k * spacing;
    const double range = s.center_toa * cfg.speed_of_sound;
    s.position = center;
    s.position(0) += range * std::cos(s.angle_rad);
    s.position(1) += range * std::sin(s.angle_rad);
    sources.push_back(std::move(s));
  }
  return sources;
}

std::vector<SampledSignal> synth_sensor_signals(
    const ScenarioConfig& cfg, const locate::ArrayGeometry& geometry,
    std::span<const ImageSource> sources) {
  const std::size_t frame = cfg.window_samples();
  double last_toa = 0.0;
  for (const auto& s : sources) last_toa = std::max(last_toa, s.center_toa);
  const std::size_t length =
      static_cast<std::size_t>(std::ceil(last_toa * cfg.rate_hz)) + 2 * frame +
      signals::kTailAllowancePerOrder * static_cast<std::size_t>(cfg.thiran_order) +
      signals::kBandlimitOrder;
  const double bandlimit = cfg.bandwidth_ratio * cfg.rate_hz;

  std::vector<SampledSignal> out;
  out.reserve(geometry.size());
  for (std::size_t n = 0; n < geometry.size(); ++n) {
    std::vector<double> record(length, 0.0);
    for (const auto& s : sources) {
      const double toa =
          (geometry.position(n) - s.position).norm() / cfg.speed_of_sound;
      const auto pulse = signals::render_pulse({toa, 1.0, bandlimit},
                                               cfg.rate_hz, cfg.thiran_order);
      signals::accumulate(record, pulse);
    }
    SampledSignal clean(std::move(record), cfg.rate_hz);
    out.push_back(signals::add_noise(
        clean, cfg.snr_db, mix_seed(mix_seed(cfg.seed, kNoiseStream), n),
        {.reference_window = frame}));
  }
  return out;
}

double SourceErrors::mean_toa_error() const { return mean_of(toa_errors); }
double SourceErrors::mean_tdoa_error() const { return mean_of(tdoa_errors); }

namespace {

template <typename Pick>
std::vector<double> pool(const TrialResult& trial, interp::Method method,
                         Pick&& pick) {
  std::vector<double> out;
  for (const auto& r : trial.records) {
    if (r.method != method || r.failed) continue;
    pick(r, out);
  }
  return out;
}

}  // namespace

std::vector<double> TrialResult::toa_errors(interp::Method method) const {
  return pool(*this, method, [](const SourceErrors& r, std::vector<double>& o) {
    o.insert(o.end(), r.toa_errors.begin(), r.toa_errors.end());
  });
}

std::vector<double> TrialResult::tdoa_errors(interp::Method method) const {
  return pool(*this, method, [](const SourceErrors& r, std::vector<double>& o) {
    o.insert(o.end(), r.tdoa_errors.begin(), r.tdoa_errors.end());
  });
}

std::vector<double> TrialResult::position_errors(interp::Method method) const {
  return pool(*this, method, [](const SourceErrors& r, std::vector<double>& o) {
    o.push_back(r.position_error);
  });
}

std::vector<double> TrialResult::per_source_tdoa(interp::Method method) const {
  return pool(*this, method, [](const SourceErrors& r, std::vector<double>& o) {
    o.push_back(r.mean_tdoa_error());
  });
}

std::size_t TrialResult::failures(interp::Method method) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const SourceErrors& r) {
        return r.method == method && r.failed;
      }));
}

TrialResult run_trial(const ScenarioConfig& cfg,
                      std::span<const interp::Method> methods,
                      unsigned threads) {
  cfg.validate();
  if (methods.empty()) invalid("no interpolation methods requested");
  const auto geometry = cfg.geometry();
  const auto sources = place_image_sources(cfg);
  const auto signals = synth_sensor_signals(cfg, geometry, sources);
  const auto v = locate::pair_difference_matrix(geometry);
  const auto pairs = locate::sensor_pairs(geometry.size());
  const auto center = geometry.center();
  const std::size_t frame_len = cfg.window_samples();

  TrialResult result;
  result.methods.assign(methods.begin(), methods.end());
  result.records.resize(sources.size() * methods.size());

  parallel_for(sources.size(), threads, [&](std::size_t i) {
    const auto& src = sources[i];
    const long v_center = std::lround(src.center_toa * cfg.rate_hz);
    const auto frames =
        tde::make_frame_set(signals, v_center, frame_len, cfg.window_shape);
    const auto true_toas =
        locate::spherical_toas(geometry, src.position, cfg.speed_of_sound);

    for (std::size_t j = 0; j < methods.size(); ++j) {
      auto& rec = result.records[i * methods.size() + j];
      rec.source = src.index;
      rec.method = methods[j];
      try {
        const auto toa_cfg =
            method_config(cfg, methods[j], tde::EstimateKind::kToa);
        const auto tdoa_cfg =
            method_config(cfg, methods[j], tde::EstimateKind::kTdoa);
        std::vector<double> toas(geometry.size());
        for (std::size_t n = 0; n < geometry.size(); ++n) {
          toas[n] = tde::estimate_toa(frames.frames[n], toa_cfg, n).seconds;
          rec.toa_errors.push_back(std::abs(toas[n] - true_toas[n]));
        }
        locate::Vector tau(static_cast<Eigen::Index>(pairs.size()));
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          const auto [m, n] = pairs[p];
          const double est = tde::estimate_tdoa(frames.frames[m],
                                                frames.frames[n], tdoa_cfg, m, n)
                                 .seconds;
          tau(static_cast<Eigen::Index>(p)) = est;
          rec.tdoa_errors.push_back(std::abs(est - (true_toas[n] - true_toas[m])));
        }
        const auto s = locate::estimate_slowness(v, tau);
        const auto x_hat = locate::estimate_position(
            s, locate::center_toa(toas), geometry, cfg.speed_of_sound);
        rec.position_error = locate::localization_error(x_hat, src.position, center);
      } catch (const Error& e) {
        rec.failed = true;
        rec.failure = e.what();
        rec.toa_errors.clear();
        rec.tdoa_errors.clear();
        rec.position_error = std::numeric_limits<double>::quiet_NaN();
      }
    }
  });
  return result;
}

std::string_view to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::kRateHz: return "rate_hz";
    case SweepParameter::kFactor: return "factor";
    case SweepParameter::kSnrDb: return "snr_db";
    case SweepParameter::kWindowMs: return "window_ms";
    case SweepParameter::kHalfWidth: return "S";
  }
  return "unknown";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (auto p : {SweepParameter::kRateHz, SweepParameter::kFactor,
                 SweepParameter::kSnrDb, SweepParameter::kWindowMs,
                 SweepParameter::kHalfWidth}) {
    if (to_string(p) == name) return p;
  }
  if (name == "fs") return SweepParameter::kRateHz;
  if (name == "snr") return SweepParameter::kSnrDb;
  return std::nullopt;
}

ScenarioConfig apply_parameter(const ScenarioConfig& base,
                               SweepParameter parameter, double value) {
  ScenarioConfig cfg = base;
  switch (parameter) {
    case SweepParameter::kRateHz: cfg.rate_hz = value; break;
    case SweepParameter::kFactor: cfg.factor = static_cast<int>(std::lround(value)); break;
    case SweepParameter::kSnrDb: cfg.snr_db = value; break;
    case SweepParameter::kWindowMs: cfg.window_ms = value; break;
    case SweepParameter::kHalfWidth:
      cfg.s_sinc = static_cast<int>(std::lround(value));
      cfg.s_ws = cfg.s_sinc;
      break;
  }
  return cfg;
}

void SweepSpec::validate() const {
  if (grid.empty()) invalid("sweep grid is empty");
  if (methods.empty()) invalid("sweep has no methods");
  for (double value : grid) {
    bool ok = std::isfinite(value);
    switch (parameter) {
      case SweepParameter::kRateHz: ok = ok && value >= 2000.0 && value <= 48000.0; break;
      case SweepParameter::kFactor:
        ok = ok && value >= 1.0 && value <= 200.0 && value == std::round(value);
        break;
      case SweepParameter::kSnrDb: ok = ok && value >= -10.0 && value <= 60.0; break;
      case SweepParameter::kWindowMs: ok = ok && value >= 1.0 && value <= 16.0; break;
      case SweepParameter::kHalfWidth:
        ok = ok && value >= 1.0 && value == std::round(value) &&
             value <= static_cast<double>(base.window_samples());
        break;
    }
    if (!ok) {
      invalid("sweep value " + std::to_string(value) + " outside the range of " +
              std::string(to_string(parameter)));
    }
  }
  base.validate();
}

std::vector<ErrorRow> summarize(const TrialResult& trial, double value) {
  std::vector<ErrorRow> rows;
  for (auto method : trial.methods) {
    ErrorRow row;
    row.value = value;
    row.method = method;
    row.toa = summary_or_nan(trial.toa_errors(method));
    row.tdoa = summary_or_nan(trial.tdoa_errors(method));
    row.position = summary_or_nan(trial.position_errors(method));
    row.failures = trial.failures(method);
    row.sources = trial.records.size() / trial.methods.size();
    rows.push_back(row);
  }
  return rows;
}

ErrorTable run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  ErrorTable table;
  table.parameter = spec.parameter;
  for (std::size_t g = 0; g < spec.grid.size(); ++g) {
    auto cfg = apply_parameter(spec.base, spec.parameter, spec.grid[g]);
    cfg.seed = mix_seed(spec.base.seed, g);
    const auto trial = run_trial(cfg, spec.methods, threads);
    const auto rows = summarize(trial, spec.grid[g]);
    table.rows.insert(table.rows.end(), rows.begin(), rows.end());
  }
  return table;
}

}  // namespace subtde::scenario
