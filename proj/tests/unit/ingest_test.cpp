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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fixture.hpp"
#include "oracles.hpp"
#include "subtde/errors.hpp"
#include "subtde/signals.hpp"
#include "subtde/wav.hpp"

namespace subtde::ingest {
namespace {

namespace fs = std::filesystem;

class IngestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("subtde_ingest_" + std::string(::testing::UnitTest::GetInstance()
                                               ->current_test_info()
                                               ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

// Sub-sample peak of a band-limited record by dense evaluation of the
// truncated reconstruction sum.
double dense_peak(const std::vector<double>& x) {
  const std::size_t k0 = argmax_abs(x);
  double best = 0.0, arg = 0.0;
  for (int i = -1000; i <= 1000; ++i) {
    const double d = i / 1000.0;
    const double v = std::abs(oracle::ws_sum(x, k0, 12, d));
    if (v > best) {
      best = v;
      arg = d;
    }
  }
  return static_cast<double>(k0) + arg;
}

TEST_F(IngestTest, WavRoundTrip) {
  wav::Audio a;
  a.rate_hz = 16000;
  a.channels = {{0.0, 0.5, -0.5, 0.999, -1.0}, {0.25, -0.25, 0.125, 0.0, 0.75}};
  for (auto [fmt, tol] : {std::pair{wav::SampleFormat::kFloat32, 1e-7},
                          std::pair{wav::SampleFormat::kPcm16, 1.0 / 32767},
                          std::pair{wav::SampleFormat::kPcm24, 1.0 / 8388607},
                          std::pair{wav::SampleFormat::kPcm32, 1e-9}}) {
    const auto p = dir_ / "a.wav";
    wav::write(p, a, fmt);
    const auto b = wav::read(p);
    ASSERT_EQ(b.channels.size(), 2u);
    EXPECT_EQ(b.rate_hz, 16000.0);
    ASSERT_EQ(b.frames(), 5u);
    for (std::size_t c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(b.channels[c][i], a.channels[c][i], tol);
    }
  }
}

TEST_F(IngestTest, LoadMeasurement) {
  const auto m = fixture::write(dir_, false);
  const auto set = load_measurement(m.audio, m.geometry);
  EXPECT_EQ(set.rirs.size(), 8u);
  EXPECT_EQ(set.geometry.size(), 8u);
  EXPECT_EQ(set.geometry.dimension(), 2);  // equal heights: planar
  EXPECT_EQ(set.rate_hz, 48000.0);
  EXPECT_EQ(set.source_label, "fixture");
}

TEST_F(IngestTest, GeometryMismatch) {
  const auto m = fixture::write(dir_, false, 8, 6);
  EXPECT_EQ(code_of([&] { load_measurement(m.audio, m.geometry); }),
            ErrorCode::kGeometryMismatch);
}

TEST_F(IngestTest, EmptyFile) {
  const auto m = fixture::write(dir_, false);
  std::ofstream(dir_ / "empty.wav").close();
  EXPECT_EQ(code_of([&] { load_measurement(dir_ / "empty.wav", m.geometry); }),
            ErrorCode::kFormatError);
  std::ofstream(dir_ / "bad.json") << "{\"sensors\": 3}";
  EXPECT_EQ(code_of([&] { load_measurement(m.audio, dir_ / "bad.json"); }),
            ErrorCode::kFormatError);
}

TEST(MatchedFilterKernel, MatchesDirectPulse) {
  const double rate = 48000.0;
  std::vector<double> rir(2000, 0.0), direct(2000, 0.0);
  const auto d = signals::render_pulse({0.004 + 0.3 / rate, 1.0, 3200.0}, rate);
  signals::accumulate(rir, d);
  signals::accumulate(direct, d);
  signals::accumulate(rir, signals::render_pulse({0.012, 0.5, 3200.0}, rate));
  const auto k = estimate_matched_filter(SampledSignal(rir, rate), 96);
  ASSERT_EQ(k.kernel.size(), 96u);
  const long start = static_cast<long>(k.direct_index) - k.origin;
  std::vector<double> ref(direct.begin() + start, direct.begin() + start + 96);
  EXPECT_GE(oracle::cosine_similarity(k.kernel.vector(), ref), 0.999);
  EXPECT_NEAR(k.kernel.energy(), 1.0, 1e-12);
  const auto ac = tde::xcorr(k.kernel.samples(), k.kernel.samples());
  EXPECT_EQ(argmax_abs(ac), 95u);
  // compensated signal peaks at the direct path
  EXPECT_EQ(argmax_abs(compensate(SampledSignal(rir, rate), k).samples()), k.direct_index);
}

TEST(MatchedFilterKernel, NoPeak) {
  EXPECT_EQ(code_of([] { estimate_matched_filter(SampledSignal::zeros(100, 8000), 16); }),
            ErrorCode::kNoPeak);
}

TEST(PickPeaks, Examples) {
  std::vector<double> x(400, 0.0);
  x[40] = 1.0;
  x[120] = -0.7;
  x[250] = 0.5;
  x[330] = 0.3;
  const SampledSignal s(x, 8000);
  EXPECT_EQ(pick_peaks(s, 4, 16), (PeakList{40, 120, 250, 330}));
  x[50] = 0.9;  // inside the separation of the stronger peak at 40
  EXPECT_EQ(pick_peaks(SampledSignal(x, 8000), 4, 16), (PeakList{40, 120, 250, 330}));
  std::vector<double> three(200, 0.0);
  three[20] = 1.0;
  three[80] = 1.0;
  three[150] = 1.0;
  EXPECT_EQ(code_of([&] { pick_peaks(SampledSignal(three, 8000), 5, 16); }),
            ErrorCode::kInsufficientPeaks);
}

TEST(PickPeaks, OrderIndependent) {
  // equal magnitudes: the result depends only on the rule
  std::vector<double> x(200, 0.0);
  x[30] = 1.0;
  x[40] = -1.0;
  x[120] = 0.5;
  const auto a = pick_peaks(SampledSignal(x, 8000), 2, 16);
  std::vector<double> r(x.rbegin(), x.rend());
  const auto b = pick_peaks(SampledSignal(r, 8000), 2, 16);
  // ties go to the earlier index
  EXPECT_EQ(a, (PeakList{30, 120}));
  EXPECT_EQ(b, (PeakList{79, 159}));
  EXPECT_EQ(pick_peaks(SampledSignal(x, 8000), 2, 16), a);
}

TEST(Downsample, IdentityAndRate) {
  const SampledSignal s({1, 2, 3, 4}, 48000);
  EXPECT_EQ(downsample(s, 1).vector(), s.vector());
  EXPECT_EQ(downsample(SampledSignal::zeros(600, 48000), 6).rate_hz(), 8000.0);
  EXPECT_EQ(downsample(SampledSignal::zeros(600, 48000), 6).size(), 100u);
  EXPECT_EQ(code_of([&] { downsample(s, 0); }), ErrorCode::kInvalidFactor);
}

TEST(Downsample, PulsePositionKept) {
  for (double t0 : {0.010, 0.010 + 0.37 / 48000, 0.0101}) {
    const auto x = signals::synth_reflection({t0, 1.0, 3200.0}, 48000, 1200);
    const auto y = downsample(x, 6);
    EXPECT_NEAR(dense_peak(y.vector()) / 8000.0, t0, 0.02e-3);
  }
}

TEST(Downsample, EventSpacingKept) {
  std::vector<double> x(4800, 0.0);
  for (double t : {0.011, 0.0245, 0.0602, 0.0833}) {
    signals::accumulate(x, signals::render_pulse({t, 1.0, 3200.0}, 48000));
  }
  const auto full = pick_peaks(SampledSignal(x, 48000), 4, 96);
  const auto low = pick_peaks(downsample(SampledSignal(x, 48000), 6), 4, 16);
  for (std::size_t i = 1; i < 4; ++i) {
    const double a = static_cast<double>(full[i] - full[i - 1]) / 6.0;
    const double b = static_cast<double>(low[i] - low[i - 1]);
    EXPECT_LE(std::abs(a - b), 1.0);
  }
}

TEST_F(IngestTest, ReferenceTdoaWithinHalfSample) {
  const auto m = fixture::write(dir_, true);
  const auto set = load_measurement(m.audio, m.geometry);
  const auto truth = ground_truth_pipeline(set);
  EXPECT_EQ(truth.window_samples, 96u);
  ASSERT_EQ(truth.events.size(), 4u);
  const auto pairs = locate::sensor_pairs(8);
  for (std::size_t e = 0; e < 4; ++e) {
    ASSERT_EQ(truth.events[e].tdoas.size(), pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const double want = m.tdoa(e, pairs[p].first, pairs[p].second);
      EXPECT_LE(std::abs(truth.events[e].tdoas[p] - want) * 48000, 0.5 + 1e-9)
          << "event " << e << " pair " << p;
    }
  }
}

TEST_F(IngestTest, PlantedToasWithinOneSample) {
  const auto m = fixture::write(dir_, false);
  const auto truth = ground_truth_pipeline(load_measurement(m.audio, m.geometry));
  for (std::size_t e = 0; e < 4; ++e) {
    for (std::size_t n = 0; n < 8; ++n) {
      EXPECT_LE(std::abs(truth.events[e].toas[n] - m.toas[e][n]) * 48000, 1.0 + 1e-9);
    }
    EXPECT_TRUE(truth.events[e].position.has_value());
  }
}

TEST_F(IngestTest, EvaluateShapeAndDeterminism) {
  const auto m = fixture::write(dir_, false);
  const auto set = load_measurement(m.audio, m.geometry);
  const IngestOptions opt;
  const EvaluationOptions eval;
  const auto truth = ground_truth_pipeline(set, opt);
  const auto rows = evaluate_measurement(truth, set.geometry, opt, eval);
  ASSERT_EQ(rows.size(), 4u * 6u);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.failed) << r.failure;
    EXPECT_EQ(r.tdoa_errors.size(), 28u);
    EXPECT_TRUE(r.position_error_m.has_value());
    for (double err : r.tdoa_errors) EXPECT_LT(err, 2.0 / 8000);
  }
  const auto again = evaluate_measurement(ground_truth_pipeline(set, opt), set.geometry, opt, eval);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].tdoa_errors, again[i].tdoa_errors);

  EvaluationOptions odd = eval;
  odd.target_rate_hz = 7000;
  EXPECT_EQ(code_of([&] { evaluate_measurement(truth, set.geometry, opt, odd); }),
            ErrorCode::kInvalidFactor);
}

}  // namespace
}  // namespace subtde::ingest
