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

#include "subtde/tde.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "subtde/errors.hpp"
#include "subtde/signals.hpp"

namespace subtde::tde {
namespace {

constexpr double kRate = 8000.0;

SampledSignal pulse_at(double t0, double ratio, std::size_t length = 400) {
  return signals::synth_reflection({t0 / kRate, 1.0, ratio * kRate}, kRate, length);
}

TEST(MatchedFilter, ImpulseKernelIsIdentity) {
  const SampledSignal x({0.3, -1.0, 0.5, 0.25, 0.0, 2.0}, kRate);
  EXPECT_EQ(matched_filter(x, SampledSignal::impulse(1, 0, kRate)).vector(), x.vector());
}

TEST(MatchedFilter, AutocorrelationPeak) {
  std::vector<double> k{0.5, 0.5, 0.5, 0.5};
  const SampledSignal kernel(k, kRate);
  std::vector<double> m(20, 0.0);
  for (std::size_t i = 0; i < 4; ++i) m[6 + i] = k[i];
  const auto h = matched_filter(SampledSignal(m, kRate), kernel);
  EXPECT_EQ(argmax_abs(h.samples()), 6u);
  EXPECT_DOUBLE_EQ(h[6], 1.0);
  // correlation, not convolution: an asymmetric kernel still peaks at the event
  const SampledSignal ramp({0.1, 0.2, 0.9}, kRate);
  std::vector<double> r(12, 0.0);
  r[3] = 0.1;
  r[4] = 0.2;
  r[5] = 0.9;
  EXPECT_EQ(argmax_abs(matched_filter(SampledSignal(r, kRate), ramp).samples()), 3u);
}

TEST(MatchedFilter, BandLimitedDelayRecovered) {
  // kernel: the pulse itself, with its peak as time origin
  const auto ref = pulse_at(50.0, 0.4);
  std::vector<double> k(ref.vector().begin() + 34, ref.vector().begin() + 67);
  const SampledSignal kernel(k, kRate);
  const auto measured = pulse_at(50.0 + 12.4, 0.4);
  const auto h = matched_filter(measured, kernel, 16);
  const auto frame = sliding_window(h, 62, 32);
  const auto est = estimate_toa(frame, {interp::Method::kWhittakerShannon, 9, 200});
  EXPECT_NEAR(est.seconds * kRate, 62.4, 0.05);
}

TEST(MatchedFilter, Errors) {
  const auto x = SampledSignal::impulse(4, 0, kRate);
  try {
    matched_filter(x, SampledSignal({}, kRate));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyKernel);
  }
  EXPECT_THROW(matched_filter(x, SampledSignal::zeros(5, kRate)), Error);
}

TEST(SlidingWindow, Examples) {
  std::vector<double> v(64);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  const SampledSignal h(v, kRate);
  const auto f = sliding_window(h, 20, 8);
  EXPECT_EQ(f.origin(), 16);
  EXPECT_EQ(f.samples, (std::vector<double>{16, 17, 18, 19, 20, 21, 22, 23}));
  EXPECT_FALSE(f.zero_padded);

  const auto imp = sliding_window(SampledSignal::impulse(64, 30, kRate), 30, 16, WindowShape::kHann);
  EXPECT_DOUBLE_EQ(imp.samples[8], 1.0);

  const auto edge = sliding_window(h, 2, 8);
  EXPECT_TRUE(edge.zero_padded);
  EXPECT_EQ(edge.samples[0], 0.0);
  EXPECT_EQ(edge.samples[2], 0.0);
  EXPECT_EQ(edge.samples[3], 1.0);
}

TEST(FrameSet, SharedLength) {
  const std::vector<SampledSignal> s{pulse_at(30, 0.5), pulse_at(31, 0.5)};
  const auto set = make_frame_set(s, 30, 16);
  ASSERT_EQ(set.frames.size(), 2u);
  for (const auto& f : set.frames) EXPECT_EQ(f.length(), 16u);
}

TEST(Xcorr, SignConventionAndIntegerLags) {
  std::vector<double> a(16, 0.0), b(16, 0.0);
  a[8] = 1.0;
  b[11] = 1.0;
  const auto r = xcorr(a, b);
  ASSERT_EQ(r.size(), 31u);
  EXPECT_EQ(argmax_abs(r), 15u + 3u);  // lag +3: b is later
  const auto same = xcorr(a, a);
  EXPECT_EQ(argmax_abs(same), 15u);
}

TEST(Xcorr, DirectAndFftAgree) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (std::size_t n : {5u, 64u, 300u}) {
    std::vector<double> a(n), b(n);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    const auto d = xcorr_direct(a, b);
    const auto f = xcorr_fft(a, b);
    double scale = 0.0;
    for (double v : d) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(f[i], d[i], 1e-10 * scale);
  }
}

TEST(Xcorr, ClosedFormSincShape) {
  // ideal critically sampled pulses, sampled directly
  const double tm = 200.3, tn = 201.05;
  std::vector<double> va(700), vb(700);
  for (std::size_t i = 0; i < 700; ++i) {
    va[i] = oracle::sinc(static_cast<double>(i) - tm);
    vb[i] = oracle::sinc(static_cast<double>(i) - tn);
  }
  const SampledSignal a(va, kRate), b(vb, kRate);
  const auto fa = sliding_window(a, 200, 256);
  const auto fb = sliding_window(b, 200, 256);
  const auto r = xcorr(fa.samples, fb.samples);
  const double tau = tn - tm;
  std::vector<double> got, want;
  for (long l = -3; l <= 4; ++l) {
    got.push_back(r[static_cast<std::size_t>(l + 255)]);
    want.push_back(oracle::sinc(l - tau));
  }
  EXPECT_GE(oracle::cosine_similarity(got, want), 0.999);
  EXPECT_DOUBLE_EQ(estimate_tdoa(fa, fb, {}).seconds * kRate, 1.0);
}

TEST(EstimateToa, CenteredPulse) {
  const auto f = sliding_window(pulse_at(100, 0.5), 100, 32);
  EXPECT_DOUBLE_EQ(estimate_toa(f, {interp::Method::kNone, 1, 200}).seconds, 100.0 / kRate);
}

TEST(EstimateToa, BandLimitedSubsample) {
  const auto f = sliding_window(pulse_at(100.3, 0.4), 100, 32);
  const auto est = estimate_toa(f, {interp::Method::kWhittakerShannon, 9, 200});
  EXPECT_NEAR(est.seconds * kRate, 100.3, 0.01);
}

TEST(EstimateToa, StrongerPulseWins) {
  std::vector<double> v(64, 0.0);
  v[20] = 0.5;
  v[40] = -0.9;
  const auto f = sliding_window(SampledSignal(v, kRate), 32, 64);
  EXPECT_DOUBLE_EQ(estimate_toa(f, {}).seconds, 40.0 / kRate);
}

TEST(EstimateToa, ZeroFrameRejected) {
  const auto f = sliding_window(SampledSignal::zeros(64, kRate), 32, 16);
  EXPECT_THROW(estimate_toa(f, {}), Error);
}

TEST(EstimateTdoa, Examples) {
  const auto a = pulse_at(100.0, 0.4);
  const auto b = pulse_at(102.5, 0.4);
  const auto fa = sliding_window(a, 101, 32);
  const auto fb = sliding_window(b, 101, 32);
  const interp::InterpConfig ws{interp::Method::kWhittakerShannon, 9, 200};
  EXPECT_EQ(estimate_tdoa(fa, fa, ws).seconds, 0.0);
  EXPECT_NEAR(estimate_tdoa(fa, fb, ws).seconds * kRate, 2.5, 0.01);
  EXPECT_NEAR(estimate_tdoa(fb, fa, ws).seconds * kRate, -2.5, 0.01);
}

TEST(EstimateTdoa, AntisymmetryAllMethods) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = pulse_at(100.0 + u(rng), trial % 2 ? 0.4 : 0.5);
    const auto b = pulse_at(100.0 + u(rng), trial % 2 ? 0.4 : 0.5);
    const auto fa = sliding_window(a, 100, 32);
    const auto fb = sliding_window(b, 100, 32);
    for (auto m : interp::kAllMethods) {
      const interp::InterpConfig cfg{m, 9, 200};
      const double sum = estimate_tdoa(fa, fb, cfg).seconds + estimate_tdoa(fb, fa, cfg).seconds;
      EXPECT_LE(std::abs(sum) * kRate, 2.0 / 200 + 1e-9) << interp::to_string(m);
    }
  }
}

TEST(EstimateTdoa, IntegerShiftExactPeak) {
  for (int shift : {-5, -1, 0, 2, 7}) {
    const auto a = pulse_at(100.0, 0.4);
    const auto b = pulse_at(100.0 + shift, 0.4);
    const auto fa = sliding_window(a, 100, 48);
    const auto fb = sliding_window(b, 100, 48);
    EXPECT_DOUBLE_EQ(estimate_tdoa(fa, fb, {}).seconds * kRate, shift);
  }
}

TEST(MatchedFilter, DoesNotDegradeWsToa) {
  for (double frac : {-0.4, -0.1, 0.2, 0.45}) {
    const auto x = pulse_at(100.0 + frac, 0.4);
    const auto ref = pulse_at(50.0, 0.4);
    std::vector<double> k(ref.vector().begin() + 34, ref.vector().begin() + 67);
    const auto h = matched_filter(x, SampledSignal(k, kRate), 16);
    const interp::InterpConfig ws{interp::Method::kWhittakerShannon, 9, 200};
    const double before = std::abs(estimate_toa(sliding_window(x, 100, 32), ws).seconds * kRate - (100.0 + frac));
    const double after = std::abs(estimate_toa(sliding_window(h, 100, 32), ws).seconds * kRate - (100.0 + frac));
    EXPECT_LE(after, before + 0.005) << frac;
  }
}

TEST(WindowShape, Names) {
  EXPECT_EQ(parse_window_shape("hann"), WindowShape::kHann);
  EXPECT_EQ(parse_window_shape(to_string(WindowShape::kRectangular)), WindowShape::kRectangular);
  EXPECT_FALSE(parse_window_shape("kaiser"));
}

}  // namespace
}  // namespace subtde::tde
