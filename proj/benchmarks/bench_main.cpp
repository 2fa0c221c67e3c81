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


#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "subtde/interp.hpp"
#include "subtde/scenario.hpp"
#include "subtde/signals.hpp"
#include "subtde/tde.hpp"

namespace {

using namespace subtde;

constexpr double kRate = 8000.0;

SampledSignal pulse(double at, std::size_t len) {
  return signals::synth_reflection({at / kRate, 1.0, 0.4 * kRate}, kRate, len);
}

void BM_FractionalDelay(benchmark::State& state) {
  const auto x = pulse(40.3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(signals::apply_fractional_delay(x, {24, 17.37}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FractionalDelay)->Arg(256)->Arg(4096);

void BM_Xcorr(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = pulse(40.0, n + 400), b = pulse(41.3, n + 400);
  for (auto _ : state) benchmark::DoNotOptimize(tde::xcorr(a.samples(), b.samples()));
}
BENCHMARK(BM_Xcorr)->RangeMultiplier(4)->Range(32, 2048);

void BM_Interpolate(benchmark::State& state) {
  const auto method = static_cast<interp::Method>(state.range(0));
  const auto y = pulse(100.27, 400);
  const auto frame = tde::sliding_window(y, 100, 32);
  const interp::InterpConfig cfg{method, method == interp::Method::kWhittakerShannon ? 9 : 1, 200};
  for (auto _ : state) benchmark::DoNotOptimize(tde::estimate_toa(frame, cfg));
  state.SetLabel(std::string(interp::to_string(method)));
}
BENCHMARK(BM_Interpolate)->DenseRange(0, 5);

void BM_Trial(benchmark::State& state) {
  scenario::ScenarioConfig cfg;
  cfg.num_sources = static_cast<int>(state.range(0));
  const std::vector<interp::Method> methods{interp::Method::kSinc,
                                            interp::Method::kWhittakerShannon};
  for (auto _ : state) benchmark::DoNotOptimize(scenario::run_trial(cfg, methods));
}
BENCHMARK(BM_Trial)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
