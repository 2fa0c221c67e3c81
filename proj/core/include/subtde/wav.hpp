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

#ifndef SUBTDE_WAV_HPP_
#define SUBTDE_WAV_HPP_

#include <filesystem>
#include <vector>

namespace subtde::wav {

enum class SampleFormat { kPcm16, kPcm24, kPcm32, kFloat32 };

/// De-interleaved audio, samples in [-1, 1].
struct Audio {
  std::vector<std::vector<double>> channels;
  double rate_hz = 0.0;

  std::size_t frames() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

/// Reads RIFF/WAVE (PCM 16/24/32-bit, IEEE float32, WAVE_FORMAT_EXTENSIBLE).
/// Throws kFormatError on anything else or on an empty file.
Audio read(const std::filesystem::path& path);

void write(const std::filesystem::path& path, const Audio& audio,
           SampleFormat format = SampleFormat::kFloat32);

}  // namespace subtde::wav

#endif  // SUBTDE_WAV_HPP_
