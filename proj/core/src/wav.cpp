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

#include "subtde/wav.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "subtde/errors.hpp"

namespace subtde::wav {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

[[noreturn]] void bad(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorCode::kFormatError, path.string() + ": " + what);
}

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

double decode(const unsigned char* p, std::uint16_t tag, std::uint16_t bits) {
  if (tag == kFormatFloat) {
    if (bits == 32) return static_cast<double>(std::bit_cast<float>(le32(p)));
    std::uint64_t raw = 0;
    for (int i = 7; i >= 0; --i) raw = (raw << 8) | p[i];
    return std::bit_cast<double>(raw);
  }
  switch (bits) {
    case 8: return (static_cast<double>(p[0]) - 128.0) / 128.0;
    case 16: return static_cast<std::int16_t>(le16(p)) / 32768.0;
    case 24: {
      std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    case 32: return static_cast<std::int32_t>(le32(p)) / 2147483648.0;
    default: return 0.0;
  }
}

}  // namespace

Audio read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad(path, "cannot open");
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < 12 || std::memcmp(data, "RIFF", 4) != 0 ||
      std::memcmp(data + 8, "WAVE", 4) != 0) {
    bad(path, "not a RIFF/WAVE file");
  }

  std::uint16_t tag = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* payload = nullptr;
  std::size_t payload_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = data + pos;
    const std::size_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = std::min(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (available < 16) bad(path, "truncated fmt chunk");
      tag = le16(chunk + 8);
      channels = le16(chunk + 10);
      rate = le32(chunk + 12);
      bits = le16(chunk + 22);
      if (tag == kFormatExtensible) {
        if (available < 26) bad(path, "truncated extensible fmt chunk");
        tag = le16(chunk + 32);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      payload = chunk + 8;
      payload_size = available;
    }
    pos = body + size + (size & 1U);
  }

  if (channels == 0 || rate == 0) bad(path, "missing or empty fmt chunk");
  const bool pcm_ok = tag == kFormatPcm && (bits == 8 || bits == 16 || bits == 24 || bits == 32);
  const bool float_ok = tag == kFormatFloat && (bits == 32 || bits == 64);
  if (!pcm_ok && !float_ok) {
    bad(path, "unsupported sample format " + std::to_string(tag) + "/" +
                  std::to_string(bits) + " bit");
  }
  if (payload == nullptr || payload_size == 0) bad(path, "no audio samples");

  const std::size_t width = bits / 8U;
  const std::size_t frame = width * channels;
  const std::size_t frames = payload_size / frame;
  if (frames == 0) bad(path, "no complete audio frames");

  Audio audio;
  audio.rate_hz = rate;
  audio.channels.assign(channels, std::vector<double>(frames));
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double v = decode(payload + f * frame + c * width, tag, bits);
      if (!std::isfinite(v)) bad(path, "non-finite sample");
      audio.channels[c][f] = v;
    }
  }
  return audio;
}

void write(const std::filesystem::path& path, const Audio& audio,
           SampleFormat format) {
  if (audio.channels.empty() || !(audio.rate_hz > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "audio needs channels and a rate");
  }
  const std::size_t frames = audio.frames();
  for (const auto& ch : audio.channels) {
    if (ch.size() != frames) {
      throw Error(ErrorCode::kInvalidArgument, "channels differ in length");
    }
  }
  std::uint16_t bits = 32;
  std::uint16_t tag = kFormatPcm;
  switch (format) {
    case SampleFormat::kPcm16: bits = 16; break;
    case SampleFormat::kPcm24: bits = 24; break;
    case SampleFormat::kPcm32: bits = 32; break;
    case SampleFormat::kFloat32: bits = 32; tag = kFormatFloat; break;
  }
  const auto channels = static_cast<std::uint16_t>(audio.channels.size());
  const std::uint32_t width = bits / 8U;
  const auto data_size = static_cast<std::uint32_t>(frames * channels * width);
  const auto rate = static_cast<std::uint32_t>(std::lround(audio.rate_hz));

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put32(out, 36 + data_size);
  out += "WAVEfmt ";
  put32(out, 16);
  put16(out, tag);
  put16(out, channels);
  put32(out, rate);
  put32(out, rate * channels * width);
  put16(out, static_cast<std::uint16_t>(channels * width));
  put16(out, bits);
  out += "data";
  put32(out, data_size);

  for (std::size_t f = 0; f < frames; ++f) {
    for (const auto& ch : audio.channels) {
      const double v = std::clamp(ch[f], -1.0, 1.0);
      if (tag == kFormatFloat) {
        put32(out, std::bit_cast<std::uint32_t>(static_cast<float>(ch[f])));
        continue;
      }
      const double full = std::ldexp(1.0, bits - 1);
      const auto q = static_cast<std::int64_t>(
          std::clamp(std::round(v * full), -full, full - 1.0));
      const auto u = static_cast<std::uint32_t>(q);
      for (std::uint32_t b = 0; b < width; ++b) {
        out.push_back(static_cast<char>((u >> (8 * b)) & 0xFF));
      }
    }
  }
  if (data_size & 1U) out.push_back('\0');

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kFormatError, path.string() + ": cannot write");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorCode::kFormatError, path.string() + ": write failed");
}

}  // namespace subtde::wav
