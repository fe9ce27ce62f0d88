// Copyright 2026 The Liouville Authors
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

#ifndef LIOUVILLE_RNG_HPP
#define LIOUVILLE_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace liouville {

// Independent random sub-streams carved out of one user seed.  Each
// (replicate, purpose) pair owns a counter-based stream, so replicate r
// draws the same field no matter how many path variates were consumed.
enum class StreamPurpose : std::uint64_t {
  kField = 0,
  kPath = 1,
  kAux = 2,
  kMisc = 3,
};

inline std::uint64_t stream_id(std::uint64_t replicate, StreamPurpose purpose) {
  return replicate * 4 + static_cast<std::uint64_t>(purpose);
}

// Philox4x64-10 counter-based generator.  Output sequence for a given
// (key, counter) matches the reference implementation bit for bit: the
// 256-bit counter is incremented before each 4-word block is produced.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream)
      : key_{seed, stream}, ctr_{0, 0, 0, 0} {}

  Philox(std::array<std::uint64_t, 2> key, std::array<std::uint64_t, 4> counter)
      : key_(key), ctr_(counter) {}

  std::uint64_t next_u64() {
    if (buffer_pos_ == 4) {
      increment_counter();
      buffer_ = block(ctr_, key_);
      buffer_pos_ = 0;
    }
    return buffer_[buffer_pos_++];
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the second deviate of each pair is
  // cached.  The radial uniform lies in (0, 1] so log() never sees zero.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  static std::array<std::uint64_t, 4> block(
      const std::array<std::uint64_t, 4>& counter,
      const std::array<std::uint64_t, 2>& key) {
    std::array<std::uint64_t, 4> c = counter;
    std::array<std::uint64_t, 2> k = key;
    c = round_once(c, k);
    for (int i = 0; i < 9; ++i) {
      k[0] += 0x9E3779B97F4A7C15ULL;
      k[1] += 0xBB67AE8584CAA73BULL;
      c = round_once(c, k);
    }
    return c;
  }

 private:
  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t* hi,
                      std::uint64_t* lo) {
    unsigned __int128 p =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    *hi = static_cast<std::uint64_t>(p >> 64);
    *lo = static_cast<std::uint64_t>(p);
  }

  static std::array<std::uint64_t, 4> round_once(
      const std::array<std::uint64_t, 4>& c,
      const std::array<std::uint64_t, 2>& k) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(0xD2E7470EE14C6C93ULL, c[0], &hi0, &lo0);
    mulhilo(0xCA5A826395121157ULL, c[2], &hi1, &lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  void increment_counter() {
    for (int i = 0; i < 4; ++i) {
      if (++ctr_[i] != 0) break;
    }
  }

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> ctr_;
  std::array<std::uint64_t, 4> buffer_{};
  int buffer_pos_ = 4;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace liouville

#endif  // LIOUVILLE_RNG_HPP
