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

#ifndef LIOUVILLE_MODES_HPP
#define LIOUVILLE_MODES_HPP

#include <cstdint>
#include <vector>

namespace liouville {

// Dirichlet Laplacian modes on a square are indexed by integer pairs
// (m, n) with m, n >= 1 and eigenvalue proportional to s = m^2 + n^2.
// A truncation of size `count` keeps the first `count` pairs in the
// total order (s, m, n): every pair with s < s_full, plus the first
// tie_take pairs of the s == s_full class in lexicographic (m, n) order.
struct ModeCutoff {
  std::int64_t s_full = 0;
  std::int64_t tie_take = 0;
};

ModeCutoff mode_cutoff(std::int64_t count);

// Number of pairs (m, n), m, n >= 1, with m^2 + n^2 <= s.
std::int64_t mode_count_below(std::int64_t s);

struct ModeTable {
  std::vector<std::int32_t> m;
  std::vector<std::int32_t> n;
};

// Explicit (m, n) list for the first `count` modes in (s, m, n) order.
ModeTable mode_table(std::int64_t count);

// floor(sqrt(v)) for v >= 0, exact for all int64 inputs.
std::int64_t isqrt64(std::int64_t v);

}  // namespace liouville

#endif  // LIOUVILLE_MODES_HPP
