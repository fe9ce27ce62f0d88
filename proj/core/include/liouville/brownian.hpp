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

#ifndef LIOUVILLE_BROWNIAN_HPP
#define LIOUVILLE_BROWNIAN_HPP

#include <cstdint>
#include <vector>

#include "liouville/geometry.hpp"

namespace liouville {

// Discretized planar Brownian motion.  positions holds the full sampled
// trajectory on [0, n_steps * dt]; stop_index marks the first sample at
// distance <= inner_margin from the boundary (the discrete stopping time),
// or n_steps when the margin is never reached.  Field integrations stop at
// stop_index; pure path statistics read the whole array.
struct BrownianPath {
  Point start{0.0, 0.0};
  double dt = 0.0;
  std::vector<Point> positions;
  std::int64_t stop_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;

  std::int64_t n_steps() const {
    return static_cast<std::int64_t>(positions.size()) - 1;
  }
  double duration() const { return static_cast<double>(n_steps()) * dt; }
  double stop_time() const { return static_cast<double>(stop_index) * dt; }
};

// Gaussian increments of per-coordinate variance dt, deterministic per
// (seed, replicate).  start must be interior with distance to the boundary
// above inner_margin.
BrownianPath sample_path(const DomainSpec& domain, Point start, double dt,
                         double max_time, std::uint64_t seed,
                         std::uint64_t replicate = 0);

// Position at Euclidean time t, linearly interpolated on the polyline and
// clamped to the sampled range.
Point position_at(const BrownianPath& path, double t);

// Number of ordered pairs (t, t') in the dyadic net
// {s_offset + j 4^-k} cap [0, min(1, duration)] with |B_t - B_t'| <= 2^-k.
// Diagonal pairs count, so the result is at least the net size.  partial
// (when non-null) reports whether the path covered less than [0, 1].
std::int64_t pair_count(const BrownianPath& path, int k, double s_offset,
                        bool* partial = nullptr);

// Reference quadratic-time implementation, kept as an oracle for the
// cell-grid version.
std::int64_t pair_count_brute(const BrownianPath& path, int k,
                              double s_offset, bool* partial = nullptr);

// sup_i |positions[i + floor(lag/dt)] - positions[i]| over the full array.
double modulus_of_continuity(const BrownianPath& path, double lag);

}  // namespace liouville

#endif  // LIOUVILLE_BROWNIAN_HPP
