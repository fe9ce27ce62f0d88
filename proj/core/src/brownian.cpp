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

#include "liouville/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "liouville/errors.hpp"
#include "liouville/rng.hpp"

namespace liouville {

BrownianPath sample_path(const DomainSpec& domain, Point start, double dt,
                         double max_time, std::uint64_t seed,
                         std::uint64_t replicate) {
  validate_domain(domain);
  if (!(dt > 0.0)) {
    throw_invalid("invalid-dt", "time step must be positive");
  }
  if (max_time < 0.0) {
    throw_invalid("invalid-duration", "max_time must be nonnegative");
  }
  if (dist_to_boundary(domain, start) <= domain.inner_margin) {
    throw_invalid("start-too-close-to-boundary",
                  "start must be interior beyond the stopping margin");
  }
  auto n_steps = static_cast<std::int64_t>(std::llround(max_time / dt));
  BrownianPath path;
  path.start = start;
  path.dt = dt;
  path.seed = seed;
  path.replicate = replicate;
  path.positions.reserve(static_cast<std::size_t>(n_steps) + 1);
  path.positions.push_back(start);
  Philox rng(seed, stream_id(replicate, StreamPurpose::kPath));
  double sigma = std::sqrt(dt);
  Point z = start;
  std::int64_t stop = -1;
  for (std::int64_t i = 1; i <= n_steps; ++i) {
    double dx = rng.normal() * sigma;
    double dy = rng.normal() * sigma;
    z += Point(dx, dy);
    path.positions.push_back(z);
    if (stop < 0 && dist_to_boundary(domain, z) <= domain.inner_margin) {
      stop = i;
    }
  }
  path.stop_index = (stop >= 0) ? stop : n_steps;
  return path;
}

Point position_at(const BrownianPath& path, double t) {
  if (t <= 0.0) return path.positions.front();
  double u = t / path.dt;
  auto i = static_cast<std::int64_t>(u);
  if (i >= path.n_steps()) return path.positions.back();
  double f = u - static_cast<double>(i);
  const Point& a = path.positions[static_cast<std::size_t>(i)];
  const Point& b = path.positions[static_cast<std::size_t>(i) + 1];
  return a + f * (b - a);
}

namespace {

std::vector<Point> net_positions(const BrownianPath& path, int k,
                                 double s_offset, bool* partial) {
  if (k < 1 || k > 30) {
    throw_invalid("invalid-net-level", "net level k must lie in [1, 30]");
  }
  double spacing = std::ldexp(1.0, -2 * k);
  if (!(s_offset >= 0.0 && s_offset < spacing)) {
    throw_invalid("invalid-offset",
                  "s_offset must lie in [0, net spacing)");
  }
  if (spacing < path.dt) {
    throw_numerical("net-finer-than-path",
                    "net spacing is below the path resolution");
  }
  double horizon = std::min(1.0, path.duration());
  if (partial != nullptr) *partial = path.duration() < 1.0;
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(horizon / spacing) + 2);
  for (std::int64_t j = 0;; ++j) {
    double t = s_offset + static_cast<double>(j) * spacing;
    if (t > horizon) break;
    pts.push_back(position_at(path, t));
  }
  return pts;
}

}  // namespace

std::int64_t pair_count(const BrownianPath& path, int k, double s_offset,
                        bool* partial) {
  std::vector<Point> pts = net_positions(path, k, s_offset, partial);
  double eps = std::ldexp(1.0, -k);
  // Bucket by cells of side eps; any pair within eps sits in the same or
  // an adjacent cell.
  std::unordered_map<std::int64_t, std::vector<std::int32_t>> cells;
  cells.reserve(pts.size() * 2);
  auto cell_of = [eps](Point p) {
    auto qx = static_cast<std::int64_t>(std::floor(p.real() / eps));
    auto qy = static_cast<std::int64_t>(std::floor(p.imag() / eps));
    return std::pair<std::int64_t, std::int64_t>(qx, qy);
  };
  auto key = [](std::int64_t qx, std::int64_t qy) {
    return (qx + (1LL << 31)) * (1LL << 33) + (qy + (1LL << 31));
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto [qx, qy] = cell_of(pts[i]);
    cells[key(qx, qy)].push_back(static_cast<std::int32_t>(i));
  }
  double eps2 = eps * eps;
  std::int64_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto [qx, qy] = cell_of(pts[i]);
    for (std::int64_t ax = qx - 1; ax <= qx + 1; ++ax) {
      for (std::int64_t ay = qy - 1; ay <= qy + 1; ++ay) {
        auto it = cells.find(key(ax, ay));
        if (it == cells.end()) continue;
        for (std::int32_t j : it->second) {
          if (std::norm(pts[i] - pts[static_cast<std::size_t>(j)]) <= eps2) {
            ++count;
          }
        }
      }
    }
  }
  return count;
}

std::int64_t pair_count_brute(const BrownianPath& path, int k,
                              double s_offset, bool* partial) {
  std::vector<Point> pts = net_positions(path, k, s_offset, partial);
  double eps2 = std::ldexp(1.0, -k) * std::ldexp(1.0, -k);
  std::int64_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (std::norm(pts[i] - pts[j]) <= eps2) ++count;
    }
  }
  return count;
}

double modulus_of_continuity(const BrownianPath& path, double lag) {
  if (lag < path.dt) {
    throw_invalid("invalid-lag", "lag must be at least the path step");
  }
  auto shift = static_cast<std::int64_t>(lag / path.dt);
  if (shift > path.n_steps()) {
    throw_invalid("lag-exceeds-duration",
                  "lag is longer than the sampled path");
  }
  double sup = 0.0;
  for (std::size_t i = 0; i + static_cast<std::size_t>(shift) <
                          path.positions.size();
       ++i) {
    sup = std::max(
        sup, std::abs(path.positions[i + static_cast<std::size_t>(shift)] -
                      path.positions[i]));
  }
  return sup;
}

}  // namespace liouville
