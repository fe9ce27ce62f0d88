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

#include "liouville/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/modes.hpp"

namespace liouville {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace

std::int64_t isqrt64(std::int64_t v) {
  if (v < 0) throw_invalid("invalid-argument", "isqrt64 of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::int64_t mode_count_below(std::int64_t s) {
  if (s < 2) return 0;
  std::int64_t mmax = isqrt64(s - 1);
  std::int64_t c = 0;
  for (std::int64_t m = 1; m <= mmax; ++m) c += isqrt64(s - m * m);
  return c;
}

ModeCutoff mode_cutoff(std::int64_t count) {
  if (count < 1) {
    throw_invalid("invalid-mode-count", "mode count must be at least 1");
  }
  std::int64_t hi = 2;
  while (mode_count_below(hi) < count) hi *= 2;
  std::int64_t lo = 2;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (mode_count_below(mid) >= count) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  ModeCutoff cut;
  cut.s_full = lo;
  cut.tie_take = count - mode_count_below(lo - 1);
  return cut;
}

ModeTable mode_table(std::int64_t count) {
  ModeCutoff cut = mode_cutoff(count);
  std::vector<std::pair<std::int32_t, std::int32_t>> mn;
  mn.reserve(static_cast<std::size_t>(mode_count_below(cut.s_full)));
  std::int64_t mmax = isqrt64(cut.s_full - 1);
  for (std::int64_t m = 1; m <= mmax; ++m) {
    std::int64_t nmax = isqrt64(cut.s_full - m * m);
    for (std::int64_t n = 1; n <= nmax; ++n) {
      mn.emplace_back(static_cast<std::int32_t>(m),
                      static_cast<std::int32_t>(n));
    }
  }
  std::sort(mn.begin(), mn.end(),
            [](const std::pair<std::int32_t, std::int32_t>& p,
               const std::pair<std::int32_t, std::int32_t>& q) {
              std::int64_t sp =
                  static_cast<std::int64_t>(p.first) * p.first +
                  static_cast<std::int64_t>(p.second) * p.second;
              std::int64_t sq =
                  static_cast<std::int64_t>(q.first) * q.first +
                  static_cast<std::int64_t>(q.second) * q.second;
              return std::make_tuple(sp, p.first, p.second) <
                     std::make_tuple(sq, q.first, q.second);
            });
  mn.resize(static_cast<std::size_t>(count));
  ModeTable table;
  table.m.reserve(mn.size());
  table.n.reserve(mn.size());
  for (const auto& p : mn) {
    table.m.push_back(p.first);
    table.n.push_back(p.second);
  }
  return table;
}

void validate_domain(const DomainSpec& domain) {
  if (!(domain.inner_margin > 0.0 && domain.inner_margin < 0.5)) {
    throw_invalid("invalid-margin", "inner_margin must lie in (0, 1/2)");
  }
  if (domain.grid_n < 16) {
    throw_invalid("invalid-grid", "grid_n must be at least 16");
  }
}

double dist_to_boundary(const DomainSpec& domain, Point z) {
  if (domain.kind == DomainKind::kUnitSquare) {
    double x = z.real();
    double y = z.imag();
    return std::min(std::min(x, 1.0 - x), std::min(y, 1.0 - y));
  }
  return 1.0 - std::abs(z);
}

bool is_interior(const DomainSpec& domain, Point z) {
  return dist_to_boundary(domain, z) > 0.0;
}

Point domain_center(const DomainSpec& domain) {
  if (domain.kind == DomainKind::kUnitSquare) return Point(0.5, 0.5);
  return Point(0.0, 0.0);
}

namespace {

// Spectral Green function of the unit square over the first n_modes modes
// in (m^2+n^2, m, n) order: (8/pi) sum sin(m pi x1) sin(n pi x2)
// sin(m pi y1) sin(n pi y2) / (m^2+n^2).  The double sum is separable, so
// the sine products are tabulated per coordinate.
double green_square(Point x, Point y, std::int64_t n_modes) {
  ModeCutoff cut = mode_cutoff(n_modes);
  std::int64_t s_full = cut.s_full;
  std::int64_t mmax = isqrt64(s_full - 1);
  std::vector<double> ax(static_cast<std::size_t>(mmax + 1));
  std::vector<double> ay(static_cast<std::size_t>(mmax + 1));
  for (std::int64_t m = 1; m <= mmax; ++m) {
    double mp = static_cast<double>(m) * kPi;
    ax[static_cast<std::size_t>(m)] =
        std::sin(mp * x.real()) * std::sin(mp * y.real());
    ay[static_cast<std::size_t>(m)] =
        std::sin(mp * x.imag()) * std::sin(mp * y.imag());
  }
  double sum = 0.0;
  std::int64_t mmax_full = (s_full >= 2) ? isqrt64(s_full - 2) : 0;
  for (std::int64_t m = 1; m <= mmax_full; ++m) {
    std::int64_t nmax = isqrt64(s_full - 1 - m * m);
    double m2 = static_cast<double>(m * m);
    double partial = 0.0;
    const double* b = ay.data();
    for (std::int64_t n = 1; n <= nmax; ++n) {
      partial += b[n] / (m2 + static_cast<double>(n * n));
    }
    sum += ax[static_cast<std::size_t>(m)] * partial;
  }
  std::int64_t taken = 0;
  for (std::int64_t m = 1; m <= mmax && taken < cut.tie_take; ++m) {
    std::int64_t n2 = s_full - m * m;
    std::int64_t n = isqrt64(n2);
    if (n >= 1 && n * n == n2) {
      sum += ax[static_cast<std::size_t>(m)] * ay[static_cast<std::size_t>(n)] /
             static_cast<double>(s_full);
      ++taken;
    }
  }
  return (8.0 / kPi) * sum;
}

}  // namespace

double green_function(const DomainSpec& domain, Point x, Point y,
                      std::int64_t n_modes) {
  validate_domain(domain);
  if (!is_interior(domain, x) || !is_interior(domain, y)) {
    throw_invalid("out-of-domain", "Green function arguments must be interior");
  }
  if (std::abs(x - y) < 1e-14) {
    throw_invalid("coincident-points",
                  "Green function diverges on the diagonal");
  }
  if (domain.kind == DomainKind::kUnitDisc) {
    return std::log(std::abs(1.0 - x * std::conj(y))) -
           std::log(std::abs(x - y));
  }
  return green_square(x, y, n_modes);
}

namespace detail {

double log_conformal_radius_square(Point z, std::int64_t n_modes,
                                   bool lenient) {
  DomainSpec square;
  double dist = dist_to_boundary(square, z);
  if (lenient) {
    // Grid caches evaluate on closed [0,1]^2; near the boundary the radius
    // approaches twice the boundary distance, which is accurate enough for
    // interpolation weights there.
    if (dist < 0.05) return std::log(2.0 * std::max(dist, 1e-4));
  } else if (dist <= 0.0) {
    throw_invalid("out-of-domain", "conformal radius needs an interior point");
  }
  // Offsets shrink near the boundary so all probes stay well interior and
  // the smooth (non-oscillatory) part of the truncation error stays in the
  // linear regime that the extrapolation removes.
  double d0 = std::min(0.125, dist / 2.5);
  Point center(0.5, 0.5);
  Point v = center - z;
  double nv = std::abs(v);
  Point u = (nv > 1e-9) ? v / nv : Point(1.0, 0.0);
  double g[3];
  double d = d0;
  for (int j = 0; j < 3; ++j) {
    g[j] = green_square(z, z + d * u, n_modes) + std::log(d);
    d *= 0.5;
  }
  double r1 = 2.0 * g[1] - g[0];
  double r2 = 2.0 * g[2] - g[1];
  if (!lenient && std::abs(r2 - r1) > 0.02) {
    throw_numerical("insufficient-modes",
                    "conformal radius extrapolants disagree; raise n_modes");
  }
  return r2;
}

}  // namespace detail

double conformal_radius(const DomainSpec& domain, Point z,
                        std::int64_t n_modes) {
  validate_domain(domain);
  if (!is_interior(domain, z)) {
    throw_invalid("out-of-domain", "conformal radius needs an interior point");
  }
  if (domain.kind == DomainKind::kUnitDisc) {
    return 1.0 - std::norm(z);
  }
  return std::exp(detail::log_conformal_radius_square(z, n_modes, false));
}

ConformalMap disc_automorphism(Point a, double theta) {
  if (std::abs(a) >= 1.0) {
    throw_invalid("invalid-map", "disc automorphism needs |a| < 1");
  }
  ConformalMap map;
  map.kind = MapKind::kDiscAutomorphism;
  map.a = a;
  map.theta = theta;
  return map;
}

ConformalMap affine_map(double scale, double rotation, Point translation) {
  if (!(scale > 0.0)) {
    throw_invalid("invalid-map", "affine map needs a positive scale");
  }
  ConformalMap map;
  map.kind = MapKind::kAffine;
  map.scale = scale;
  map.rotation = rotation;
  map.translation = translation;
  return map;
}

Point map_apply(const ConformalMap& map, Point z, MapDirection direction) {
  if (map.kind == MapKind::kAffine) {
    Point rot = std::polar(1.0, map.rotation);
    if (direction == MapDirection::kForward) {
      return map.scale * rot * z + map.translation;
    }
    return (z - map.translation) / (map.scale * rot);
  }
  Point phase = std::polar(1.0, map.theta);
  if (direction == MapDirection::kForward) {
    Point den = 1.0 - std::conj(map.a) * z;
    if (std::abs(den) < 1e-12) {
      throw_invalid("pole", "evaluation point at the automorphism pole");
    }
    return phase * (z - map.a) / den;
  }
  Point w = z / phase;
  Point den = 1.0 + std::conj(map.a) * w;
  if (std::abs(den) < 1e-12) {
    throw_invalid("pole", "evaluation point at the automorphism pole");
  }
  return (w + map.a) / den;
}

double map_derivative_modulus(const ConformalMap& map, Point z,
                              MapDirection direction) {
  if (map.kind == MapKind::kAffine) {
    return direction == MapDirection::kForward ? map.scale : 1.0 / map.scale;
  }
  double lead = 1.0 - std::norm(map.a);
  Point den;
  if (direction == MapDirection::kForward) {
    den = 1.0 - std::conj(map.a) * z;
  } else {
    den = 1.0 + std::conj(map.a) * (z / std::polar(1.0, map.theta));
  }
  if (std::abs(den) < 1e-12) {
    throw_invalid("pole", "evaluation point at the automorphism pole");
  }
  return lead / std::norm(den);
}

}  // namespace liouville
