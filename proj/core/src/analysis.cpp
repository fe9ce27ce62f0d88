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

#include "liouville/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "liouville/errors.hpp"
#include "liouville/rng.hpp"

namespace liouville {

namespace {

void check_gamma_halfopen(double gamma) {
  if (!(gamma >= 0.0 && gamma < 2.0)) {
    throw_invalid("gamma-out-of-range", "gamma must lie in [0, 2)");
  }
}

}  // namespace

double kpz_dimension(double d0, double gamma) {
  if (!(d0 >= 0.0 && d0 <= 2.0)) {
    throw_invalid("invalid-dimension", "euclidean dimension must lie in [0, 2]");
  }
  check_gamma_halfopen(gamma);
  // Smaller root of (gamma^2/2) d^2 - b d + d0 with b = 2 + gamma^2/2,
  // rationalized so gamma = 0 degenerates to d0 / 2 without branching.
  double b = 2.0 + 0.5 * gamma * gamma;
  double disc = b * b - 2.0 * gamma * gamma * d0;
  double d = 2.0 * d0 / (b + std::sqrt(std::max(disc, 0.0)));
  if (!(d >= 0.0 && d <= 1.0 + 1e-12)) {
    throw_numerical("no-root-in-range", "quantum dimension left [0, 1]");
  }
  return std::min(d, 1.0);
}

double kpz_inverse(double d, double gamma) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw_invalid("invalid-dimension", "quantum dimension must lie in [0, 1]");
  }
  check_gamma_halfopen(gamma);
  double g2 = 0.5 * gamma * gamma;
  return d * (2.0 + g2) - d * d * g2;
}

double thick_dim_formula(double alpha, double gamma) {
  if (!(alpha >= 0.0)) {
    throw_invalid("invalid-thickness", "thickness level must be nonnegative");
  }
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw_invalid("gamma-out-of-range", "gamma must lie in (0, 2)");
  }
  double num = 2.0 - 0.5 * alpha * alpha;
  if (num <= 0.0) return 0.0;
  // Denominator 2 - alpha gamma + gamma^2/2 written so alpha = gamma gives
  // exactly 1.
  double den = num + 0.5 * (alpha - gamma) * (alpha - gamma);
  return num / den;
}

double hmp_dimension(double alpha) {
  if (!(alpha >= 0.0)) {
    throw_invalid("invalid-thickness", "thickness level must be nonnegative");
  }
  return std::max(2.0 - 0.5 * alpha * alpha, 0.0);
}

double liouville_q(double gamma) {
  if (!(gamma > 0.0)) {
    throw_invalid("gamma-out-of-range", "Q needs gamma > 0");
  }
  return 0.5 * gamma + 2.0 / gamma;
}

ThickPointCover build_thick_cover(const SpectralGFF& field,
                                  const BrownianPath& path,
                                  const ClockProcess& clock, double alpha,
                                  double delta, double eta, int n_min,
                                  int n_max) {
  if (!(alpha >= 0.0) || alpha == 2.0) {
    throw_invalid("invalid-thickness",
                  "thickness must be nonnegative and away from the singular "
                  "level 2");
  }
  if (!(delta > 0.0) || !(eta > 0.0)) {
    throw_invalid("invalid-slack", "delta and eta must be positive");
  }
  if (n_min < 1 || n_max < n_min) {
    throw_invalid("invalid-range", "needs 1 <= n_min <= n_max");
  }
  if (clock.dt != path.dt ||
      clock.values.size() != path.positions.size()) {
    throw_invalid("clock-path-mismatch",
                  "clock must be built on the same discretized path");
  }
  ThickPointCover cover;
  cover.alpha = alpha;
  cover.gamma = clock.gamma;
  cover.delta = delta;
  cover.eta = eta;
  cover.K = 3.0 / (eta * (2.0 - 0.5 * alpha * alpha));
  // The net covers the in-domain prefix; past the stopping time the clock
  // is constant and field evaluation leaves the domain.
  cover.partial = path.stop_time() < 1.0;
  double horizon = std::min(1.0, path.stop_time());

  for (int n = n_min; n <= n_max; ++n) {
    double r = std::pow(static_cast<double>(n), -cover.K);
    double spacing = r * r;
    if (spacing < path.dt) {
      throw_numerical("scale-finer-than-path",
                      "net spacing fell below the path resolution");
    }
    ThickPointCover::Level level;
    level.n = n;
    level.radius = r;
    level.net_size = static_cast<std::int64_t>(horizon / spacing);

    std::vector<std::int64_t> kept;
    std::vector<Point> kept_pos;
    for (std::int64_t j = 1; j <= level.net_size; ++j) {
      Point pos = position_at(path, static_cast<double>(j) * spacing);
      if (dist_to_boundary(field.domain, pos) <= r) {
        ++level.dropped;
        continue;
      }
      kept.push_back(j);
      kept_pos.push_back(pos);
    }
    if (!kept.empty()) {
      FieldBatchEvaluator eval(field, kept_pos);
      std::vector<double> h = eval.values(r);
      double threshold = (alpha - delta) * std::log(1.0 / r);
      for (std::size_t i = 0; i < kept.size(); ++i) {
        if (h[i] < threshold) continue;
        double t = static_cast<double>(kept[i]) * spacing;
        level.selected.push_back(kept[i]);
        level.intervals.emplace_back(
            clock.at(std::max(0.0, t - spacing)),
            clock.at(std::min(t + spacing, path.duration())));
      }
    }
    cover.levels.push_back(std::move(level));
  }
  return cover;
}

CoverDimensionEstimate cover_dimension_estimate(const ThickPointCover& cover,
                                                std::vector<double> q_grid,
                                                double threshold) {
  if (q_grid.empty()) {
    throw_invalid("invalid-grid", "q grid must be nonempty");
  }
  for (double q : q_grid) {
    if (!(q > 0.0 && q <= 1.0)) {
      throw_invalid("invalid-grid", "q grid values must lie in (0, 1]");
    }
  }
  if (!(threshold > 0.0)) {
    throw_invalid("invalid-threshold", "threshold must be positive");
  }
  std::sort(q_grid.begin(), q_grid.end());
  CoverDimensionEstimate out;
  out.q_grid = q_grid;
  out.q_sums.resize(q_grid.size(), 0.0);
  bool any = false;
  for (const auto& level : cover.levels) {
    for (const auto& iv : level.intervals) {
      double diam = iv.second - iv.first;
      if (diam <= 0.0) continue;  // zero-length intervals cover nothing
      any = true;
      for (std::size_t i = 0; i < q_grid.size(); ++i) {
        out.q_sums[i] += std::pow(diam, q_grid[i]);
      }
    }
  }
  if (!any) {
    out.empty_cover = true;
    out.estimate = 0.0;
    return out;
  }
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    if (out.q_sums[i] < threshold) {
      out.estimate = q_grid[i];
      return out;
    }
  }
  out.saturated = true;
  out.estimate = q_grid.back();
  return out;
}

ConformalCheckReport conformal_clock_check(double gamma, int k, double theta,
                                           int n_replicates,
                                           std::uint64_t seed,
                                           std::int64_t n_modes, double dt,
                                           double max_time) {
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw_invalid("gamma-out-of-range", "gamma must lie in (0, 2)");
  }
  if (n_replicates < 2) {
    throw_invalid("invalid-replicates", "needs at least 2 replicates");
  }
  DomainSpec domain;
  domain.kind = DomainKind::kUnitDisc;
  domain.inner_margin = 0.1;
  Point z0(0.3, 0.0);
  Point z1 = std::polar(1.0, theta) * z0;

  ConformalCheckReport report;
  report.gamma = gamma;
  report.theta = theta;
  report.q_constant = liouville_q(gamma);
  report.base_totals.reserve(static_cast<std::size_t>(n_replicates));
  report.rotated_totals.reserve(static_cast<std::size_t>(n_replicates));
  for (int rep = 0; rep < n_replicates; ++rep) {
    auto replicate = static_cast<std::uint64_t>(rep);
    SpectralGFF field = sample_disc_field(domain, n_modes, seed, replicate);
    // Both starts consume the same increment stream; theta = 0 reproduces
    // the base sample bit for bit.
    BrownianPath base = sample_path(domain, z0, dt, max_time, seed, replicate);
    BrownianPath rotated =
        sample_path(domain, z1, dt, max_time, seed, replicate);
    ClockProcess base_clock = clock_process(
        field, base, gamma, k, VarianceMode::kConformalRadiusFormula);
    ClockProcess rotated_clock = clock_process(
        field, rotated, gamma, k, VarianceMode::kConformalRadiusFormula);
    report.base_totals.push_back(base_clock.total());
    report.rotated_totals.push_back(rotated_clock.total());
    if (base.stop_index == base.n_steps()) ++report.truncated_base;
    if (rotated.stop_index == rotated.n_steps()) ++report.truncated_rotated;
  }
  report.ks = ks_two_sample(report.base_totals, report.rotated_totals);
  return report;
}

}  // namespace liouville
