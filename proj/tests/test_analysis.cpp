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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "liouville/analysis.hpp"
#include "liouville/brownian.hpp"
#include "liouville/clock.hpp"
#include "liouville/errors.hpp"
#include "liouville/gff.hpp"
#include "liouville/stats.hpp"

namespace liouville {
namespace {

double gaussian_tail(double u) { return 0.5 * std::erfc(u / std::sqrt(2.0)); }

DomainSpec disc_domain() {
  DomainSpec d;
  d.kind = DomainKind::kUnitDisc;
  return d;
}

// Kept net positions of one cover level, recomputed from the documented
// drop rule.
std::vector<Point> kept_positions(const DomainSpec& domain,
                                  const BrownianPath& path, double radius,
                                  std::int64_t net_size) {
  std::vector<Point> kept;
  for (std::int64_t j = 1; j <= net_size; ++j) {
    Point pos = position_at(path, static_cast<double>(j) * radius * radius);
    if (dist_to_boundary(domain, pos) <= radius) continue;
    kept.push_back(pos);
  }
  return kept;
}

TEST_CASE("quantum dimension closed forms") {
  for (double gamma : {0.0, 0.5, 1.0, 1.5}) {
    CHECK(kpz_dimension(0.0, gamma) == 0.0);
  }
  // d0 = 2: the discriminant collapses to (2 - gamma^2/2)^2 and the root
  // is exactly 1.
  for (double gamma : {0.5, 1.0, 1.5}) {
    CHECK(kpz_dimension(2.0, gamma) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // gamma = 0 degenerates to the linear equation d0 = 2 d.
  CHECK(kpz_dimension(1.4, 0.0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(kpz_dimension(1.0, 0.0) == 0.5);

  CHECK_THROWS_WITH_AS(kpz_dimension(-0.1, 1.0),
                       doctest::Contains("invalid-dimension"), Error);
  CHECK_THROWS_WITH_AS(kpz_dimension(2.1, 1.0),
                       doctest::Contains("invalid-dimension"), Error);
  CHECK_THROWS_WITH_AS(kpz_dimension(1.0, 2.0),
                       doctest::Contains("gamma-out-of-range"), Error);
  CHECK_THROWS_WITH_AS(kpz_dimension(1.0, -0.5),
                       doctest::Contains("gamma-out-of-range"), Error);
}

TEST_CASE("quantum dimension is increasing in d0 and inverts") {
  for (double gamma : {0.0, 0.3, 0.6, 0.9, 1.2, 1.5, 1.8}) {
    double prev = -1.0;
    for (int i = 0; i <= 8; ++i) {
      double d0 = 0.25 * i;
      double d = kpz_dimension(d0, gamma);
      CHECK(d > prev);
      prev = d;
      CHECK(kpz_inverse(d, gamma) == doctest::Approx(d0).epsilon(1e-12));
    }
  }
  CHECK(kpz_inverse(1.0, 1.0) == 2.0);
  CHECK_THROWS_WITH_AS(kpz_inverse(1.5, 1.0),
                       doctest::Contains("invalid-dimension"), Error);
}

TEST_CASE("thick occupation dimension formula") {
  // alpha = gamma makes numerator and denominator identical.
  for (double gamma : {0.1, 0.5, 1.0, 1.3, 1.9}) {
    CHECK(thick_dim_formula(gamma, gamma) == 1.0);
  }
  CHECK(thick_dim_formula(2.0, 1.0) == 0.0);
  CHECK(thick_dim_formula(2.5, 1.0) == 0.0);
  CHECK(thick_dim_formula(1.0, 0.5) ==
        doctest::Approx(1.5 / 1.625).epsilon(1e-15));
  CHECK(thick_dim_formula(1.3, 1.0) ==
        doctest::Approx(1.155 / 1.2).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(thick_dim_formula(-0.1, 1.0),
                       doctest::Contains("invalid-thickness"), Error);
  CHECK_THROWS_WITH_AS(thick_dim_formula(1.0, 0.0),
                       doctest::Contains("gamma-out-of-range"), Error);
  CHECK_THROWS_WITH_AS(thick_dim_formula(1.0, 2.0),
                       doctest::Contains("gamma-out-of-range"), Error);
}

TEST_CASE("spatial thick point dimension and the Q constant") {
  CHECK(hmp_dimension(0.0) == 2.0);
  CHECK(hmp_dimension(1.0) == 1.5);
  CHECK(hmp_dimension(2.0) == 0.0);
  CHECK(hmp_dimension(3.0) == 0.0);
  CHECK_THROWS_WITH_AS(hmp_dimension(-1.0),
                       doctest::Contains("invalid-thickness"), Error);

  CHECK(liouville_q(1.0) == 2.5);
  CHECK(liouville_q(2.0) == 2.0);
  CHECK(liouville_q(0.5) == 4.25);
  CHECK_THROWS_WITH_AS(liouville_q(0.0),
                       doctest::Contains("gamma-out-of-range"), Error);
}

TEST_CASE("thick cover validates inputs") {
  DomainSpec square;
  SpectralGFF field = sample_gff(square, 64, 1, 0);
  double dt = std::ldexp(1.0, -10);
  BrownianPath path = sample_path(square, Point(0.5, 0.5), dt, 0.5, 1, 0);
  ClockProcess clock =
      clock_process(field, path, 0.0, 3, VarianceMode::kAnalyticModeSum);

  CHECK_THROWS_WITH_AS(
      build_thick_cover(field, path, clock, 2.0, 0.05, 1.0, 2, 6),
      doctest::Contains("invalid-thickness"), Error);
  CHECK_THROWS_WITH_AS(
      build_thick_cover(field, path, clock, -0.5, 0.05, 1.0, 2, 6),
      doctest::Contains("invalid-thickness"), Error);
  CHECK_THROWS_WITH_AS(
      build_thick_cover(field, path, clock, 1.0, 0.0, 1.0, 2, 6),
      doctest::Contains("invalid-slack"), Error);
  CHECK_THROWS_WITH_AS(
      build_thick_cover(field, path, clock, 1.0, 0.05, -1.0, 2, 6),
      doctest::Contains("invalid-slack"), Error);
  CHECK_THROWS_WITH_AS(
      build_thick_cover(field, path, clock, 1.0, 0.05, 1.0, 0, 6),
      doctest::Contains("invalid-range"), Error);
  CHECK_THROWS_WITH_AS(
      build_thick_cover(field, path, clock, 1.0, 0.05, 1.0, 4, 2),
      doctest::Contains("invalid-range"), Error);
  // Tiny eta drives r_n below the path resolution.
  CHECK_THROWS_WITH_AS(
      build_thick_cover(field, path, clock, 1.2, 0.05, 0.02, 2, 2),
      doctest::Contains("scale-finer-than-path"), Error);

  BrownianPath other =
      sample_path(square, Point(0.5, 0.5), dt / 2.0, 0.5, 1, 0);
  CHECK_THROWS_WITH_AS(
      build_thick_cover(field, other, clock, 1.0, 0.05, 1.0, 2, 4),
      doctest::Contains("clock-path-mismatch"), Error);
}

TEST_CASE("extreme thickness produces an empty cover") {
  DomainSpec disc = disc_domain();
  SpectralGFF field = sample_disc_field(disc, 64, 2, 0);
  double dt = std::ldexp(1.0, -10);
  BrownianPath path = sample_path(disc, Point(0.0, 0.0), dt, 0.5, 2, 0);
  ClockProcess clock =
      clock_process(field, path, 0.0, 3, VarianceMode::kAnalyticModeSum);
  // K < 0 pushes every radius above 1, so all nets are empty.
  ThickPointCover cover =
      build_thick_cover(field, path, clock, 10.0, 0.1, 1.0, 2, 6);
  for (const auto& lv : cover.levels) {
    CHECK(lv.net_size == 0);
    CHECK(lv.selected.empty());
    CHECK(lv.intervals.empty());
  }
  CoverDimensionEstimate est =
      cover_dimension_estimate(cover, {0.25, 0.5, 1.0});
  CHECK(est.empty_cover);
  CHECK(est.estimate == 0.0);
  CHECK_FALSE(est.saturated);
}

TEST_CASE("selection at zero thickness tracks the gaussian cdf") {
  DomainSpec disc = disc_domain();
  double dt = std::ldexp(1.0, -14);
  const int kReps = 60;
  const int kNMin = 4, kNMax = 6;
  std::vector<double> sel(kNMax + 1, 0.0), kept_n(kNMax + 1, 0.0),
      net(kNMax + 1, 0.0), oracle(kNMax + 1, 0.0);
  for (int rep = 0; rep < kReps; ++rep) {
    SpectralGFF field = sample_disc_field(disc, 16384, 31, rep);
    BrownianPath path = sample_path(disc, Point(0.0, 0.0), dt, 2.0, 31, rep);
    ClockProcess clock =
        clock_process(field, path, 0.0, 5, VarianceMode::kAnalyticModeSum);
    ThickPointCover cover =
        build_thick_cover(field, path, clock, 0.0, 0.05, 1.0, kNMin, kNMax);
    for (const auto& lv : cover.levels) {
      sel[lv.n] += static_cast<double>(lv.selected.size());
      net[lv.n] += static_cast<double>(lv.net_size);
      std::vector<Point> kept =
          kept_positions(disc, path, lv.radius, lv.net_size);
      CHECK(static_cast<std::int64_t>(kept.size()) ==
            lv.net_size - lv.dropped);
      kept_n[lv.n] += static_cast<double>(kept.size());
      if (kept.empty()) continue;
      FieldBatchEvaluator eval(field, kept);
      std::vector<double> var = eval.variances(lv.radius);
      double thr = -0.05 * std::log(1.0 / lv.radius);
      for (double v : var) oracle[lv.n] += gaussian_tail(thr / std::sqrt(v));
    }
  }
  for (int n = kNMin; n <= kNMax; ++n) {
    double frac = sel[n] / net[n];
    double oracle_frac = oracle[n] / kept_n[n];
    CAPTURE(n);
    CAPTURE(frac);
    CAPTURE(oracle_frac);
    CHECK(frac > 0.4);
    CHECK(frac < 1.0);
    CHECK(std::abs(frac - oracle_frac) < 0.12);
  }
}

TEST_CASE("mean selected counts match the gaussian tail oracle") {
  DomainSpec disc = disc_domain();
  double dt = std::ldexp(1.0, -14);
  const int kReps = 60;
  const double kAlpha = 1.2, kDelta = 0.05, kEta = 1.0;
  const int kNMin = 2, kNMax = 6;
  std::vector<double> mean_count(kNMax + 1, 0.0), mean_oracle(kNMax + 1, 0.0),
      radii(kNMax + 1, 0.0);
  for (int rep = 0; rep < kReps; ++rep) {
    SpectralGFF field = sample_disc_field(disc, 65536, 11, rep);
    BrownianPath path = sample_path(disc, Point(0.0, 0.0), dt, 2.0, 11, rep);
    ClockProcess clock =
        clock_process(field, path, 0.0, 5, VarianceMode::kAnalyticModeSum);
    ThickPointCover cover = build_thick_cover(field, path, clock, kAlpha,
                                              kDelta, kEta, kNMin, kNMax);
    for (const auto& lv : cover.levels) {
      radii[lv.n] = lv.radius;
      mean_count[lv.n] += static_cast<double>(lv.selected.size()) / kReps;
      std::vector<Point> kept =
          kept_positions(disc, path, lv.radius, lv.net_size);
      if (kept.empty()) continue;
      FieldBatchEvaluator eval(field, kept);
      std::vector<double> var = eval.variances(lv.radius);
      double thr = (kAlpha - kDelta) * std::log(1.0 / lv.radius);
      double sum = 0.0;
      for (double v : var) sum += gaussian_tail(thr / std::sqrt(v));
      mean_oracle[lv.n] += sum / kReps;
    }
  }
  // Linearity of expectation: the mean count equals the summed Gaussian
  // tail regardless of the in-level correlations.
  double lo = 2.0, hi = 0.0;
  for (int n = kNMin; n <= kNMax; ++n) {
    CAPTURE(n);
    CAPTURE(mean_count[n]);
    CAPTURE(mean_oracle[n]);
    CHECK(mean_oracle[n] > 0.0);
    double ratio = mean_count[n] / mean_oracle[n];
    CHECK(ratio > 0.6);
    CHECK(ratio < 1.5);
    // Exponent check: count / r^(-2 + (alpha-delta)^2/2) must stay flat
    // across a 13x span of radii.
    double power = std::pow(
        radii[n], -2.0 + 0.5 * (kAlpha - kDelta) * (kAlpha - kDelta));
    lo = std::min(lo, mean_count[n] / power);
    hi = std::max(hi, mean_count[n] / power);
  }
  CHECK(hi / lo < 2.0);
}

TEST_CASE("count statistics do not depend on the clock coupling") {
  DomainSpec disc = disc_domain();
  double dt = std::ldexp(1.0, -14);
  SpectralGFF field = sample_disc_field(disc, 16384, 11, 3);
  BrownianPath path = sample_path(disc, Point(0.0, 0.0), dt, 2.0, 11, 3);
  ClockProcess flat =
      clock_process(field, path, 0.0, 5, VarianceMode::kAnalyticModeSum);
  ClockProcess weighted = clock_process(field, path, 1.0, 5,
                                        VarianceMode::kConformalRadiusFormula);
  ThickPointCover a =
      build_thick_cover(field, path, flat, 1.2, 0.05, 1.0, 2, 5);
  ThickPointCover b =
      build_thick_cover(field, path, weighted, 1.2, 0.05, 1.0, 2, 5);
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    CHECK(a.levels[i].selected == b.levels[i].selected);
    CHECK(a.levels[i].dropped == b.levels[i].dropped);
  }
  CHECK(b.gamma == 1.0);
}

TEST_CASE("cover structure, interval pushforward, and alpha monotonicity") {
  DomainSpec disc = disc_domain();
  double dt = std::ldexp(1.0, -14);
  SpectralGFF field = sample_disc_field(disc, 65536, 21, 6);
  BrownianPath path = sample_path(disc, Point(0.0, 0.0), dt, 2.0, 21, 6);
  ClockProcess clock = clock_process(field, path, 1.0, 5,
                                     VarianceMode::kConformalRadiusFormula);
  ThickPointCover mid =
      build_thick_cover(field, path, clock, 1.1, 0.05, 1.0, 2, 6);

  CHECK(mid.partial == (path.stop_time() < 1.0));
  CHECK(mid.K == 3.0 / (2.0 - 0.5 * 1.1 * 1.1));
  double horizon = std::min(1.0, path.stop_time());
  double prev_radius = 2.0;
  for (const auto& lv : mid.levels) {
    CHECK(lv.radius < prev_radius);
    prev_radius = lv.radius;
    double spacing = lv.radius * lv.radius;
    CHECK(lv.net_size == static_cast<std::int64_t>(horizon / spacing));
    // Recompute the drop count from the documented rule.
    std::int64_t dropped = 0;
    for (std::int64_t j = 1; j <= lv.net_size; ++j) {
      Point pos = position_at(path, static_cast<double>(j) * spacing);
      if (dist_to_boundary(disc, pos) <= lv.radius) ++dropped;
    }
    CHECK(lv.dropped == dropped);
    CHECK(static_cast<std::int64_t>(lv.selected.size()) <=
          lv.net_size - lv.dropped);
    REQUIRE(lv.selected.size() == lv.intervals.size());
    for (std::size_t i = 0; i < lv.selected.size(); ++i) {
      double t = static_cast<double>(lv.selected[i]) * spacing;
      // Forward pushforward of [t - r^2, t + r^2] through the clock.
      CHECK(lv.intervals[i].first == clock.at(std::max(0.0, t - spacing)));
      CHECK(lv.intervals[i].second ==
            clock.at(std::min(t + spacing, path.duration())));
      CHECK(lv.intervals[i].first <= lv.intervals[i].second);
      CHECK(lv.intervals[i].second <= clock.total());
    }
  }

  // Raising alpha shrinks every selection set.  eta is compensated so the
  // scale exponent K, and with it the nets, stay fixed while only the
  // threshold moves.
  const double kFixedK = 2.5;
  auto eta_for = [kFixedK](double alpha) {
    return 3.0 / (kFixedK * (2.0 - 0.5 * alpha * alpha));
  };
  ThickPointCover low = build_thick_cover(field, path, clock, 0.9, 0.05,
                                          eta_for(0.9), 2, 6);
  ThickPointCover mid2 = build_thick_cover(field, path, clock, 1.1, 0.05,
                                           eta_for(1.1), 2, 6);
  ThickPointCover high = build_thick_cover(field, path, clock, 1.3, 0.05,
                                           eta_for(1.3), 2, 6);
  bool low_nonempty = false;
  REQUIRE(low.levels.size() == high.levels.size());
  for (std::size_t i = 0; i < low.levels.size(); ++i) {
    REQUIRE(low.levels[i].radius ==
            doctest::Approx(high.levels[i].radius).epsilon(1e-12));
    REQUIRE(low.levels[i].net_size == mid2.levels[i].net_size);
    REQUIRE(low.levels[i].net_size == high.levels[i].net_size);
    CHECK(std::includes(
        low.levels[i].selected.begin(), low.levels[i].selected.end(),
        mid2.levels[i].selected.begin(), mid2.levels[i].selected.end()));
    CHECK(std::includes(
        mid2.levels[i].selected.begin(), mid2.levels[i].selected.end(),
        high.levels[i].selected.begin(), high.levels[i].selected.end()));
    if (!low.levels[i].selected.empty()) low_nonempty = true;
  }
  CHECK(low_nonempty);
}

TEST_CASE("quantum interval sums and the dimension estimate") {
  DomainSpec disc = disc_domain();
  double dt = std::ldexp(1.0, -14);
  SpectralGFF field = sample_disc_field(disc, 65536, 21, 15);
  BrownianPath path = sample_path(disc, Point(0.0, 0.0), dt, 2.0, 21, 15);
  ClockProcess clock = clock_process(field, path, 1.0, 5,
                                     VarianceMode::kConformalRadiusFormula);
  ThickPointCover cover =
      build_thick_cover(field, path, clock, 1.3, 0.05, 1.0, 2, 6);

  // Each euclidean instant lies in at most two of a level's windows, so a
  // level's diameter sum is bounded by twice the total quantum time.
  double q1_total = 0.0;
  for (const auto& lv : cover.levels) {
    double level_sum = 0.0;
    for (const auto& iv : lv.intervals) level_sum += iv.second - iv.first;
    CHECK(level_sum <= 2.0 * clock.total() * (1.0 + 1e-12));
    q1_total += level_sum;
  }

  std::vector<double> grid{0.25, 0.5, 0.75, 1.0};
  CoverDimensionEstimate est = cover_dimension_estimate(cover, grid, 1.0);
  REQUIRE(est.q_grid == grid);
  CHECK(est.q_sums.back() == doctest::Approx(q1_total).epsilon(1e-12));
  CHECK_FALSE(est.empty_cover);
  CHECK(est.estimate >= 0.0);
  CHECK(est.estimate <= 1.0);

  // After normalizing diameters by their maximum the sums are
  // nonincreasing in q.
  double max_diam = 0.0;
  for (const auto& lv : cover.levels) {
    for (const auto& iv : lv.intervals) {
      max_diam = std::max(max_diam, iv.second - iv.first);
    }
  }
  REQUIRE(max_diam > 0.0);
  double prev = 1e300;
  for (double q : grid) {
    double sum = 0.0;
    for (const auto& lv : cover.levels) {
      for (const auto& iv : lv.intervals) {
        double d = (iv.second - iv.first) / max_diam;
        if (d > 0.0) sum += std::pow(d, q);
      }
    }
    CHECK(sum <= prev * (1.0 + 1e-12));
    prev = sum;
  }
}

TEST_CASE("dimension estimate thresholds and validation") {
  // Hand-built cover with diameters 0.25 and 0.4.
  ThickPointCover cover;
  cover.levels.resize(1);
  cover.levels[0].selected = {1, 2};
  cover.levels[0].intervals = {{0.0, 0.25}, {0.5, 0.9}};

  CoverDimensionEstimate est =
      cover_dimension_estimate(cover, {1.0, 0.5}, 1.0);
  // Grid is sorted ascending; sums are 1.132 at q=0.5 and 0.65 at q=1.
  CHECK(est.q_grid == std::vector<double>{0.5, 1.0});
  CHECK(est.q_sums[0] ==
        doctest::Approx(std::sqrt(0.25) + std::sqrt(0.4)).epsilon(1e-15));
  CHECK(est.q_sums[1] == doctest::Approx(0.65).epsilon(1e-15));
  CHECK(est.estimate == 1.0);
  CHECK_FALSE(est.saturated);

  CHECK(cover_dimension_estimate(cover, {0.5, 1.0}, 2.0).estimate == 0.5);
  CoverDimensionEstimate tight =
      cover_dimension_estimate(cover, {0.5, 1.0}, 0.1);
  CHECK(tight.saturated);
  CHECK(tight.estimate == 1.0);

  // Zero-length intervals cover nothing.
  ThickPointCover degenerate;
  degenerate.levels.resize(1);
  degenerate.levels[0].intervals = {{0.3, 0.3}};
  CoverDimensionEstimate empty =
      cover_dimension_estimate(degenerate, {0.5, 1.0});
  CHECK(empty.empty_cover);
  CHECK(empty.estimate == 0.0);

  CHECK_THROWS_WITH_AS(cover_dimension_estimate(cover, {}),
                       doctest::Contains("invalid-grid"), Error);
  CHECK_THROWS_WITH_AS(cover_dimension_estimate(cover, {0.0, 0.5}),
                       doctest::Contains("invalid-grid"), Error);
  CHECK_THROWS_WITH_AS(cover_dimension_estimate(cover, {0.5, 1.2}),
                       doctest::Contains("invalid-grid"), Error);
  CHECK_THROWS_WITH_AS(cover_dimension_estimate(cover, {0.5}, 0.0),
                       doctest::Contains("invalid-threshold"), Error);
}

TEST_CASE("variance oracle agrees with the scalar mode sum") {
  DomainSpec disc = disc_domain();
  SpectralGFF field = sample_disc_field(disc, 16384, 5, 0);
  std::vector<Point> pts{Point(0.0, 0.0), Point(0.3, 0.1), Point(-0.2, 0.4),
                         Point(0.1, -0.5), Point(-0.35, -0.2)};
  FieldBatchEvaluator eval(field, pts);
  for (double eps : {0.0625, 0.125}) {
    std::vector<double> var = eval.variances(eps);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CircleVariance cv = circle_average_variance(disc, pts[i], eps, 16384);
      CHECK(var[i] == doctest::Approx(cv.value).epsilon(1e-10));
    }
  }
}

TEST_CASE("rotation at angle zero reproduces the clock sample exactly") {
  ConformalCheckReport report = conformal_clock_check(1.0, 5, 0.0, 6, 42);
  CHECK(report.ks.statistic == 0.0);
  CHECK_FALSE(report.ks.reject);
  CHECK(report.base_totals == report.rotated_totals);
  CHECK(report.truncated_base == report.truncated_rotated);
  CHECK(report.q_constant == 2.5);
  CHECK(report.theta == 0.0);
}

TEST_CASE("rotation leaves the total clock law unchanged") {
  ConformalCheckReport report =
      conformal_clock_check(1.0, 5, M_PI / 3.0, 40, 42);
  CAPTURE(report.ks.statistic);
  CAPTURE(report.ks.critical_5pct);
  CHECK_FALSE(report.ks.reject);
  CHECK(report.ks.n1 == 40);
  CHECK(report.ks.n2 == 40);
  // Totals are positive quantum times.
  for (double v : report.base_totals) CHECK(v > 0.0);
  for (double v : report.rotated_totals) CHECK(v > 0.0);
}

TEST_CASE("conformal check validates inputs") {
  CHECK_THROWS_WITH_AS(conformal_clock_check(0.0, 5, 0.5, 4, 1),
                       doctest::Contains("gamma-out-of-range"), Error);
  CHECK_THROWS_WITH_AS(conformal_clock_check(2.0, 5, 0.5, 4, 1),
                       doctest::Contains("gamma-out-of-range"), Error);
  CHECK_THROWS_WITH_AS(conformal_clock_check(1.0, 5, 0.5, 1, 1),
                       doctest::Contains("invalid-replicates"), Error);
  // Default step is too coarse for k = 7.
  CHECK_THROWS_WITH_AS(conformal_clock_check(1.0, 7, 0.5, 2, 1, 256),
                       doctest::Contains("dt-too-coarse"), Error);
}

}  // namespace
}  // namespace liouville
