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

#ifndef LIOUVILLE_ANALYSIS_HPP
#define LIOUVILLE_ANALYSIS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "liouville/brownian.hpp"
#include "liouville/clock.hpp"
#include "liouville/gff.hpp"
#include "liouville/stats.hpp"

namespace liouville {

// Quantum dimension d solving d0 + d^2 gamma^2/2 - d (2 + gamma^2/2) = 0:
// the smaller root, which lies in [0, 1] for d0 in [0, 2].  The gamma = 0
// limit degenerates to d0 / 2.
double kpz_dimension(double d0, double gamma);

// Euclidean dimension recovered from a quantum one:
// d0 = d (2 + gamma^2/2) - d^2 gamma^2/2.  Requires d in [0, 1].
double kpz_inverse(double d, double gamma);

// Occupation dimension of alpha-thick times,
// (2 - alpha^2/2) / (2 - alpha gamma + gamma^2/2), clamped below at 0.
// The denominator equals the numerator plus (alpha - gamma)^2 / 2, so the
// value is exactly 1 at alpha = gamma.
double thick_dim_formula(double alpha, double gamma);

// Hausdorff dimension of the spatial set of alpha-thick points,
// max(2 - alpha^2/2, 0).
double hmp_dimension(double alpha);

// Q(gamma) = gamma/2 + 2/gamma.  Coefficient of the log |psi'| shift in
// the transported field; the shift vanishes for rotations.
double liouville_q(double gamma);

// Multi-scale cover of thick times.  Scale n uses radius r_n = n^-K with
// K = 3 / (eta (2 - alpha^2/2)), a time net of spacing r_n^2 over the
// in-domain prefix [0, min(1, stop time)], circle averages h_{r_n} at net
// positions, the threshold (alpha - delta) log(1/r_n), and quantum
// intervals obtained by pushing [t - r_n^2, t + r_n^2] through the clock.
struct ThickPointCover {
  double alpha = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double K = 0.0;
  bool partial = false;  // stopped before unit time; prefix covered

  struct Level {
    int n = 0;
    double radius = 0.0;
    std::int64_t net_size = 0;  // times j r_n^2, j = 1..net_size
    std::int64_t dropped = 0;   // net points whose circle exits the domain
    std::vector<std::int64_t> selected;                // indices j in I_n
    std::vector<std::pair<double, double>> intervals;  // quantum [a, b]
  };
  std::vector<Level> levels;
};

ThickPointCover build_thick_cover(const SpectralGFF& field,
                                  const BrownianPath& path,
                                  const ClockProcess& clock, double alpha,
                                  double delta, double eta, int n_min,
                                  int n_max);

// Smallest q on the grid whose cover sum  sum_n sum_{j in I_n} diam^q
// drops below the threshold; the largest grid q when none does.  An
// empty cover reports 0 with the flag set.
struct CoverDimensionEstimate {
  double estimate = 0.0;
  bool empty_cover = false;
  bool saturated = false;       // no grid q brought the sum below threshold
  std::vector<double> q_grid;   // sorted ascending
  std::vector<double> q_sums;   // aligned with q_grid
};

CoverDimensionEstimate cover_dimension_estimate(const ThickPointCover& cover,
                                                std::vector<double> q_grid,
                                                double threshold = 1.0);

// Distributional check of rotation invariance of the total quantum time
// in the unit disc: replicate clocks started at z0 = 0.3 and at
// e^{i theta} z0 share RNG streams, and the two samples are compared by
// a two-sample KS test.  Rotations have |psi'| = 1, so the transported
// law must match exactly.  Also reports Q(gamma) = gamma/2 + 2/gamma.
struct ConformalCheckReport {
  double gamma = 0.0;
  double theta = 0.0;
  double q_constant = 0.0;
  int truncated_base = 0;     // replicates that hit the time cap
  int truncated_rotated = 0;
  std::vector<double> base_totals;
  std::vector<double> rotated_totals;
  KsResult ks;
};

ConformalCheckReport conformal_clock_check(double gamma, int k, double theta,
                                           int n_replicates,
                                           std::uint64_t seed,
                                           std::int64_t n_modes = 65536,
                                           double dt = 6.103515625e-05,
                                           double max_time = 2.0);

}  // namespace liouville

#endif  // LIOUVILLE_ANALYSIS_HPP
