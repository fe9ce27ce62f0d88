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

#ifndef LIOUVILLE_CLOCK_HPP
#define LIOUVILLE_CLOCK_HPP

#include <cstdint>
#include <vector>

#include "liouville/brownian.hpp"
#include "liouville/gff.hpp"
#include "liouville/geometry.hpp"

namespace liouville {

// How Var h_eps(B_s) in the clock integrand is evaluated.
// kAnalyticModeSum is exact for the truncated field (unbiased mean clock);
// kConformalRadiusFormula substitutes the limit law -log eps + log R(z; D),
// the normalization the convergence diagnostics are stated in.
enum class VarianceMode { kAnalyticModeSum, kConformalRadiusFormula };

// Quantum time mu_eps(i dt) accumulated along a stopped path:
// mu_eps(t) = int_0^{t ^ T} exp(gamma h_eps(B_s) - (gamma^2/2) Var h_eps(B_s)) ds.
// values is nondecreasing, starts at 0, and is constant past stop_index.
struct ClockProcess {
  double gamma = 0.0;
  int k = 0;             // eps = 2^-k
  double epsilon = 0.0;
  double dt = 0.0;
  VarianceMode variance_mode = VarianceMode::kAnalyticModeSum;
  std::int64_t stop_index = 0;
  std::vector<double> values;

  std::int64_t n_steps() const {
    return static_cast<std::int64_t>(values.size()) - 1;
  }
  double total() const { return values.back(); }
  double stop_time() const { return static_cast<double>(stop_index) * dt; }
  // mu at Euclidean time t, linearly interpolated and clamped.
  double at(double t) const;
};

// Trapezoidal clock over the path prefix [0, stop_index * dt].
ClockProcess clock_process(const SpectralGFF& field, const BrownianPath& path,
                           double gamma, int k, VarianceMode mode);

// log R(z; D) for clock integrands: exact on the disc, interpolated from a
// cached (grid_n+1)^2 node table on the square.  Accepts any z (clamped to
// the closed domain), so stopped-path endpoints never throw.
double log_conformal_radius_grid(const DomainSpec& domain, Point z);

// inf{s : mu(s) > tau}, linearly interpolated; tau = total() maps to the
// stopping time.  Right-continuous and nondecreasing in tau.
double inverse_clock(const ClockProcess& clock, double tau);

// The time-changed trajectory Z(j quantum_dt) = B(mu^-1(j quantum_dt)).
struct LBMTrajectory {
  double quantum_dt = 0.0;
  std::vector<Point> points;
  double total_quantum_time = 0.0;
};

LBMTrajectory lbm_trajectory(const BrownianPath& path,
                             const ClockProcess& clock, double quantum_dt);

// |alpha_{k+1} - alpha_k| for k = k_min..k_max-1, where alpha_k is the
// total clock at scale 2^-k in ConformalRadiusFormula mode.  All scales
// share one field evaluation pass, and each alpha_k equals the matching
// clock_process total bit for bit.
std::vector<double> cauchy_diagnostic(const SpectralGFF& field,
                                      const BrownianPath& path, double gamma,
                                      int k_min, int k_max);

// Riemann-net estimators over S_k^s = {s_offset + j 4^-k} up to
// min(1, stop time): x sums exp(gamma h_k + (gamma^2/2) log 2^-k) weighted
// by 4^-k, y likewise at scale k+1.  Averaging x over all 4^k offsets
// reproduces the integral of the normalized integrand.
struct NetEstimators {
  double x = 0.0;
  double y = 0.0;
  std::int64_t net_size = 0;
};

NetEstimators net_estimators(const SpectralGFF& field,
                             const BrownianPath& path, double gamma, int k,
                             double s_offset);

}  // namespace liouville

#endif  // LIOUVILLE_CLOCK_HPP
