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

#include "liouville/clock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

// Fixed truncation for the radius node table.  R is a domain property, so
// the cache is independent of the field resolution; 65536 modes hold the
// interior node error near 1e-2 in R, far below the clock tolerances.
constexpr std::int64_t kRadiusGridModes = 65536;

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 2.0)) {
    throw_invalid("gamma-out-of-range", "gamma must lie in [0, 2)");
  }
}

const std::vector<double>& radius_node_table(int grid_n) {
  static std::mutex mu;
  static std::map<int, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::vector<double>& table = cache[grid_n];
  if (table.empty()) {
    auto n = static_cast<std::size_t>(grid_n) + 1;
    table.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        Point node(static_cast<double>(i) / grid_n,
                   static_cast<double>(j) / grid_n);
        table[j * n + i] = detail::log_conformal_radius_square(
            node, kRadiusGridModes, /*lenient=*/true);
      }
    }
  }
  return table;
}

// Integrand weights exp(gamma h_eps - (gamma^2/2) Var) at the path prefix
// points.  Shared by clock_process and cauchy_diagnostic so their results
// coincide exactly.
std::vector<double> integrand_weights(const FieldBatchEvaluator& eval,
                                      const std::vector<double>* log_radius,
                                      double gamma, double eps,
                                      VarianceMode mode) {
  std::vector<double> w = eval.values(eps);
  double g2 = 0.5 * gamma * gamma;
  if (mode == VarianceMode::kAnalyticModeSum) {
    std::vector<double> var = eval.variances(eps);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = std::exp(gamma * w[i] - g2 * var[i]);
    }
  } else {
    double log_eps = std::log(eps);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = std::exp(gamma * w[i] - g2 * (-log_eps + (*log_radius)[i]));
    }
  }
  return w;
}

// Compensated trapezoidal prefix sums; constant past the stopping index.
// With gamma = 0 every increment is exactly dt, so dyadic dt gives exact
// i * dt values.
std::vector<double> prefix_trapezoid(const std::vector<double>& w, double dt,
                                     std::int64_t n_steps,
                                     std::int64_t stop) {
  std::vector<double> values(static_cast<std::size_t>(n_steps) + 1);
  values[0] = 0.0;
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t i = 1; i <= stop; ++i) {
    double x = 0.5 * dt *
               (w[static_cast<std::size_t>(i) - 1] +
                w[static_cast<std::size_t>(i)]);
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
    values[static_cast<std::size_t>(i)] =
        std::max(values[static_cast<std::size_t>(i) - 1], sum + comp);
  }
  for (std::int64_t i = stop + 1; i <= n_steps; ++i) {
    values[static_cast<std::size_t>(i)] =
        values[static_cast<std::size_t>(stop)];
  }
  return values;
}

void check_clock_inputs(const SpectralGFF& field, const BrownianPath& path,
                        double gamma, double eps) {
  check_gamma(gamma);
  if (eps > field.domain.inner_margin) {
    throw_invalid("epsilon-exceeds-margin",
                  "averaging radius must stay within the stopping margin");
  }
  if (path.n_steps() > 0 && path.dt > eps * eps / 16.0) {
    throw_invalid("dt-too-coarse",
                  "clock quadrature needs dt <= eps^2 / 16");
  }
}

std::vector<Point> prefix_points(const BrownianPath& path) {
  return std::vector<Point>(
      path.positions.begin(),
      path.positions.begin() + static_cast<std::ptrdiff_t>(path.stop_index) +
          1);
}

std::vector<double> radius_along(const DomainSpec& domain,
                                 const std::vector<Point>& pts) {
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out[i] = log_conformal_radius_grid(domain, pts[i]);
  }
  return out;
}

}  // namespace

double ClockProcess::at(double t) const {
  if (t <= 0.0) return 0.0;
  double u = t / dt;
  if (u >= static_cast<double>(n_steps())) return values.back();
  auto i = static_cast<std::int64_t>(u);
  double f = u - static_cast<double>(i);
  double lo = values[static_cast<std::size_t>(i)];
  double hi = values[static_cast<std::size_t>(i) + 1];
  return lo + f * (hi - lo);
}

double log_conformal_radius_grid(const DomainSpec& domain, Point z) {
  validate_domain(domain);
  if (domain.kind == DomainKind::kUnitDisc) {
    return std::log(std::max(1.0 - std::norm(z), 2e-4));
  }
  const std::vector<double>& table = radius_node_table(domain.grid_n);
  int n = domain.grid_n;
  double x = std::clamp(z.real(), 0.0, 1.0) * n;
  double y = std::clamp(z.imag(), 0.0, 1.0) * n;
  int i = std::min(static_cast<int>(x), n - 1);
  int j = std::min(static_cast<int>(y), n - 1);
  double fx = x - i;
  double fy = y - j;
  auto at = [&table, n](int a, int b) {
    return table[static_cast<std::size_t>(b) * (n + 1) +
                 static_cast<std::size_t>(a)];
  };
  return (1.0 - fx) * (1.0 - fy) * at(i, j) + fx * (1.0 - fy) * at(i + 1, j) +
         (1.0 - fx) * fy * at(i, j + 1) + fx * fy * at(i + 1, j + 1);
}

ClockProcess clock_process(const SpectralGFF& field, const BrownianPath& path,
                           double gamma, int k, VarianceMode mode) {
  double eps = std::ldexp(1.0, -k);
  check_clock_inputs(field, path, gamma, eps);
  ClockProcess clock;
  clock.gamma = gamma;
  clock.k = k;
  clock.epsilon = eps;
  clock.dt = path.dt;
  clock.variance_mode = mode;
  clock.stop_index = path.stop_index;
  if (gamma == 0.0) {
    std::vector<double> w(static_cast<std::size_t>(path.stop_index) + 1, 1.0);
    clock.values = prefix_trapezoid(w, path.dt, path.n_steps(), path.stop_index);
    return clock;
  }
  std::vector<Point> pts = prefix_points(path);
  FieldBatchEvaluator eval(field, pts);
  std::vector<double> log_radius;
  if (mode == VarianceMode::kConformalRadiusFormula) {
    log_radius = radius_along(field.domain, pts);
  }
  std::vector<double> w =
      integrand_weights(eval, &log_radius, gamma, eps, mode);
  clock.values = prefix_trapezoid(w, path.dt, path.n_steps(), path.stop_index);
  return clock;
}

double inverse_clock(const ClockProcess& clock, double tau) {
  if (tau < 0.0 || tau > clock.total()) {
    throw_invalid("tau-beyond-range",
                  "quantum time must lie in [0, total clock]");
  }
  if (tau == clock.total()) return clock.stop_time();
  auto it = std::upper_bound(clock.values.begin(), clock.values.end(), tau);
  auto j = static_cast<std::int64_t>(it - clock.values.begin());
  double lo = clock.values[static_cast<std::size_t>(j) - 1];
  double hi = clock.values[static_cast<std::size_t>(j)];
  double frac = (tau - lo) / (hi - lo);
  return (static_cast<double>(j - 1) + frac) * clock.dt;
}

LBMTrajectory lbm_trajectory(const BrownianPath& path,
                             const ClockProcess& clock, double quantum_dt) {
  if (!(quantum_dt > 0.0)) {
    throw_invalid("invalid-quantum-dt", "quantum step must be positive");
  }
  LBMTrajectory out;
  out.quantum_dt = quantum_dt;
  out.total_quantum_time = clock.total();
  auto j_max =
      static_cast<std::int64_t>(out.total_quantum_time / quantum_dt);
  out.points.reserve(static_cast<std::size_t>(j_max) + 1);
  for (std::int64_t j = 0; j <= j_max; ++j) {
    double tau = std::min(static_cast<double>(j) * quantum_dt,
                          out.total_quantum_time);
    out.points.push_back(position_at(path, inverse_clock(clock, tau)));
  }
  return out;
}

std::vector<double> cauchy_diagnostic(const SpectralGFF& field,
                                      const BrownianPath& path, double gamma,
                                      int k_min, int k_max) {
  if (k_min >= k_max) {
    throw_invalid("invalid-scale-range", "needs k_min < k_max");
  }
  for (int k = k_min; k <= k_max; ++k) {
    check_clock_inputs(field, path, gamma, std::ldexp(1.0, -k));
  }
  std::vector<Point> pts = prefix_points(path);
  std::vector<double> alpha;
  alpha.reserve(static_cast<std::size_t>(k_max - k_min) + 1);
  if (gamma == 0.0) {
    std::vector<double> w(pts.size(), 1.0);
    double total = prefix_trapezoid(w, path.dt, path.n_steps(),
                                    path.stop_index)
                       .back();
    alpha.assign(static_cast<std::size_t>(k_max - k_min) + 1, total);
  } else {
    FieldBatchEvaluator eval(field, pts);
    std::vector<double> log_radius = radius_along(field.domain, pts);
    for (int k = k_min; k <= k_max; ++k) {
      std::vector<double> w = integrand_weights(
          eval, &log_radius, gamma, std::ldexp(1.0, -k),
          VarianceMode::kConformalRadiusFormula);
      alpha.push_back(prefix_trapezoid(w, path.dt, path.n_steps(),
                                       path.stop_index)
                          .back());
    }
  }
  std::vector<double> diffs;
  diffs.reserve(alpha.size() - 1);
  for (std::size_t i = 0; i + 1 < alpha.size(); ++i) {
    diffs.push_back(std::abs(alpha[i + 1] - alpha[i]));
  }
  return diffs;
}

NetEstimators net_estimators(const SpectralGFF& field,
                             const BrownianPath& path, double gamma, int k,
                             double s_offset) {
  double eps = std::ldexp(1.0, -k);
  check_gamma(gamma);
  if (eps > field.domain.inner_margin) {
    throw_invalid("epsilon-exceeds-margin",
                  "averaging radius must stay within the stopping margin");
  }
  double spacing = std::ldexp(1.0, -2 * k);
  if (spacing < path.dt) {
    throw_numerical("net-finer-than-path",
                    "net spacing is below the path resolution");
  }
  if (!(s_offset >= 0.0 && s_offset < spacing)) {
    throw_invalid("invalid-offset", "s_offset must lie in [0, net spacing)");
  }
  double horizon = std::min(1.0, path.stop_time());
  std::vector<Point> pts;
  for (std::int64_t j = 0;; ++j) {
    double t = s_offset + static_cast<double>(j) * spacing;
    if (t > horizon) break;
    pts.push_back(position_at(path, t));
  }
  NetEstimators out;
  out.net_size = static_cast<std::int64_t>(pts.size());
  if (gamma == 0.0) {
    out.x = spacing * static_cast<double>(pts.size());
    out.y = out.x;
    return out;
  }
  FieldBatchEvaluator eval(field, pts);
  double g2 = 0.5 * gamma * gamma;
  double sx = 0.0;
  double sy = 0.0;
  std::vector<double> hk = eval.values(eps);
  std::vector<double> hk1 = eval.values(0.5 * eps);
  double lk = std::log(eps);
  double lk1 = std::log(0.5 * eps);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sx += std::exp(gamma * hk[i] + g2 * lk);
    sy += std::exp(gamma * hk1[i] + g2 * lk1);
  }
  out.x = spacing * sx;
  out.y = spacing * sy;
  return out;
}

}  // namespace liouville
