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

#include "liouville/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

// P(K <= x) = 1 - 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_cdf(double x) {
  if (x <= 0.0) return 0.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    if (term < 1e-18) break;
    sum += sign * term;
    sign = -sign;
  }
  return 1.0 - 2.0 * sum;
}

}  // namespace

double kolmogorov_quantile(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw_invalid("invalid-level", "quantile level must lie in (0, 1)");
  }
  double lo = 1e-3, hi = 4.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < 1.0 - alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw_invalid("empty-sample", "both samples need at least one value");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double stat = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    stat = std::max(stat, std::abs(i / na - j / nb));
  }
  // Once one sample is exhausted the gap only shrinks toward the final
  // value |1 - j/nb| (or symmetric); the loop above already saw it.
  stat = std::max(stat, std::abs(1.0 - static_cast<double>(j) / nb));
  stat = std::max(stat, std::abs(static_cast<double>(i) / na - 1.0));

  static const double kC5 = kolmogorov_quantile(0.05);
  KsResult out;
  out.statistic = stat;
  out.n1 = a.size();
  out.n2 = b.size();
  out.critical_5pct = kC5 * std::sqrt((na + nb) / (na * nb));
  out.reject = stat > out.critical_5pct;
  return out;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw_invalid("empty-sample", "mean needs data");
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) {
    throw_invalid("empty-sample", "variance needs at least two values");
  }
  const double m = mean(xs);
  double ssq = 0.0;
  for (double x : xs) ssq += (x - m) * (x - m);
  return ssq / (static_cast<double>(xs.size()) - 1.0);
}

double std_error(const std::vector<double>& xs) {
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw_invalid("empty-sample", "median needs data");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace liouville
