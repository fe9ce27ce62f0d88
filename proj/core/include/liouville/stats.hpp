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

#ifndef LIOUVILLE_STATS_HPP
#define LIOUVILLE_STATS_HPP

#include <cstddef>
#include <vector>

namespace liouville {

// Two-sample Kolmogorov-Smirnov comparison at the 5% level, using the
// asymptotic critical value c * sqrt((n1 + n2) / (n1 n2)) with c the
// exact Kolmogorov distribution quantile.
struct KsResult {
  double statistic = 0.0;
  double critical_5pct = 0.0;
  bool reject = false;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Requires both samples nonempty.  Ties are handled by evaluating the
// empirical gap only after consuming every copy of a tied value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Upper quantile of the Kolmogorov distribution: the c solving
// P(sup |Brownian bridge| <= c) = 1 - alpha.  Requires alpha in (0, 1).
double kolmogorov_quantile(double alpha);

// Basic sample summaries.  mean/variance need n >= 1 / n >= 2; median
// takes its argument by value and is exact for even sizes (midpoint).
double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);
double std_error(const std::vector<double>& xs);
double median(std::vector<double> xs);

}  // namespace liouville

#endif  // LIOUVILLE_STATS_HPP
