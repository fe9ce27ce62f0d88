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

#ifndef LIOUVILLE_GFF_HPP
#define LIOUVILLE_GFF_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "liouville/geometry.hpp"

namespace liouville {

// Square carrier of the sine eigenbasis.  Unit-square fields use the
// domain itself; disc fields restrict a field sampled on a concentric
// square strictly containing the disc.
struct SquareBox {
  double side = 1.0;
  Point origin{0.0, 0.0};  // lower-left corner
};

// Spectral sample of the zero-boundary Gaussian free field: coefficients
// of the H_0^1-orthonormal basis sqrt(2 pi / lambda) e_mn, so that
// Cov h(x) h(y) equals the Green function under the -log|x-y|
// normalization.  Modes are ordered by (m^2+n^2, m, n).
struct SpectralGFF {
  DomainSpec domain;
  SquareBox box;
  std::vector<std::int32_t> mode_m;
  std::vector<std::int32_t> mode_n;
  std::vector<double> lambda;  // pi^2 (m^2+n^2) / side^2, nondecreasing
  std::vector<double> coeff;   // X_mn sqrt(2 pi / lambda), X_mn iid N(0,1)
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;

  std::int64_t n_modes() const {
    return static_cast<std::int64_t>(coeff.size());
  }
};

// Samples a field on the unit square (UnitSquare domains only; disc
// domains go through sample_disc_field).  Deterministic per
// (seed, replicate); replicates use disjoint counter substreams.
SpectralGFF sample_gff(const DomainSpec& domain, std::int64_t n_modes,
                       std::uint64_t seed, std::uint64_t replicate = 0);

// Field serving a UnitDisc domain, carried by the concentric square
// [-3/2, 3/2]^2 and restricted to the disc by evaluation.
SpectralGFF sample_disc_field(const DomainSpec& domain, std::int64_t n_modes,
                              std::uint64_t seed, std::uint64_t replicate = 0);

// Prefix truncation onto the first n modes; keeps seed metadata.
SpectralGFF project_field(const SpectralGFF& field, std::int64_t n);

// Pointwise field value (mode sum); test and export plumbing.
double field_value(const SpectralGFF& field, Point z);

// Circle averages are exact in the spectral representation: averaging a
// Laplacian eigenfunction over a radius-eps circle multiplies its center
// value by J0(sqrt(lambda) eps).
struct CircleAverageEvaluator {
  const SpectralGFF* field = nullptr;
  double epsilon = 0.0;
  std::vector<double> attenuation;  // J0(sqrt(lambda_i) * epsilon)
};

CircleAverageEvaluator circle_evaluator(const SpectralGFF& field,
                                        double epsilon);

// h_eps(z).  Throws boundary-proximity when the circle exits the domain.
double circle_average(const CircleAverageEvaluator& eval, Point z);

struct CircleVariance {
  double value = 0.0;          // analytic mode sum of Var h_eps(z)
  double tail_estimate = 0.0;  // mass beyond the truncation, ~ 1/(pi eps L)
  bool truncated = false;      // tail_estimate above the 0.02 threshold
};

// Var h_eps(z) for the truncated field: sum (2 pi / lambda) J0^2 e_mn(z)^2.
// Approaches -log eps + log R(z; D) as the truncation grows.
CircleVariance circle_average_variance(const DomainSpec& domain, Point z,
                                       double epsilon, std::int64_t n_modes);

// Batched evaluation of circle averages and variances at a fixed point
// set.  Builds per-coordinate sine tables once; each epsilon costs one
// matrix product over the mode box.  Read-only after construction.
class FieldBatchEvaluator {
 public:
  FieldBatchEvaluator(const SpectralGFF& field,
                      const std::vector<Point>& points);
  ~FieldBatchEvaluator();
  FieldBatchEvaluator(const FieldBatchEvaluator&) = delete;
  FieldBatchEvaluator& operator=(const FieldBatchEvaluator&) = delete;

  // h_eps at every point; epsilon = 0 evaluates the raw field.
  std::vector<double> values(double epsilon) const;
  // Analytic Var h_eps at every point (coefficient-independent).
  std::vector<double> variances(double epsilon) const;

  std::size_t size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

namespace detail {

// Per-mode Bessel attenuation for radius eps, reusing values across the
// runs of equal eigenvalue that the (m^2+n^2, m, n) ordering produces.
std::vector<double> bessel_attenuation(const std::vector<double>& lambda,
                                       double epsilon);

}  // namespace detail

}  // namespace liouville

#endif  // LIOUVILLE_GFF_HPP
