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

#ifndef LIOUVILLE_SCALING_HPP
#define LIOUVILLE_SCALING_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "liouville/geometry.hpp"

namespace liouville {

// Covariance of the auxiliary scale-eps field:
//   c_eps(x, y) = log+(1 / (|x-y| v eps)) + phi(|x-y| / eps)
// with bump phi(u) = (1-u)+^{3/2}, the truncated power at the planar
// positive-definiteness threshold.  Exactly scale covariant for
// |x-y| <= 1: c_{lam eps}(lam x, lam y) = c_eps(x, y) + log(1/lam)
// for lam in (0,1].  Requires eps > 0.
double aux_covariance(Point x, Point y, double epsilon);

// Pointwise variance c_eps(x, x) = log+(1/eps) + 1.
double aux_sigma_sq(double epsilon);

// c_{lam eps}(lam x, lam y) - c_eps(x, y) - log(1/lam).  Zero whenever
// |x-y| <= 1 and lam in (0,1].  Requires eps > 0 and lam in (0,1].
double scaling_residual(Point x, Point y, double epsilon, double lambda);

// Joint sampler for the auxiliary field at a fixed point set.  Factors
// the covariance matrix once (symmetric eigendecomposition, eigenvalues
// below -(1e-8 max + 1e-10) rejected as not-positive-semidefinite,
// remaining negatives clamped to zero) and serves independent draws per
// (seed, replicate).  At most 2000 points; points must be pairwise
// distinct.
class AuxFieldSampler {
 public:
  AuxFieldSampler(std::vector<Point> points, double epsilon);
  ~AuxFieldSampler();
  AuxFieldSampler(AuxFieldSampler&&) noexcept;
  AuxFieldSampler& operator=(AuxFieldSampler&&) noexcept;

  // One mean-zero joint draw with covariance c_eps, from the aux stream
  // of (seed, replicate).  Same arguments give an identical vector.
  std::vector<double> sample(std::uint64_t seed, std::uint64_t replicate = 0) const;

  std::size_t size() const;
  double epsilon() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Single factor-and-draw convenience wrapper around AuxFieldSampler.
std::vector<double> sample_aux_field(const std::vector<Point>& points,
                                     double epsilon, std::uint64_t seed,
                                     std::uint64_t replicate = 0);

// Gaussian mollification of the log kernel: (f * theta_eps)(x - y) with
// f(z) = log+(1/|z|) and theta_eps the centred isotropic Gaussian of
// scale eps.  Evaluated by nested quadrature; the radial rule is run at
// two orders and a disagreement above 1e-6 raises
// quadrature-nonconvergence.
double mollified_covariance(Point x, Point y, double epsilon);

// Moment scaling exponent zeta(q) = q^2 gamma^2 / 2 - q (2 + gamma^2/2) + 2.
double zeta(double q, double gamma);

// d zeta / dq at q = 1, equal to gamma^2/2 - 2.
double zeta_prime_at_1(double gamma);

// Vertex of the zeta parabola, (2 + gamma^2/2) / gamma^2.  Infinity for
// gamma = 0, where zeta is affine and decreasing.
double zeta_minimizing_q(double gamma);

// Monte-Carlo estimate of the q-th moment of the capped occupation
// integral I = integral over [0, min(T, 0.45)] of
// exp(gamma X_eps(B_s) - (gamma^2/2) sigma_eps^2) 1{B_s in [0,1]^2} ds,
// where B starts at (0.5, 0.5), T is the exit time of (-1, 2)^2, and
// X_eps is the auxiliary field drawn jointly at the visited net points
// (spacing eps^2/4).  diagonal/cross shares decompose the same moment
// restricted to the even-even checkerboard class of dyadic squares of
// side 2^-m: diagonal keeps sum_i d_i^q, cross keeps
// (sum_i d_i)^q - sum_i d_i^q.
struct MomentEstimate {
  double q = 0.0;
  double gamma = 0.0;
  double epsilon = 0.0;
  int m = 0;
  double value = 0.0;            // mean of I^q over replicates
  double std_error = 0.0;        // sample std error of the mean
  double diagonal_share = 0.0;   // E sum d_i^q / E (sum d_i)^q
  double cross_share = 0.0;      // 1 - diagonal_share
  double class_moment = 0.0;     // mean of (sum d_i)^q over the class
  int n_replicates = 0;
};

// Requires q in (1, 2), epsilon in {2^-3, ..., 2^-6}, m in [1, 8],
// n_replicates >= 1.  Replicates use disjoint path and aux streams of
// the given seed.  Raises budget-exceeded when a replicate visits more
// than 2000 net points inside the unit square.
MomentEstimate moment_estimator(double gamma, double q, double epsilon, int m,
                                int n_replicates, std::uint64_t seed);

}  // namespace liouville

#endif  // LIOUVILLE_SCALING_HPP
