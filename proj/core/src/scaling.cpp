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

#include "liouville/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "liouville/errors.hpp"
#include "liouville/rng.hpp"

namespace liouville {

namespace {

constexpr std::size_t kAuxPointBudget = 2000;
constexpr double kMomentTimeCap = 0.45;

void check_scale(double epsilon) {
  if (!(epsilon > 0.0)) {
    throw_invalid("invalid-scale", "mollification scale must be positive");
  }
}

double log_plus_inverse(double r) {
  return r < 1.0 ? -std::log(r) : 0.0;
}

}  // namespace

double aux_covariance(Point x, Point y, double epsilon) {
  check_scale(epsilon);
  const double r = std::abs(x - y);
  // Truncated-power bump at the planar positive-definiteness threshold
  // (1-u)+^{(d+1)/2}; smaller exponents yield indefinite matrices on
  // spread-out point sets.
  const double u = std::max(1.0 - r / epsilon, 0.0);
  return log_plus_inverse(std::max(r, epsilon)) + u * std::sqrt(u);
}

double aux_sigma_sq(double epsilon) {
  check_scale(epsilon);
  return log_plus_inverse(epsilon) + 1.0;
}

double scaling_residual(Point x, Point y, double epsilon, double lambda) {
  check_scale(epsilon);
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw_invalid("invalid-scale", "zoom factor must lie in (0, 1]");
  }
  return aux_covariance(lambda * x, lambda * y, lambda * epsilon) -
         aux_covariance(x, y, epsilon) - std::log(1.0 / lambda);
}

struct AuxFieldSampler::Impl {
  double eps = 0.0;
  Eigen::MatrixXd factor;  // V sqrt(clamped eigenvalues)
};

AuxFieldSampler::AuxFieldSampler(std::vector<Point> points, double epsilon)
    : impl_(std::make_unique<Impl>()) {
  check_scale(epsilon);
  if (points.size() > kAuxPointBudget) {
    throw_invalid("budget-exceeded",
                  "joint sampling is limited to 2000 points");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].real() != points[b].real()
               ? points[a].real() < points[b].real()
               : points[a].imag() < points[b].imag();
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i - 1]] == points[order[i]]) {
      throw_invalid("duplicate-points",
                    "joint sampling needs pairwise distinct points");
    }
  }
  impl_->eps = epsilon;
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cov(i, i) = aux_sigma_sq(epsilon);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double c = aux_covariance(points[i], points[j], epsilon);
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw_numerical("factorization-failed",
                    "eigendecomposition of the covariance did not converge");
  }
  Eigen::VectorXd evals = solver.eigenvalues();
  const double ev_max = n > 0 ? std::max(evals.maxCoeff(), 0.0) : 0.0;
  const double floor = -(1e-8 * ev_max + 1e-10);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (evals[i] < floor) {
      throw_numerical("not-positive-semidefinite",
                      "covariance matrix has a significant negative eigenvalue");
    }
    evals[i] = std::sqrt(std::max(evals[i], 0.0));
  }
  impl_->factor = solver.eigenvectors() * evals.asDiagonal();
}

AuxFieldSampler::~AuxFieldSampler() = default;
AuxFieldSampler::AuxFieldSampler(AuxFieldSampler&&) noexcept = default;
AuxFieldSampler& AuxFieldSampler::operator=(AuxFieldSampler&&) noexcept =
    default;

std::vector<double> AuxFieldSampler::sample(std::uint64_t seed,
                                            std::uint64_t replicate) const {
  const Eigen::Index n = impl_->factor.rows();
  Philox rng(seed, stream_id(replicate, StreamPurpose::kAux));
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.normal();
  Eigen::VectorXd draw = impl_->factor * z;
  return std::vector<double>(draw.data(), draw.data() + n);
}

std::size_t AuxFieldSampler::size() const {
  return static_cast<std::size_t>(impl_->factor.rows());
}

double AuxFieldSampler::epsilon() const { return impl_->eps; }

std::vector<double> sample_aux_field(const std::vector<Point>& points,
                                     double epsilon, std::uint64_t seed,
                                     std::uint64_t replicate) {
  return AuxFieldSampler(points, epsilon).sample(seed, replicate);
}

namespace {

// Angular mean of log+(1/r) over the circle of radius s whose centre sits
// at distance a from the singularity.  The unclamped mean is
// log(1 / max(a, s)); the clamp either leaves it unchanged (a + s <= 1),
// kills it (|a - s| >= 1), or restricts the integral to the arc where
// r < 1.
double angular_log_mean(double a, double s) {
  if (s <= 0.0) return log_plus_inverse(a);
  if (a <= 0.0) return log_plus_inverse(s);
  if (a + s <= 1.0) return -std::log(std::max(a, s));
  if (std::abs(a - s) >= 1.0) return 0.0;
  const double cos_star =
      std::clamp((a * a + s * s - 1.0) / (2.0 * a * s), -1.0, 1.0);
  const double phi_star = std::acos(cos_star);
  const auto integrand = [a, s](double phi) {
    const double r_sq = a * a + s * s - 2.0 * a * s * std::cos(phi);
    return -0.5 * std::log(r_sq);
  };
  const double arc =
      boost::math::quadrature::gauss<double, 64>::integrate(integrand, 0.0,
                                                            phi_star);
  return arc / M_PI;
}

// The angular mean changes analytic form where s = epsilon x crosses a,
// 1 - a, a - 1 and a + 1.  Integrating each smooth piece separately keeps
// the fixed-order rules convergent.
template <unsigned Order>
double radial_integral(double a, double epsilon) {
  const auto integrand = [a, epsilon](double x) {
    return x * std::exp(-0.5 * x * x) * angular_log_mean(a, epsilon * x);
  };
  double cuts[8] = {4.0,
                    8.0,
                    a / epsilon,
                    (1.0 - a) / epsilon,
                    (a - 1.0) / epsilon,
                    (a + 1.0) / epsilon,
                    8.0,
                    8.0};
  std::sort(std::begin(cuts), std::end(cuts));
  using rule = boost::math::quadrature::gauss<double, Order>;
  double total = 0.0;
  double lo = 0.0;
  for (double cut : cuts) {
    const double hi = std::clamp(cut, 0.0, 8.0);
    if (hi > lo + 1e-12) total += rule::integrate(integrand, lo, hi);
    lo = std::max(lo, hi);
  }
  if (lo < 8.0) total += rule::integrate(integrand, lo, 8.0);
  return total;
}

}  // namespace

double mollified_covariance(Point x, Point y, double epsilon) {
  check_scale(epsilon);
  const double a = std::abs(x - y);
  const double coarse = radial_integral<64>(a, epsilon);
  const double fine = radial_integral<128>(a, epsilon);
  if (std::abs(coarse - fine) > 1e-6) {
    throw_numerical("quadrature-nonconvergence",
                    "radial quadrature orders disagree beyond 1e-6");
  }
  return fine;
}

double zeta(double q, double gamma) {
  return 0.5 * q * q * gamma * gamma - q * (2.0 + 0.5 * gamma * gamma) + 2.0;
}

double zeta_prime_at_1(double gamma) { return 0.5 * gamma * gamma - 2.0; }

double zeta_minimizing_q(double gamma) {
  if (gamma == 0.0) return std::numeric_limits<double>::infinity();
  return (2.0 + 0.5 * gamma * gamma) / (gamma * gamma);
}

namespace {

bool is_supported_moment_scale(double epsilon) {
  for (int k = 3; k <= 6; ++k) {
    if (epsilon == std::ldexp(1.0, -k)) return true;
  }
  return false;
}

}  // namespace

MomentEstimate moment_estimator(double gamma, double q, double epsilon, int m,
                                int n_replicates, std::uint64_t seed) {
  if (!(gamma >= 0.0) || gamma >= 2.0) {
    throw_invalid("gamma-out-of-range", "gamma must lie in [0, 2)");
  }
  if (!(q > 1.0) || !(q < 2.0)) {
    throw_invalid("invalid-moment-order", "moment order must lie in (1, 2)");
  }
  if (!is_supported_moment_scale(epsilon)) {
    throw_invalid("invalid-scale",
                  "moment scale must be one of 2^-3 .. 2^-6");
  }
  if (m < 1 || m > 8) {
    throw_invalid("invalid-depth", "checkerboard depth must lie in [1, 8]");
  }
  if (n_replicates < 1) {
    throw_invalid("invalid-replicates", "need at least one replicate");
  }

  const double dt = epsilon * epsilon / 4.0;
  const long long n_max = static_cast<long long>(kMomentTimeCap / dt);
  const double sigma_step = std::sqrt(dt);
  const double sigma_sq = aux_sigma_sq(epsilon);
  const int cells = 1 << m;

  std::vector<double> moments(static_cast<std::size_t>(n_replicates));
  double diag_total = 0.0;
  double class_total = 0.0;

  std::vector<Point> in_square;
  std::vector<double> cell_mass(static_cast<std::size_t>(cells) * cells);
  for (int rep = 0; rep < n_replicates; ++rep) {
    in_square.clear();
    Philox rng(seed,
               stream_id(static_cast<std::uint64_t>(rep), StreamPurpose::kPath));
    Point pos{0.5, 0.5};
    for (long long step = 0; step < n_max; ++step) {
      const double px = pos.real();
      const double py = pos.imag();
      if (px > -1.0 && px < 2.0 && py > -1.0 && py < 2.0) {
        if (px >= 0.0 && px <= 1.0 && py >= 0.0 && py <= 1.0) {
          in_square.push_back(pos);
        }
      } else {
        break;
      }
      const double dx = sigma_step * rng.normal();
      const double dy = sigma_step * rng.normal();
      pos += Point{dx, dy};
    }
    if (in_square.size() > kAuxPointBudget) {
      // Data-dependent: the sampled path decides how many net points land
      // inside the square, so this is a numerical abort, not a caller bug.
      throw_numerical(
          "budget-exceeded",
          "replicate visits more than 2000 net points in the square");
    }

    std::vector<double> field;
    if (gamma > 0.0 && !in_square.empty()) {
      field = sample_aux_field(in_square, epsilon, seed,
                               static_cast<std::uint64_t>(rep));
    }
    std::fill(cell_mass.begin(), cell_mass.end(), 0.0);
    double integral = 0.0;
    for (std::size_t i = 0; i < in_square.size(); ++i) {
      const double weight =
          gamma > 0.0 ? std::exp(gamma * field[i] - 0.5 * gamma * gamma * sigma_sq)
                      : 1.0;
      integral += dt * weight;
      const int ix =
          std::min(static_cast<int>(in_square[i].real() * cells), cells - 1);
      const int iy =
          std::min(static_cast<int>(in_square[i].imag() * cells), cells - 1);
      if (ix % 2 == 0 && iy % 2 == 0) {
        cell_mass[static_cast<std::size_t>(ix) * cells + iy] += dt * weight;
      }
    }
    moments[static_cast<std::size_t>(rep)] = std::pow(integral, q);

    double diag = 0.0;
    double class_sum = 0.0;
    for (double d : cell_mass) {
      if (d > 0.0) {
        diag += std::pow(d, q);
        class_sum += d;
      }
    }
    diag_total += diag;
    class_total += std::pow(class_sum, q);
  }

  MomentEstimate out;
  out.q = q;
  out.gamma = gamma;
  out.epsilon = epsilon;
  out.m = m;
  out.n_replicates = n_replicates;
  const double n = static_cast<double>(n_replicates);
  out.value = std::accumulate(moments.begin(), moments.end(), 0.0) / n;
  if (n_replicates > 1) {
    double ssq = 0.0;
    for (double v : moments) ssq += (v - out.value) * (v - out.value);
    out.std_error = std::sqrt(ssq / (n - 1.0) / n);
  }
  out.class_moment = class_total / n;
  if (class_total > 0.0) {
    out.diagonal_share = diag_total / class_total;
    out.cross_share = 1.0 - out.diagonal_share;
  }
  return out;
}

}  // namespace liouville
