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

#include "liouville/gff.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include <Eigen/Dense>

#include "liouville/errors.hpp"
#include "liouville/modes.hpp"
#include "liouville/rng.hpp"

namespace liouville {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

SpectralGFF sample_on_box(const DomainSpec& domain, const SquareBox& box,
                          std::int64_t n_modes, std::uint64_t seed,
                          std::uint64_t replicate) {
  if (n_modes < 64) {
    throw_invalid("invalid-mode-count", "sampling needs at least 64 modes");
  }
  ModeTable table = mode_table(n_modes);
  SpectralGFF field;
  field.domain = domain;
  field.box = box;
  field.mode_m = std::move(table.m);
  field.mode_n = std::move(table.n);
  field.seed = seed;
  field.replicate = replicate;
  field.lambda.resize(static_cast<std::size_t>(n_modes));
  field.coeff.resize(static_cast<std::size_t>(n_modes));
  double side2 = box.side * box.side;
  Philox rng(seed, stream_id(replicate, StreamPurpose::kField));
  for (std::size_t i = 0; i < field.lambda.size(); ++i) {
    double s = static_cast<double>(field.mode_m[i]) * field.mode_m[i] +
               static_cast<double>(field.mode_n[i]) * field.mode_n[i];
    double lam = kPi * kPi * s / side2;
    field.lambda[i] = lam;
    field.coeff[i] = rng.normal() * std::sqrt(kTwoPi / lam);
  }
  return field;
}

// e_mn(z) on the carrier box, L^2-normalized.
inline double basis_value(const SquareBox& box, std::int32_t m,
                          std::int32_t n, Point z) {
  double u = (z.real() - box.origin.real()) / box.side;
  double v = (z.imag() - box.origin.imag()) / box.side;
  return (2.0 / box.side) * std::sin(m * kPi * u) * std::sin(n * kPi * v);
}

}  // namespace

namespace detail {

std::vector<double> bessel_attenuation(const std::vector<double>& lambda,
                                       double epsilon) {
  std::vector<double> att(lambda.size(), 1.0);
  if (epsilon == 0.0) return att;
  double prev_lambda = -1.0;
  double prev_value = 1.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] != prev_lambda) {
      prev_lambda = lambda[i];
      prev_value = boost::math::cyl_bessel_j(0, std::sqrt(lambda[i]) * epsilon);
    }
    att[i] = prev_value;
  }
  return att;
}

}  // namespace detail

SpectralGFF sample_gff(const DomainSpec& domain, std::int64_t n_modes,
                       std::uint64_t seed, std::uint64_t replicate) {
  validate_domain(domain);
  if (domain.kind != DomainKind::kUnitSquare) {
    throw_invalid("unsupported-domain",
                  "direct sampling is defined on the unit square; disc "
                  "fields go through sample_disc_field");
  }
  SquareBox box;
  return sample_on_box(domain, box, n_modes, seed, replicate);
}

SpectralGFF sample_disc_field(const DomainSpec& domain, std::int64_t n_modes,
                              std::uint64_t seed, std::uint64_t replicate) {
  validate_domain(domain);
  if (domain.kind != DomainKind::kUnitDisc) {
    throw_invalid("unsupported-domain",
                  "sample_disc_field serves UnitDisc domains");
  }
  SquareBox box;
  box.side = 3.0;
  box.origin = Point(-1.5, -1.5);
  return sample_on_box(domain, box, n_modes, seed, replicate);
}

SpectralGFF project_field(const SpectralGFF& field, std::int64_t n) {
  if (n < 1 || n > field.n_modes()) {
    throw_invalid("out-of-range",
                  "projection size must lie in [1, n_modes]");
  }
  SpectralGFF out;
  out.domain = field.domain;
  out.box = field.box;
  out.seed = field.seed;
  out.replicate = field.replicate;
  auto count = static_cast<std::size_t>(n);
  out.mode_m.assign(field.mode_m.begin(), field.mode_m.begin() + count);
  out.mode_n.assign(field.mode_n.begin(), field.mode_n.begin() + count);
  out.lambda.assign(field.lambda.begin(), field.lambda.begin() + count);
  out.coeff.assign(field.coeff.begin(), field.coeff.begin() + count);
  return out;
}

double field_value(const SpectralGFF& field, Point z) {
  double sum = 0.0;
  for (std::size_t i = 0; i < field.coeff.size(); ++i) {
    sum += field.coeff[i] *
           basis_value(field.box, field.mode_m[i], field.mode_n[i], z);
  }
  return sum;
}

CircleAverageEvaluator circle_evaluator(const SpectralGFF& field,
                                        double epsilon) {
  if (epsilon < 0.0) {
    throw_invalid("invalid-radius", "circle radius must be nonnegative");
  }
  CircleAverageEvaluator eval;
  eval.field = &field;
  eval.epsilon = epsilon;
  eval.attenuation = detail::bessel_attenuation(field.lambda, epsilon);
  return eval;
}

double circle_average(const CircleAverageEvaluator& eval, Point z) {
  const SpectralGFF& field = *eval.field;
  if (dist_to_boundary(field.domain, z) <= eval.epsilon) {
    throw_numerical("boundary-proximity",
                    "averaging circle exits the domain");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < field.coeff.size(); ++i) {
    sum += field.coeff[i] * eval.attenuation[i] *
           basis_value(field.box, field.mode_m[i], field.mode_n[i], z);
  }
  return sum;
}

CircleVariance circle_average_variance(const DomainSpec& domain, Point z,
                                       double epsilon, std::int64_t n_modes) {
  validate_domain(domain);
  if (!(epsilon > 0.0)) {
    throw_invalid("invalid-radius", "circle radius must be positive");
  }
  if (dist_to_boundary(domain, z) <= epsilon) {
    throw_numerical("boundary-proximity",
                    "averaging circle exits the domain");
  }
  SquareBox box;
  if (domain.kind == DomainKind::kUnitDisc) {
    box.side = 3.0;
    box.origin = Point(-1.5, -1.5);
  }
  ModeTable table = mode_table(n_modes);
  double side2 = box.side * box.side;
  CircleVariance out;
  double sum = 0.0;
  double lambda_max = 0.0;
  double prev_lambda = -1.0;
  double prev_j0 = 1.0;
  for (std::size_t i = 0; i < table.m.size(); ++i) {
    double s = static_cast<double>(table.m[i]) * table.m[i] +
               static_cast<double>(table.n[i]) * table.n[i];
    double lam = kPi * kPi * s / side2;
    if (lam != prev_lambda) {
      prev_lambda = lam;
      prev_j0 = boost::math::cyl_bessel_j(0, std::sqrt(lam) * epsilon);
    }
    double e = basis_value(box, table.m[i], table.n[i], z);
    sum += (kTwoPi / lam) * prev_j0 * prev_j0 * e * e;
    lambda_max = lam;
  }
  out.value = sum;
  out.tail_estimate = 1.0 / (kPi * epsilon * std::sqrt(lambda_max));
  out.truncated = out.tail_estimate > 0.02;
  return out;
}

struct FieldBatchEvaluator::Impl {
  const SpectralGFF* field;
  std::int32_t mbox;
  Eigen::MatrixXd sx, sy;  // P x mbox sine tables, built once
};

FieldBatchEvaluator::FieldBatchEvaluator(const SpectralGFF& field,
                                         const std::vector<Point>& points)
    : impl_(new Impl) {
  impl_->field = &field;
  std::int32_t mbox = 0;
  for (std::size_t i = 0; i < field.mode_m.size(); ++i) {
    mbox = std::max(mbox, std::max(field.mode_m[i], field.mode_n[i]));
  }
  impl_->mbox = mbox;
  auto p = static_cast<Eigen::Index>(points.size());
  impl_->sx.resize(p, mbox);
  impl_->sy.resize(p, mbox);
  const SquareBox& box = field.box;
  for (Eigen::Index r = 0; r < p; ++r) {
    double u = kPi * (points[static_cast<std::size_t>(r)].real() -
                      box.origin.real()) /
               box.side;
    double v = kPi * (points[static_cast<std::size_t>(r)].imag() -
                      box.origin.imag()) /
               box.side;
    for (std::int32_t m = 1; m <= mbox; ++m) {
      impl_->sx(r, m - 1) = std::sin(m * u);
      impl_->sy(r, m - 1) = std::sin(m * v);
    }
  }
}

FieldBatchEvaluator::~FieldBatchEvaluator() = default;

std::size_t FieldBatchEvaluator::size() const {
  return static_cast<std::size_t>(impl_->sx.rows());
}

namespace {

// out_p = sum_mn SX(p,m) W(m,n) SY(p,n), evaluated in row chunks so the
// intermediate product stays cache-sized.
std::vector<double> bilinear_rows(const Eigen::MatrixXd& sx,
                                  const Eigen::MatrixXd& sy,
                                  const Eigen::MatrixXd& w) {
  const Eigen::Index rows = sx.rows();
  const Eigen::Index chunk = 4096;
  std::vector<double> out(static_cast<std::size_t>(rows));
  for (Eigen::Index r0 = 0; r0 < rows; r0 += chunk) {
    Eigen::Index len = std::min(chunk, rows - r0);
    Eigen::MatrixXd t = sx.middleRows(r0, len) * w;
    Eigen::VectorXd v =
        t.cwiseProduct(sy.middleRows(r0, len)).rowwise().sum();
    for (Eigen::Index i = 0; i < len; ++i) {
      out[static_cast<std::size_t>(r0 + i)] = v(i);
    }
  }
  return out;
}

}  // namespace

std::vector<double> FieldBatchEvaluator::values(double epsilon) const {
  const SpectralGFF& field = *impl_->field;
  std::vector<double> att = detail::bessel_attenuation(field.lambda, epsilon);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(impl_->mbox, impl_->mbox);
  double scale = 2.0 / field.box.side;
  for (std::size_t i = 0; i < field.coeff.size(); ++i) {
    w(field.mode_m[i] - 1, field.mode_n[i] - 1) =
        field.coeff[i] * att[i] * scale;
  }
  return bilinear_rows(impl_->sx, impl_->sy, w);
}

std::vector<double> FieldBatchEvaluator::variances(double epsilon) const {
  const SpectralGFF& field = *impl_->field;
  std::vector<double> att = detail::bessel_attenuation(field.lambda, epsilon);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(impl_->mbox, impl_->mbox);
  double scale = 4.0 / (field.box.side * field.box.side);
  for (std::size_t i = 0; i < field.coeff.size(); ++i) {
    w(field.mode_m[i] - 1, field.mode_n[i] - 1) =
        (kTwoPi / field.lambda[i]) * att[i] * att[i] * scale;
  }
  Eigen::MatrixXd sx2 = impl_->sx.cwiseAbs2();
  Eigen::MatrixXd sy2 = impl_->sy.cwiseAbs2();
  return bilinear_rows(sx2, sy2, w);
}

}  // namespace liouville
