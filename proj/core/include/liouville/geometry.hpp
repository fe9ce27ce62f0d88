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

#ifndef LIOUVILLE_GEOMETRY_HPP
#define LIOUVILLE_GEOMETRY_HPP

#include <complex>
#include <cstdint>

namespace liouville {

using Point = std::complex<double>;

enum class DomainKind {
  kUnitSquare,  // (0,1)^2
  kUnitDisc,    // |z| < 1
};

struct DomainSpec {
  DomainKind kind = DomainKind::kUnitSquare;
  // Stopping margin r: paths are stopped on first contact with the set
  // {dist(z, boundary) <= inner_margin}.
  double inner_margin = 0.125;
  // Lattice resolution per side for grid exports and cached grids.
  int grid_n = 64;
};

// Throws invalid-margin / invalid-grid on constraint violations
// (0 < inner_margin < 1/2, grid_n >= 16).
void validate_domain(const DomainSpec& domain);

double dist_to_boundary(const DomainSpec& domain, Point z);
bool is_interior(const DomainSpec& domain, Point z);
Point domain_center(const DomainSpec& domain);

// Green function of the domain, normalized so G(x, y) ~ -log|x - y| as
// y -> x (2 pi times the classical Dirichlet Green function).  The square
// uses a spectral sum over the first n_modes Laplacian modes; the disc
// uses the closed form log|1 - x conj(y)| - log|x - y|.
double green_function(const DomainSpec& domain, Point x, Point y,
                      std::int64_t n_modes);

// Conformal radius R(z; D): exp(lim_{y->z} [G(z,y) + log|z-y|]).  Closed
// form 1 - |z|^2 on the disc; Richardson extrapolation of the spectral
// Green function on the square (throws insufficient-modes when successive
// extrapolants disagree by more than 0.02).
double conformal_radius(const DomainSpec& domain, Point z,
                        std::int64_t n_modes);

enum class MapKind {
  kDiscAutomorphism,  // z -> e^{i theta} (z - a) / (1 - conj(a) z)
  kAffine,            // z -> scale e^{i rotation} z + translation
};

enum class MapDirection { kForward, kInverse };

struct ConformalMap {
  MapKind kind = MapKind::kDiscAutomorphism;
  Point a{0.0, 0.0};  // |a| < 1
  double theta = 0.0;
  double scale = 1.0;
  double rotation = 0.0;
  Point translation{0.0, 0.0};
};

ConformalMap disc_automorphism(Point a, double theta);
ConformalMap affine_map(double scale, double rotation, Point translation);

Point map_apply(const ConformalMap& map, Point z, MapDirection direction);
double map_derivative_modulus(const ConformalMap& map, Point z,
                              MapDirection direction);

namespace detail {

// log R(z; unit square).  Lenient mode serves grid caches: it skips the
// extrapolant consistency gate and switches to the boundary asymptotic
// log(2 dist) when dist(z, boundary) < 0.05.
double log_conformal_radius_square(Point z, std::int64_t n_modes,
                                   bool lenient);

}  // namespace detail

}  // namespace liouville

#endif  // LIOUVILLE_GEOMETRY_HPP
