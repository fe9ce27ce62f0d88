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

#include "liouville/geometry.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "liouville/errors.hpp"
#include "liouville/modes.hpp"
#include "liouville/rng.hpp"
#include "oracles.hpp"

using liouville::DomainKind;
using liouville::DomainSpec;
using liouville::MapDirection;
using liouville::Point;

namespace {

DomainSpec square() {
  DomainSpec d;
  d.kind = DomainKind::kUnitSquare;
  return d;
}

DomainSpec disc() {
  DomainSpec d;
  d.kind = DomainKind::kUnitDisc;
  return d;
}

bool has_code(const liouville::Error& e, const char* code) {
  return e.code() == code;
}

}  // namespace

TEST_CASE("oracle series reproduces its frozen constants") {
  CHECK(oracles::log_conformal_radius_square({0.5, 0.5}) ==
        doctest::Approx(oracles::kLogRadiusCenter).epsilon(1e-12));
  CHECK(oracles::log_conformal_radius_square({0.3, 0.4}) ==
        doctest::Approx(oracles::kLogRadius0304).epsilon(1e-12));
  // Symmetry of the resummed series itself.
  CHECK(oracles::green_square({0.3, 0.4}, {0.6, 0.7}) ==
        doctest::Approx(oracles::green_square({0.6, 0.7}, {0.3, 0.4}))
            .epsilon(1e-11));
}

TEST_CASE("mode ordering is (m^2+n^2, m, n)") {
  auto t = liouville::mode_table(10);
  int em[] = {1, 1, 2, 2, 1, 3, 2, 3, 1, 4};
  int en[] = {1, 2, 1, 2, 3, 1, 3, 2, 4, 1};
  REQUIRE(t.m.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(t.m[i] == em[i]);
    CHECK(t.n[i] == en[i]);
  }
  CHECK(liouville::mode_count_below(8) == 4);
  auto cut = liouville::mode_cutoff(3);
  CHECK(cut.s_full == 5);
  CHECK(cut.tie_take == 2);
}

TEST_CASE("disc green function closed form") {
  auto d = disc();
  CHECK(liouville::green_function(d, {0.0, 0.0}, {0.5, 0.0}, 1) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // Symmetry at an asymmetric pair.
  double a = liouville::green_function(d, {0.2, 0.1}, {-0.4, 0.55}, 1);
  double b = liouville::green_function(d, {-0.4, 0.55}, {0.2, 0.1}, 1);
  CHECK(a == doctest::Approx(b).epsilon(1e-14));
  CHECK(a > 0.0);
}

TEST_CASE("square green function matches the resummed series") {
  auto d = square();
  double v = liouville::green_function(d, {0.3, 0.4}, {0.6, 0.7}, 65536);
  CHECK(std::abs(v - oracles::green_square({0.3, 0.4}, {0.6, 0.7})) < 1e-3);
  double w = liouville::green_function(d, {0.2, 0.7}, {0.25, 0.25}, 65536);
  CHECK(std::abs(w - oracles::green_square({0.2, 0.7}, {0.25, 0.25})) < 1e-3);
}

TEST_CASE("square green function resolves the log singularity") {
  auto d = square();
  double v = liouville::green_function(d, {0.5, 0.5}, {0.501, 0.5}, 8000000);
  CHECK(std::abs(v + std::log(1e-3) - oracles::kLogRadiusCenter) < 0.05);
}

TEST_CASE("green function symmetry on random interior pairs") {
  liouville::Philox g(7, 0);
  auto ds = square();
  auto dd = disc();
  for (int i = 0; i < 100; ++i) {
    Point x(0.1 + 0.8 * g.uniform(), 0.1 + 0.8 * g.uniform());
    Point y(0.1 + 0.8 * g.uniform(), 0.1 + 0.8 * g.uniform());
    if (std::abs(x - y) < 1e-6) continue;
    double a = liouville::green_function(ds, x, y, 4096);
    double b = liouville::green_function(ds, y, x, 4096);
    CHECK(std::abs(a - b) < 1e-10);
    Point u = 0.9 * (x - Point(0.5, 0.5)) * 2.0;
    Point v = 0.9 * (y - Point(0.5, 0.5)) * 2.0;
    CHECK(std::abs(liouville::green_function(dd, u, v, 1) -
                   liouville::green_function(dd, v, u, 1)) < 1e-10);
  }
}

TEST_CASE("green function argument validation") {
  auto d = square();
  CHECK_THROWS_WITH_AS(
      liouville::green_function(d, {0.5, 0.5}, {1.5, 0.5}, 64),
      doctest::Contains("out-of-domain"), liouville::Error);
  CHECK_THROWS_WITH_AS(
      liouville::green_function(d, {0.5, 0.5}, {0.5, 0.5 + 1e-15}, 64),
      doctest::Contains("coincident-points"), liouville::Error);
  try {
    liouville::green_function(d, {0.5, 0.5}, {0.5, 0.5}, 64);
    FAIL("expected a coincident-points error");
  } catch (const liouville::Error& e) {
    CHECK(has_code(e, "coincident-points"));
    CHECK(e.kind() == liouville::ErrorKind::kInvalidArgument);
  }
}

TEST_CASE("disc conformal radius closed form") {
  auto d = disc();
  CHECK(liouville::conformal_radius(d, {0.0, 0.0}, 1) == 1.0);
  CHECK(liouville::conformal_radius(d, {0.5, 0.0}, 1) ==
        doctest::Approx(0.75).epsilon(1e-14));
  liouville::Philox g(11, 0);
  for (int i = 0; i < 50; ++i) {
    Point z = std::polar(0.95 * g.uniform(), 6.28 * g.uniform());
    CHECK(std::abs(liouville::conformal_radius(d, z, 1) -
                   (1.0 - std::norm(z))) < 1e-12);
  }
}

TEST_CASE("square conformal radius matches the series oracle") {
  auto d = square();
  const std::int64_t n512 = 262144;
  struct Case {
    Point z;
    double log_r;
  } cases[] = {
      {{0.5, 0.5}, oracles::kLogRadiusCenter},
      {{0.3, 0.4}, oracles::kLogRadius0304},
      {{0.25, 0.25}, oracles::kLogRadius2525},
      {{0.2, 0.7}, oracles::kLogRadius0207},
  };
  for (const auto& c : cases) {
    double r = liouville::conformal_radius(d, c.z, n512);
    CHECK(std::abs(std::log(r) - c.log_r) < 0.02);
  }
  // Reproducibility across truncation levels.
  double a = liouville::conformal_radius(d, {0.5, 0.5}, 65536);
  double b = liouville::conformal_radius(d, {0.5, 0.5}, n512);
  CHECK(std::abs(std::log(a) - std::log(b)) < 0.01);
  CHECK(b > 0.0);
  CHECK(b < 1.0);
}

TEST_CASE("square conformal radius rejects starved truncations") {
  auto d = square();
  try {
    liouville::conformal_radius(d, {0.5, 0.5}, 256);
    FAIL("expected an insufficient-modes error");
  } catch (const liouville::Error& e) {
    CHECK(has_code(e, "insufficient-modes"));
    CHECK(e.kind() == liouville::ErrorKind::kNumerical);
  }
}

TEST_CASE("lenient radius path switches to the boundary asymptotic") {
  double v = liouville::detail::log_conformal_radius_square({0.02, 0.5},
                                                            65536, true);
  CHECK(v == doctest::Approx(std::log(0.04)).epsilon(1e-12));
}

TEST_CASE("disc automorphism basics") {
  auto ident = liouville::disc_automorphism({0.0, 0.0}, 0.0);
  Point z(0.3, 0.1);
  CHECK(std::abs(liouville::map_apply(ident, z, MapDirection::kForward) - z) <
        1e-15);
  auto rot = liouville::disc_automorphism({0.0, 0.0}, M_PI / 2.0);
  Point w = liouville::map_apply(rot, {0.4, 0.0}, MapDirection::kForward);
  CHECK(std::abs(w - Point(0.0, 0.4)) < 1e-15);
  auto shift = liouville::disc_automorphism({0.2, 0.0}, 0.0);
  Point o = liouville::map_apply(shift, {0.2, 0.0}, MapDirection::kForward);
  CHECK(std::abs(o) < 1e-15);
}

TEST_CASE("maps compose with their inverses") {
  liouville::Philox g(3, 0);
  auto map = liouville::disc_automorphism({0.31, -0.22}, 1.1);
  auto aff = liouville::affine_map(2.5, 0.7, {0.1, -0.3});
  for (int i = 0; i < 100; ++i) {
    Point z = std::polar(0.999 * g.uniform(), 6.28 * g.uniform());
    Point back = liouville::map_apply(
        map, liouville::map_apply(map, z, MapDirection::kForward),
        MapDirection::kInverse);
    CHECK(std::abs(back - z) < 1e-10);
    Point back2 = liouville::map_apply(
        aff, liouville::map_apply(aff, z, MapDirection::kForward),
        MapDirection::kInverse);
    CHECK(std::abs(back2 - z) < 1e-10);
  }
}

TEST_CASE("disc automorphisms preserve the unit circle") {
  auto map = liouville::disc_automorphism({0.45, 0.2}, 2.3);
  for (int i = 0; i < 32; ++i) {
    Point z = std::polar(1.0 - 1e-9, i * 0.196349540849362);
    Point w = liouville::map_apply(map, z, MapDirection::kForward);
    CHECK(std::abs(std::abs(w) - 1.0) < 1e-6);
  }
}

TEST_CASE("derivative modulus") {
  auto rot = liouville::disc_automorphism({0.0, 0.0}, 1.3);
  CHECK(liouville::map_derivative_modulus(rot, {0.2, 0.6},
                                          MapDirection::kForward) ==
        doctest::Approx(1.0).epsilon(1e-14));
  auto aff = liouville::affine_map(2.0, 0.0, {0.0, 0.0});
  CHECK(liouville::map_derivative_modulus(aff, {0.9, 0.1},
                                          MapDirection::kForward) == 2.0);
  // Centered finite difference at the origin for a shifted automorphism.
  auto map = liouville::disc_automorphism({0.2, 0.0}, 0.0);
  double h = 1e-6;
  Point up = liouville::map_apply(map, {h, 0.0}, MapDirection::kForward);
  Point dn = liouville::map_apply(map, {-h, 0.0}, MapDirection::kForward);
  double fd = std::abs(up - dn) / (2.0 * h);
  double an = liouville::map_derivative_modulus(map, {0.0, 0.0},
                                                MapDirection::kForward);
  CHECK(std::abs(fd - an) < 1e-6);
  // Inverse derivative is the reciprocal of the forward one at the image.
  Point z(0.25, -0.4);
  Point w = liouville::map_apply(map, z, MapDirection::kForward);
  double f = liouville::map_derivative_modulus(map, z, MapDirection::kForward);
  double inv =
      liouville::map_derivative_modulus(map, w, MapDirection::kInverse);
  CHECK(f * inv == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("map pole detection") {
  // Pole of the forward map sits at z = 1/conj(a), outside the open disc
  // but reachable by the validation call.
  auto map = liouville::disc_automorphism({0.5, 0.0}, 0.0);
  CHECK_THROWS_WITH_AS(
      liouville::map_apply(map, {2.0, 0.0}, MapDirection::kForward),
      doctest::Contains("pole"), liouville::Error);
  CHECK_THROWS_AS(liouville::disc_automorphism({1.0, 0.0}, 0.0),
                  liouville::Error);
}

TEST_CASE("domain validation and distances") {
  DomainSpec bad = square();
  bad.inner_margin = 0.5;
  CHECK_THROWS_WITH_AS(liouville::validate_domain(bad),
                       doctest::Contains("invalid-margin"), liouville::Error);
  bad = square();
  bad.grid_n = 8;
  CHECK_THROWS_WITH_AS(liouville::validate_domain(bad),
                       doctest::Contains("invalid-grid"), liouville::Error);
  CHECK(liouville::dist_to_boundary(square(), {0.3, 0.6}) ==
        doctest::Approx(0.3));
  CHECK(liouville::dist_to_boundary(disc(), {0.0, -0.25}) ==
        doctest::Approx(0.75));
  CHECK(liouville::is_interior(square(), {0.5, 0.5}));
  CHECK(!liouville::is_interior(square(), {0.5, 1.0}));
}
