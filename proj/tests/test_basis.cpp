// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "wdmd/basis.hpp"

using namespace wdmd;

TEST_CASE("bump normalization peaks at exactly 1") {
  for (int p : {1, 2, 3, 5}) {
    const Bump bump(0.3, 1.7, p);
    CHECK(bump.eval(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bump.eval(0.3) == 0.0);
    CHECK(bump.eval(1.7) == 0.0);
    CHECK(bump.eval(0.2) == 0.0);   // outside support
    CHECK(bump.eval(10.0) == 0.0);
  }
  // p=1 on (0,1) is the classic 4t(1-t).
  const Bump unit(0.0, 1.0, 1);
  CHECK(unit.c == doctest::Approx(4.0));
  CHECK(unit.eval(0.25) == doctest::Approx(0.75));
}

TEST_CASE("bump derivative matches central differences") {
  const Bump bump(-0.5, 2.0, 3);
  const double h = 1e-6;
  for (double t : {-0.3, 0.1, 0.75, 1.3, 1.9}) {
    const double fd = (bump.eval(t + h) - bump.eval(t - h)) / (2 * h);
    CHECK(bump.deriv(t) == doctest::Approx(fd).epsilon(1e-6));
  }
  // Zero derivative at the peak, zero outside.
  CHECK(bump.deriv(0.75) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bump.deriv(-1.0) == 0.0);
}

TEST_CASE("layout places centers uniformly with overlap-scaled widths") {
  const Window window{0.0, 10.0};
  const auto basis = build_layout({6}, {0.5}, 2, window);
  REQUIRE(basis.size() == 6);
  const double d = 2.0;              // (10-0)/(6-1)
  const double half = 1.5;           // d/2 * (1 + 0.5)
  for (int i = 0; i < 6; ++i) {
    const double center = i * d;
    CHECK(basis[i].a == doctest::Approx(center - half));
    CHECK(basis[i].b == doctest::Approx(center + half));
    CHECK(basis[i].eval(center) == doctest::Approx(1.0));
  }
  // End supports extend beyond the window (kept; integrals truncate later).
  CHECK(basis[0].a < window.t1);
  CHECK(basis[5].b > window.t2);
}

TEST_CASE("single-bump tier spans the window from its midpoint") {
  const Window window{2.0, 6.0};
  const auto basis = build_layout({1}, {0.25}, 3, window);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0].a == doctest::Approx(4.0 - 2.5));
  CHECK(basis[0].b == doctest::Approx(4.0 + 2.5));
}

TEST_CASE("tiers concatenate in order") {
  const Window window{0.0, 1.0};
  const auto basis = build_layout({2, 3}, {0.0, 1.0}, 2, window);
  REQUIRE(basis.size() == 5);
  // Tier 0: spacing d=1, overlap 0 -> width d(1+v) = 1, centered on 0 and 1.
  CHECK(basis[0].a == doctest::Approx(-0.5));
  CHECK(basis[0].b == doctest::Approx(0.5));
  CHECK(basis[1].b == doctest::Approx(1.5));
  // Tier 1 starts at index 2: spacing d=0.5, overlap 1 -> width 1, centers
  // at 0, 0.5, 1.
  CHECK(basis[2].a == doctest::Approx(-0.5));
  CHECK(basis[2].b == doctest::Approx(0.5));
  CHECK(basis[3].a == doctest::Approx(0.0));
  CHECK(basis[3].b == doctest::Approx(1.0));
  CHECK(basis[4].b == doctest::Approx(1.5));
}

TEST_CASE("layout rejects malformed requests") {
  const Window window{0.0, 1.0};
  CHECK_THROWS_AS(build_layout({}, {}, 2, window), Error);
  CHECK_THROWS_AS(build_layout({4}, {0.5, 0.5}, 2, window), Error);
  CHECK_THROWS_AS(build_layout({0}, {0.5}, 2, window), Error);
  CHECK_THROWS_AS(build_layout({4}, {-0.1}, 2, window), Error);
  CHECK_THROWS_AS(build_layout({4}, {0.5}, 0, window), Error);
  try {
    build_layout({}, {}, 2, window);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyLayout);
  }
}
