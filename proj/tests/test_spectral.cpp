#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "shbif/spectral.hpp"

using namespace shbif;
using testutil::rat;

TEST_CASE("critical splitting at lambda = 9 isolates the first pair") {
  const auto d = SpectralDecomposition::make(Rational(9), 8);
  CHECK(d.center == std::vector<int>{1});
  CHECK(d.stable == std::vector<int>{2, 3, 4, 5, 6, 7, 8});
  CHECK(d.eigs[0] == 0);
  CHECK(d.eigs[1] == 216);
  CHECK(d.eigs[2] == 1216);
  CHECK(d.is_center(1));
  CHECK(d.is_stable(2));
  CHECK_FALSE(d.is_stable(1));
}

TEST_CASE("nearby parameters keep the same splitting") {
  const auto d = SpectralDecomposition::make(rat("93/10"), 8);
  CHECK(d.center == std::vector<int>{1});
  CHECK(d.eigs[0] == rat("-3/10"));
  CHECK(d.eigs[1] == rat("2157/10"));

  // eig_2 = 225 - 25 = 200 sits exactly on the stable threshold 2 beta.
  const auto edge = SpectralDecomposition::make(Rational(25), 6);
  CHECK(edge.is_stable(2));
  CHECK(edge.eigs[0] == -16);
}

TEST_CASE("spectral gap violations are rejected") {
  // eig_2 = 225 - 100 = 125 falls between the center window and threshold.
  CHECK_THROWS_WITH_AS(SpectralDecomposition::make(Rational(100), 8),
                       "spectral gap violated: eigenvalue 125 at k=2 falls between the "
                       "center window and the stable threshold",
                       std::domain_error);
  // eig_1 = 9 - 120 = -111 lies below the center window.
  CHECK_THROWS_WITH_AS(SpectralDecomposition::make(Rational(120), 8),
                       "spectral gap violated: eigenvalue -111 at k=1 lies below the "
                       "center window",
                       std::domain_error);
}

TEST_CASE("diagonal projections are exact complementary idempotents") {
  const auto d = SpectralDecomposition::make(Rational(9), 5);
  const auto pc = center_projection<Rational>(d);
  const auto ps = stable_projection<Rational>(d);
  CHECK(pc * pc == pc);
  CHECK(ps * ps == ps);
  CHECK(pc + ps == DenseMatrix<Rational>::identity(10));
  CHECK(pc * ps == DenseMatrix<Rational>(10, 10));
}

TEST_CASE("transition map between equal pairs is the identity, exactly") {
  const auto ref = SpectralDecomposition::make(Rational(9), 6);
  const auto cur = SpectralDecomposition::make(rat("93/10"), 6);
  const auto t = transition_isomorphism<Rational>(
      {center_projection<Rational>(ref), stable_projection<Rational>(ref)},
      {center_projection<Rational>(cur), stable_projection<Rational>(cur)});
  CHECK(t == DenseMatrix<Rational>::identity(12));
}

namespace {

// Rank-one orthogonal projection onto span(cos t, sin t) in the plane.
DenseMatrix<double> tilted(double t) {
  DenseMatrix<double> p(2, 2);
  const double c = std::cos(t), s = std::sin(t);
  p(0, 0) = c * c;
  p(0, 1) = c * s;
  p(1, 0) = c * s;
  p(1, 1) = s * s;
  return p;
}

std::pair<DenseMatrix<double>, DenseMatrix<double>> tilted_pair(double t) {
  const auto p = tilted(t);
  return {p, DenseMatrix<double>::identity(2) - p};
}

}  // namespace

TEST_CASE("tilted planar projections transition when the tilt is small") {
  const auto ref = tilted_pair(0.0);
  const auto cur = tilted_pair(0.1);
  const auto t = transition_isomorphism<double>(ref, cur);

  // T intertwines the pairs: T P = P_ref T, so ranges map onto ranges.
  const auto left = t * cur.first;
  const auto right = ref.first * t;
  CHECK((left - right).max_abs() < 1e-10);

  // T really is invertible here.
  const auto inv = try_inverse(t);
  REQUIRE(inv.has_value());
  CHECK((*inv * t - DenseMatrix<double>::identity(2)).max_abs() < 1e-12);
}

TEST_CASE("perpendicular pairs are rejected: the gap bound is sharp") {
  // |P(pi/2) - P(0)| = 1, exactly the forbidden distance.
  CHECK_THROWS_AS(transition_isomorphism<double>(tilted_pair(0.0), tilted_pair(1.5707963267948966)),
                  ProjectionError);
}

TEST_CASE("malformed inputs are rejected before any transition is formed") {
  const auto good = tilted_pair(0.0);

  SUBCASE("not idempotent") {
    auto bad = good;
    bad.first(0, 1) = 0.5;
    CHECK_THROWS_AS(transition_isomorphism<double>(bad, good), ProjectionError);
  }
  SUBCASE("not complementary") {
    auto bad = good;
    bad.second = bad.first;  // idempotent, but P1 + P2 != I
    CHECK_THROWS_AS(transition_isomorphism<double>(bad, good), ProjectionError);
  }
  SUBCASE("dimension mismatch") {
    std::pair<DenseMatrix<double>, DenseMatrix<double>> small{
        DenseMatrix<double>::identity(1), DenseMatrix<double>(1, 1)};
    CHECK_THROWS_AS(transition_isomorphism<double>(small, good), ProjectionError);
  }
}

TEST_CASE("operator norm returns the largest singular value") {
  DenseMatrix<double> m(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -4.0;
  CHECK(op_norm2(m) == doctest::Approx(4.0));
  CHECK(op_norm2(tilted(0.3) - tilted(0.0)) == doctest::Approx(std::sin(0.3)));
}
