#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "shbif/diagnostics.hpp"
#include "shbif/trigpoly.hpp"

using namespace shbif;
using testutil::rat;

TEST_CASE("mode ordering puts const first, then sin before cos per wavenumber") {
  CHECK(const_mode() < sin_mode(1));
  CHECK(sin_mode(1) < cos_mode(1));
  CHECK(cos_mode(1) < sin_mode(2));
  CHECK(sin_mode(3) < cos_mode(3));
  CHECK_THROWS_AS(sin_mode(0), std::domain_error);
  CHECK_THROWS_AS(cos_mode(-2), std::domain_error);
}

TEST_CASE("eigenvalues of the linear part") {
  CHECK(eigenvalue(1, Rational(9)) == 0);
  CHECK(eigenvalue(2, Rational(9)) == 216);
  CHECK(eigenvalue(3, Rational(9)) == 1216);
  CHECK(eigenvalue(3, Rational(0)) == 1225);
  CHECK(eigenvalue(1, Rational(0)) == 9);
}

TEST_CASE("product-to-sum identities are exact") {
  const TrigQ s1 = TrigQ::sine(1);
  const TrigQ c2 = TrigQ::cosine(2);

  SUBCASE("sin2x * sin2x = 1/2 - 1/2 cos4x") {
    TrigQ expect;
    expect.set(const_mode(), rat("1/2"));
    expect.set(cos_mode(2), rat("-1/2"));
    CHECK(multiply(s1, s1) == expect);
  }
  SUBCASE("sin2x * cos4x = (sin6x - sin2x)/2") {
    TrigQ expect;
    expect.set(sin_mode(3), rat("1/2"));
    expect.set(sin_mode(1), rat("-1/2"));
    CHECK(multiply(s1, c2) == expect);
  }
  SUBCASE("cos2x * cos4x = (cos6x + cos2x)/2") {
    TrigQ expect;
    expect.set(cos_mode(3), rat("1/2"));
    expect.set(cos_mode(1), rat("1/2"));
    CHECK(multiply(TrigQ::cosine(1), c2) == expect);
  }
  SUBCASE("sin^3 2x = 3/4 sin2x - 1/4 sin6x") {
    const TrigQ cube = multiply(multiply(s1, s1), s1);
    TrigQ expect;
    expect.set(sin_mode(1), rat("3/4"));
    expect.set(sin_mode(3), rat("-1/4"));
    CHECK(cube == expect);
  }
  SUBCASE("sin2x * sin2x * cos2x leaves no constant") {
    const TrigQ p = multiply(multiply(s1, s1), TrigQ::cosine(1));
    CHECK(p.mean_zero());
    TrigQ expect;
    expect.set(cos_mode(1), rat("1/4"));
    expect.set(cos_mode(3), rat("-1/4"));
    CHECK(p == expect);
  }
}

TEST_CASE("multiplication agrees with pointwise evaluation") {
  TrigQ x;
  x.set(sin_mode(1), rat("2/3"));
  x.set(cos_mode(2), rat("-1/7"));
  x.set(const_mode(), rat("1/5"));
  TrigQ y;
  y.set(cos_mode(1), rat("3/11"));
  y.set(sin_mode(3), rat("5/2"));
  const TrigQ xy = multiply(x, y);
  for (int i = 0; i < 64; ++i) {
    const double t = std::numbers::pi * i / 64.0;
    CHECK(xy.evaluate(t) == doctest::Approx(x.evaluate(t) * y.evaluate(t)).epsilon(1e-12));
  }
}

TEST_CASE("odd-wavenumber parity is closed under cubing") {
  // Every mode here has odd k, and sums of three odd numbers are odd, so the
  // cube has no constant and no even-k mode.
  TrigQ u(9);
  u.set(sin_mode(1), rat("1/2"));
  u.set(cos_mode(3), rat("-1/3"));
  const TrigQ cube = multiply(multiply(u, u), u);
  CHECK(cube.mean_zero());
  for (const auto& [m, c] : cube.terms()) CHECK(m.k % 2 == 1);
}

TEST_CASE("truncation is a hard boundary") {
  TrigQ p(4);
  CHECK_THROWS_AS(p.set(sin_mode(5), Rational(1)), TruncationError);
  const TrigQ a = TrigQ::sine(3, 4);
  const TrigQ b = TrigQ::cosine(2, 4);
  CHECK_THROWS_AS(multiply(a, b), TruncationError);  // sin10x needs K >= 5
  const TrigQ lifted = multiply(a.with_trunc(5), b.with_trunc(5));
  CHECK(lifted.coeff(sin_mode(5)) == rat("1/2"));
  CHECK_THROWS_AS(TrigQ::sine(3, 4).with_trunc(2), TruncationError);
}

TEST_CASE("capacity is not part of the value") {
  const TrigQ a = TrigQ::sine(1, 4);
  const TrigQ b = TrigQ::sine(1, 8);
  CHECK(a == b);
}

TEST_CASE("projections split the mean-zero space and count constant drops") {
  TrigQ u;
  u.set(const_mode(), Rational(2));
  u.set(sin_mode(1), Rational(3));
  u.set(cos_mode(1), Rational(5));
  u.set(sin_mode(4), Rational(7));

  diag::reset_const_drops();
  const TrigQ c = project_center(u);
  const TrigQ s = project_stable(u);
  const TrigQ d = project_dotted(u);
  CHECK(diag::const_drops() == 3);

  CHECK(c.coeff(sin_mode(1)) == 3);
  CHECK(c.coeff(cos_mode(1)) == 5);
  CHECK(c.coeff(sin_mode(4)) == 0);
  CHECK(s.coeff(sin_mode(4)) == 7);
  CHECK(s.coeff(sin_mode(1)) == 0);
  CHECK(d == c + s);

  diag::reset_const_drops();
  CHECK(project_center(d) + project_stable(d) == d);
  CHECK(diag::const_drops() == 0);
}

TEST_CASE("the linear operator acts diagonally and rejects constants") {
  SUBCASE("half sin6x maps to 608 sin6x at the critical parameter") {
    const TrigQ u = TrigQ::basis(sin_mode(3), rat("1/2"));
    const TrigQ lu = apply_L(Rational(9), u);
    CHECK(lu.coeff(sin_mode(3)) == 608);
    CHECK(lu.terms().size() == 1);
  }
  SUBCASE("critical pair is the kernel at lambda = 9") {
    TrigQ u;
    u.set(sin_mode(1), Rational(4));
    u.set(cos_mode(1), rat("-2/3"));
    CHECK(apply_L(Rational(9), u).is_zero());
  }
  SUBCASE("constants are outside the domain") {
    CHECK_THROWS_AS(apply_L(Rational(9), TrigQ::constant(Rational(1))), std::domain_error);
  }
}

TEST_CASE("float view matches rational evaluation") {
  TrigQ u;
  u.set(sin_mode(2), rat("22/7"));
  u.set(cos_mode(1), rat("-1/3"));
  const TrigF f = u.to_float();
  for (int i = 0; i < 16; ++i) {
    const double t = std::numbers::pi * i / 16.0;
    CHECK(f.evaluate(t) == doctest::Approx(u.evaluate(t)).epsilon(1e-15));
  }
  CHECK(u.max_abs() == doctest::Approx(22.0 / 7.0));
}
