// Full-equation layer: conversions, the cubic convolution against the exact
// rational product, exponential-integrator invariants (fixed points, order,
// equivariance), Newton profiles, Lyapunov descent, attractor sampling, and
// the parameter sweep.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "shbif/diagnostics.hpp"
#include "shbif/pde.hpp"
#include "shbif/trigpoly.hpp"

using namespace shbif;

namespace {

const double kPi = std::acos(-1.0);

ModeState from_pairs(int trunc, std::initializer_list<std::pair<int, double>> sines,
                     std::initializer_list<std::pair<int, double>> cosines = {}) {
  ModeState u(trunc);
  for (auto [k, v] : sines) u.a[static_cast<std::size_t>(k)] = v;
  for (auto [k, v] : cosines) u.b[static_cast<std::size_t>(k)] = v;
  return u;
}

}  // namespace

TEST_CASE("state conversions round-trip and guard the truncation") {
  TrigF u(6);
  u.set(sin_mode(1), 0.5);
  u.set(cos_mode(2), -0.25);
  u.set(sin_mode(6), 0.125);

  const ModeState s = state_from_trig(u, 6);
  CHECK(s.trunc == 6);
  CHECK(s.a[1] == 0.5);
  CHECK(s.b[2] == -0.25);
  CHECK(s.a[6] == 0.125);
  CHECK(s.b[1] == 0.0);

  const TrigF back = trig_from_state(s);
  CHECK(back == u);

  // A constant entry is not representable; it is dropped and counted.
  diag::reset_const_drops();
  TrigF with_const = u;
  with_const.set(const_mode(), 3.0);
  const ModeState s2 = state_from_trig(with_const, 6);
  CHECK(diag::const_drops() == 1);
  CHECK(l2_dist(s, s2) == 0.0);

  // Modes beyond the target truncation are an error, not silent loss.
  CHECK_THROWS_AS(state_from_trig(u, 5), TruncationError);
}

TEST_CASE("norms, mode-1 amplitude, and the grid sup norm") {
  const ModeState u = from_pairs(4, {{1, 0.5}}, {{2, -0.25}});
  CHECK(l2_norm(u) == doctest::Approx(std::sqrt(0.3125)).epsilon(1e-15));
  CHECK(mode1_amplitude(u) == 0.5);
  CHECK(l2_norm(ModeState(4)) == 0.0);

  const ModeState v = from_pairs(4, {{1, 0.5}});
  CHECK(l2_dist(u, v) == 0.25);
  CHECK_THROWS_AS(l2_dist(u, ModeState(5)), std::domain_error);

  // The default grid hits x = pi/4, where sin 2x peaks exactly.
  CHECK(sup_amplitude(from_pairs(2, {{1, 1.0}})) == 1.0);
  // Two-mode profile: compare against a dense scan of the same function.
  const ModeState w = from_pairs(3, {{1, 0.7}, {3, -0.2}}, {{2, 0.1}});
  const TrigF wt = trig_from_state(w);
  double dense = 0.0;
  for (int i = 0; i < 20000; ++i) {
    dense = std::max(dense, std::fabs(wt.evaluate(kPi * i / 20000.0)));
  }
  CHECK(sup_amplitude(w) == doctest::Approx(dense).epsilon(1e-6));
}

TEST_CASE("translation rotates coefficient pairs and is an isometry") {
  const ModeState u = from_pairs(5, {{1, 0.4}, {3, -0.2}}, {{2, 0.3}, {5, 0.1}});
  const double theta = 0.3;
  const ModeState v = translate(u, theta);

  CHECK(l2_norm(v) == doctest::Approx(l2_norm(u)).epsilon(1e-15));

  // Pointwise meaning: v(x) = u(x + theta).
  const TrigF ut = trig_from_state(u);
  const TrigF vt = trig_from_state(v);
  for (int i = 0; i < 7; ++i) {
    const double x = 0.1 + 0.4 * i;
    CHECK(vt.evaluate(x) == doctest::Approx(ut.evaluate(x + theta)).epsilon(1e-13));
  }

  // Inverse translation restores the state.
  CHECK(l2_dist(translate(v, -theta), u) < 1e-15);
}

TEST_CASE("cube_state matches the exact rational product") {
  // Mixed-parity state; the cube reaches wavenumber index 9.
  TrigQ uq(9);
  uq.set(sin_mode(1), testutil::rat("1/2"));
  uq.set(cos_mode(2), testutil::rat("1/4"));
  uq.set(sin_mode(3), testutil::rat("-1/8"));
  const TrigQ cube_exact = multiply(multiply(uq, uq), uq);

  diag::reset_const_drops();
  const ModeState u = state_from_trig(uq.to_float(), 9);
  const ModeState c = cube_state(u);

  // This cube has a nonzero mean, which the projection drops and counts.
  CHECK(!cube_exact.mean_zero());
  CHECK(diag::const_drops() == 1);

  for (int k = 1; k <= 9; ++k) {
    CHECK(c.a[static_cast<std::size_t>(k)] ==
          doctest::Approx(to_double(cube_exact.coeff(sin_mode(k)))).epsilon(1e-14));
    CHECK(c.b[static_cast<std::size_t>(k)] ==
          doctest::Approx(to_double(cube_exact.coeff(cos_mode(k)))).epsilon(1e-14));
  }

  // Odd slice: the cube of a pure sine state is pure sine with exactly
  // zero cosine parts, and its mean vanishes identically (no drop counted).
  diag::reset_const_drops();
  const double a = 0.73;
  const ModeState cs = cube_state(from_pairs(4, {{1, a}}));
  CHECK(diag::const_drops() == 0);
  for (int k = 1; k <= 4; ++k) CHECK(cs.b[static_cast<std::size_t>(k)] == 0.0);
  CHECK(cs.a[1] == doctest::Approx(0.75 * a * a * a).epsilon(1e-15));
  CHECK(cs.a[3] == doctest::Approx(-0.25 * a * a * a).epsilon(1e-15));
  CHECK(cs.a[2] == 0.0);
}

TEST_CASE("integrator: zero is a fixed point and single modes decay exactly") {
  PdeIntegrator step(9.2, 8, 1e-2);
  ModeState z(8);
  for (int i = 0; i < 10; ++i) step.step(z);
  CHECK(l2_norm(z) == 0.0);

  // Tiny single-mode states isolate the exponential factors: the cubic
  // contribution is cubically small. k = 2 at lambda = 8 exercises the
  // large-|z| branch of the phi weights.
  {
    PdeIntegrator s(8.0, 4, 0.1);
    ModeState u = from_pairs(4, {{2, 1e-8}});
    s.step(u);
    const double expected = 1e-8 * std::exp(-(15.0 * 15.0 - 8.0) * 0.1);
    CHECK(std::fabs(u.a[2] - expected) < 1e-24);
  }
  // k = 1 at lambda = 9 sits exactly at z = 0, the Taylor branch.
  {
    PdeIntegrator s(9.0, 4, 0.1);
    ModeState u = from_pairs(4, {{1, 1e-8}});
    s.step(u);
    CHECK(std::fabs(u.a[1] - 1e-8) < 1e-24);
    CHECK(std::isfinite(u.a[1]));
  }
}

TEST_CASE("integrator preserves truncated steady states to solver accuracy") {
  const StationaryResult st = stationary_amplitude(9.3, 6);
  ModeState u(6);
  for (int k = 1; k <= 6; ++k) u.a[static_cast<std::size_t>(k)] = st.profile[static_cast<std::size_t>(k - 1)];
  const ModeState before = u;

  PdeIntegrator step(9.3, 6, 1e-2);
  for (int i = 0; i < 100; ++i) step.step(u);
  CHECK(l2_dist(u, before) < 1e-12);
}

TEST_CASE("integrator converges at second order in the step size") {
  const auto advance = [](double dt, double t_end) {
    PdeIntegrator step(9.2, 6, dt);
    ModeState u = from_pairs(6, {{1, 0.2}, {2, 0.05}}, {{1, 0.1}});
    const long n = std::lround(t_end / dt);
    for (long i = 0; i < n; ++i) step.step(u);
    return u;
  };
  const ModeState ref = advance(1e-5, 1.0);
  const double e1 = l2_dist(advance(2.5e-3, 1.0), ref);
  const double e2 = l2_dist(advance(1.25e-3, 1.0), ref);
  CHECK(e1 > 0.0);
  const double ratio = e1 / e2;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("the flow commutes with translation") {
  const double theta = kPi / 8.0;
  ModeState u = random_state(11, 0, 12, 0.8);
  ModeState v = translate(u, theta);

  PdeIntegrator step(9.2, 12, 1e-3);
  for (int i = 0; i < 200; ++i) {
    step.step(u);
    step.step(v);
  }
  CHECK(l2_dist(translate(u, theta), v) < 1e-9);
}

TEST_CASE("integrate_pde samples on schedule and decays below criticality") {
  SimConfig cfg;
  cfg.lambda = 8.5;
  cfg.trunc = 8;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;

  TrigF u0(8);
  u0.set(sin_mode(1), 0.5);
  u0.set(cos_mode(2), 0.3);

  const PdeTrajectory traj = integrate_pde(cfg, u0, 0.5);
  CHECK(traj.sample_dt == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(traj.times.size() == 11);
  CHECK(traj.states.size() == 11);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(!traj.escaped);

  // states[0] is the initial state verbatim.
  CHECK(l2_dist(traj.states.front(), state_from_trig(u0, 8)) == 0.0);

  // Linear decay rate at least lambda_1 = 9 - 8.5; the cubic only helps.
  const double n0 = l2_norm(traj.states.front());
  const double nT = l2_norm(traj.states.back());
  CHECK(nT < n0 * std::exp(-0.5 * 5.0) * 1.05);
  CHECK(nT > 0.0);

  // The energy descends along every sampled step.
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    CHECK(lyapunov_value(traj.states[i], cfg.lambda) <=
          lyapunov_value(traj.states[i - 1], cfg.lambda) + 1e-12);
  }

  // Requested cadence is rounded to a whole number of steps.
  SimConfig c2 = cfg;
  c2.dt = 0.1;
  c2.t_end = 1.0;
  CHECK(integrate_pde(c2, u0, 0.22).sample_dt == doctest::Approx(0.2).epsilon(1e-12));

  TrigF bad = u0;
  bad.set(const_mode(), 0.1);
  CHECK_THROWS_AS(integrate_pde(cfg, bad), std::domain_error);
  CHECK_THROWS_AS(integrate_pde(cfg, u0, 0.0), std::domain_error);
}

TEST_CASE("lyapunov functional: zero state, closed form, and both views") {
  CHECK(lyapunov_value(ModeState(8), 9.2) == 0.0);

  // V(a sin 2x) = (pi/2) (9 a^2/2 - lambda a^2/2 + 3 a^4/16).
  const double a = 0.37, lambda = 9.2;
  const double expected =
      (kPi / 2.0) * (4.5 * a * a - 0.5 * lambda * a * a + 3.0 * a * a * a * a / 16.0);
  const ModeState u = from_pairs(6, {{1, a}});
  CHECK(lyapunov_value(u, lambda) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(lyapunov_value(trig_from_state(u), lambda) ==
        doctest::Approx(lyapunov_value(u, lambda)).epsilon(1e-15));

  // Translation invariance of the energy.
  CHECK(lyapunov_value(translate(u, 0.4), lambda) ==
        doctest::Approx(lyapunov_value(u, lambda)).epsilon(1e-13));

  TrigF bad(4);
  bad.set(const_mode(), 1.0);
  CHECK_THROWS_AS(lyapunov_value(bad, 9.0), std::domain_error);
}

TEST_CASE("stationary solver: amplitude, truncation stability, trivial branch") {
  const StationaryResult s8 = stationary_amplitude(9.3, 8);
  CHECK(s8.a1 == doctest::Approx(0.632).epsilon(5e-3));
  CHECK(s8.residual < 1e-12);
  CHECK(s8.iterations <= 10);
  CHECK(s8.profile.size() == 8);
  CHECK(s8.profile[0] == s8.a1);
  CHECK(s8.sup == doctest::Approx(s8.a1).epsilon(0.02));

  // The profile is already converged in the truncation at K = 2.
  const StationaryResult s2 = stationary_amplitude(9.3, 2);
  CHECK(std::fabs(s2.a1 - s8.a1) < 0.01 * s8.a1);
  CHECK(std::fabs(s2.sup - s8.sup) < 0.01 * s8.sup);

  // The solved profile is an equilibrium of the flow.
  ModeState st(8);
  for (int k = 1; k <= 8; ++k) st.a[static_cast<std::size_t>(k)] = s8.profile[static_cast<std::size_t>(k - 1)];
  CHECK(residual_norm(9.3, st) < 1e-11);
  CHECK(residual_norm(9.3, ModeState(8)) == 0.0);
  ModeState off = st;
  off.a[1] *= 2.0;
  CHECK(residual_norm(9.3, off) > 0.1);

  // At and below the bifurcation point only the trivial state remains.
  for (double lam : {9.0, 8.5}) {
    const StationaryResult s = stationary_amplitude(lam, 8);
    CHECK(s.a1 == 0.0);
    CHECK(s.sup == 0.0);
    CHECK(s.iterations == 0);
  }
  CHECK_THROWS_AS(stationary_amplitude(9.3, 0), std::domain_error);
}

TEST_CASE("random states are seeded, bounded, and platform-stable") {
  const ModeState x = random_state(42, 3, 16, 1.0);
  const ModeState y = random_state(42, 3, 16, 1.0);
  CHECK(x.a == y.a);
  CHECK(x.b == y.b);

  const double n = l2_norm(x);
  CHECK(n > 0.3);
  CHECK(n < 1.0);
  CHECK(l2_norm(random_state(42, 3, 16, 0.25)) == doctest::Approx(0.25 * n).epsilon(1e-12));

  CHECK(l2_dist(x, random_state(42, 4, 16, 1.0)) > 1e-3);
  CHECK(l2_dist(x, random_state(43, 3, 16, 1.0)) > 1e-3);
}

TEST_CASE("settle converges below criticality and stalls at the critical point") {
  SimConfig cfg;
  cfg.lambda = 8.5;
  cfg.trunc = 8;
  cfg.dt = 1e-2;
  cfg.t_end = 100.0;
  cfg.tol = 1e-8;

  const SettleResult r = settle(cfg, random_state(7, 0, 8, 0.5));
  CHECK(r.converged);
  CHECK(!r.escaped);
  CHECK(l2_norm(r.state) < 1e-6);
  CHECK(r.residual < cfg.tol);
  CHECK(r.last_delta < cfg.tol);
  CHECK(r.t <= cfg.t_end);

  // At lambda = 9 the decay is only algebraic: no convergence by t = 20.
  SimConfig crit = cfg;
  crit.lambda = 9.0;
  crit.t_end = 20.0;
  const SettleResult rc = settle(crit, from_pairs(8, {{1, 0.3}}));
  CHECK(!rc.converged);
  CHECK(!rc.escaped);
  CHECK(rc.t == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(l2_norm(rc.state) > 0.05);

  // A numerically unstable step size blows up and is flagged, not looped on.
  SimConfig unstable = cfg;
  unstable.lambda = 9.2;
  unstable.dt = 1.0;
  unstable.t_end = 50.0;
  const SettleResult re = settle(unstable, from_pairs(8, {{1, 2.0}}));
  CHECK(re.escaped);
  CHECK(!re.converged);
}

TEST_CASE("simulation config validation") {
  const SimConfig good;
  CHECK_NOTHROW(good.validate());

  const auto reject = [](auto mutate) {
    SimConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), std::domain_error);
  };
  reject([](SimConfig& c) { c.lambda = std::nan(""); });
  reject([](SimConfig& c) { c.trunc = 3; });
  reject([](SimConfig& c) { c.dt = 0.0; });
  reject([](SimConfig& c) { c.t_end = c.dt / 2.0; });
  reject([](SimConfig& c) { c.tol = 0.0; });
  reject([](SimConfig& c) { c.ic_count = 0; });
  reject([](SimConfig& c) { c.ic_radius = -1.0; });
}

TEST_CASE("attractor sampling: trivial regime collapses to the origin") {
  SimConfig cfg;
  cfg.lambda = 8.5;
  cfg.trunc = 8;
  cfg.dt = 1e-2;
  cfg.t_end = 100.0;
  cfg.tol = 1e-8;
  cfg.ic_seed = 2;
  cfg.ic_count = 8;
  cfg.ic_radius = 0.5;

  const AttractorSample s = sample_attractor(cfg);
  CHECK(s.lambda == 8.5);
  CHECK(s.converged == 8);
  CHECK(s.excluded == 0);
  CHECK(s.escaped == 0);
  // Everything deduplicates onto the trivial representative.
  CHECK(s.states.size() == 1);
  CHECK(s.residuals.size() == 1);
  CHECK(s.residuals[0] == 0.0);
  CHECK(s.dist_h == 0.0);

  SimConfig bad = cfg;
  bad.ic_count = 4;
  CHECK_THROWS_AS(sample_attractor(bad), std::domain_error);
}

TEST_CASE("attractor sampling: the bifurcated circle and determinism") {
  SimConfig cfg;
  cfg.lambda = 9.2;
  cfg.trunc = 8;
  cfg.dt = 5e-3;
  cfg.t_end = 150.0;
  cfg.tol = 1e-7;
  cfg.ic_seed = 5;
  cfg.ic_count = 8;
  cfg.ic_radius = 0.8;

  const AttractorSample s = sample_attractor(cfg);
  CHECK(s.converged == 8);
  CHECK(s.escaped == 0);
  // Origin plus distinct phases along the circle of steady states.
  CHECK(s.states.size() >= 5);
  for (std::size_t i = 1; i < s.residuals.size(); ++i) CHECK(s.residuals[i] < cfg.tol);

  // The attractor radius matches the Newton amplitude of the same truncation.
  const StationaryResult st = stationary_amplitude(9.2, 8);
  CHECK(s.dist_h == doctest::Approx(st.a1).epsilon(1e-4));
  CHECK(s.dist_h > 0.50);
  CHECK(s.dist_h < 0.53);

  // Every representative lies on the circle: same norm, residual-level flat.
  for (std::size_t i = 1; i < s.states.size(); ++i) {
    CHECK(l2_norm(state_from_trig(s.states[i], 8)) ==
          doctest::Approx(s.dist_h).epsilon(1e-4));
  }

  // Bitwise repeatability of the parallel sample.
  const AttractorSample t = sample_attractor(cfg);
  CHECK(t.dist_h == s.dist_h);
  REQUIRE(t.states.size() == s.states.size());
  for (std::size_t i = 0; i < s.states.size(); ++i) CHECK(t.states[i] == s.states[i]);
}

TEST_CASE("bifurcation sweep: verdict flip across the critical parameter") {
  SimConfig base;
  base.trunc = 8;
  base.dt = 1e-2;
  base.t_end = 120.0;
  base.tol = 1e-7;
  base.ic_seed = 3;
  base.ic_count = 8;
  base.ic_radius = 0.8;

  const std::vector<double> grid{8.5, 9.0, 9.2, 9.5};
  const auto rows = bifurcation_sweep(grid, base);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].lambda == grid[i]);
    CHECK(rows[i].error.empty());
    CHECK(rows[i].escaped == 0);
  }

  // Below and at the critical parameter: trivial attractor, no circle.
  CHECK(*rows[0].dist_h == 0.0);
  CHECK(!rows[0].r_star.has_value());
  CHECK(*rows[0].amplitude_newton == 0.0);
  CHECK(rows[0].verdict == "attractor-like");
  CHECK(rows[0].converged == 8);

  CHECK(*rows[1].dist_h == 0.0);  // critical slowing: only the origin reported
  CHECK(rows[1].converged == 0);
  CHECK(!rows[1].r_star.has_value());
  CHECK(rows[1].verdict == "attractor-like");

  // Past the bifurcation: circle radius, Newton amplitude, and the sampled
  // attractor distance all agree; the origin block has become repelling.
  CHECK(rows[2].verdict == "repeller-like");
  CHECK(rows[3].verdict == "repeller-like");
  CHECK(rows[2].converged == 8);
  CHECK(rows[3].converged == 8);
  CHECK(*rows[2].dist_h == doctest::Approx(0.5164).epsilon(0.02));
  CHECK(*rows[3].dist_h == doctest::Approx(0.8165).epsilon(0.02));
  CHECK(*rows[2].r_star == doctest::Approx(*rows[2].dist_h).epsilon(5e-3));
  CHECK(*rows[3].r_star == doctest::Approx(*rows[3].dist_h).epsilon(5e-3));
  CHECK(*rows[2].amplitude_newton == doctest::Approx(*rows[2].dist_h).epsilon(1e-3));
  CHECK(*rows[3].amplitude_newton == doctest::Approx(*rows[3].dist_h).epsilon(1e-3));
}

TEST_CASE("bifurcation sweep: grid validation and per-row error capture") {
  const SimConfig base;
  CHECK_THROWS_AS(bifurcation_sweep({}, base), std::domain_error);
  CHECK_THROWS_AS(bifurcation_sweep({9.0, 8.5}, base), std::domain_error);
  CHECK_THROWS_AS(bifurcation_sweep({8.5, 8.5}, base), std::domain_error);
  CHECK_THROWS_AS(bifurcation_sweep({std::nan("")}, base), std::domain_error);

  // A parameter that violates the spectral gap fails its own row only.
  SimConfig quick;
  quick.trunc = 8;
  quick.dt = 1e-2;
  quick.t_end = 1.0;
  quick.ic_count = 8;
  quick.ic_radius = 0.2;
  const auto rows = bifurcation_sweep({9.2, 30.0}, quick);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error.empty());
  CHECK(!rows[1].error.empty());
  CHECK(rows[1].error.find("spectral gap") != std::string::npos);
  CHECK(!rows[1].r_star.has_value());
}
