#include "shbif/dynamics.hpp"

#include <algorithm>
#include <array>
#include <numbers>

namespace shbif {

namespace {

constexpr double kEscapeRadius = 1e6;

std::string rational_str(const Rational& q) {
  std::string s = num_str(q);
  if (denominator(q) != 1) s += "/" + den_str(q);
  return s;
}

struct Rk4 {
  PlanarFieldEval f;
  double dt;

  PlanarState step(PlanarState s) const {
    const auto k1 = f(s.s1, s.s2);
    const auto k2 = f(s.s1 + 0.5 * dt * k1[0], s.s2 + 0.5 * dt * k1[1]);
    const auto k3 = f(s.s1 + 0.5 * dt * k2[0], s.s2 + 0.5 * dt * k2[1]);
    const auto k4 = f(s.s1 + dt * k3[0], s.s2 + dt * k3[1]);
    return {s.s1 + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            s.s2 + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
  }
};

}  // namespace

ReducedTrajectory integrate_reduced(const ReducedVectorField& vf, PlanarState s0,
                                    double t_end, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("step must be positive");
  if (!(t_end >= dt)) throw std::domain_error("horizon must cover at least one step");
  const auto steps = static_cast<long>(t_end / dt);

  ReducedTrajectory out;
  out.dt = dt;
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  out.states.push_back(s0);

  const Rk4 rk{PlanarFieldEval(vf), dt};
  PlanarState s = s0;
  for (long i = 0; i < steps; ++i) {
    s = rk.step(s);
    out.states.push_back(s);
    if (!(norm(s) <= kEscapeRadius)) {  // NaN counts as escaped
      out.escaped = true;
      break;
    }
  }
  return out;
}

std::vector<Rational> radial_polynomial(const ReducedVectorField& vf) {
  PlanarPoly<Rational> e;  // s1^2 + s2^2
  e.add({2, 0}, Rational(1));
  e.add({0, 2}, Rational(1));

  // A radial field is G = sum_d c_d e^((d-1)/2) (s1, s2); read the candidate
  // c_d off the s1^d coefficient of G1 and demand both components match.
  std::vector<Rational> coeffs(static_cast<std::size_t>(vf.order) + 1, Rational(0));
  PlanarPoly<Rational> expect1, expect2;
  for (int d = 1; d <= vf.order; d += 2) {
    const Rational cd = vf.g1.coeff({d, 0});
    coeffs[static_cast<std::size_t>(d)] = cd;
    if (cd == 0) continue;
    PlanarPoly<Rational> em = PlanarPoly<Rational>::constant(cd);
    for (int i = 0; i < (d - 1) / 2; ++i) em = multiply(em, e);
    expect1 += multiply(em, PlanarPoly<Rational>::monomial({1, 0}, Rational(1)));
    expect2 += multiply(em, PlanarPoly<Rational>::monomial({0, 1}, Rational(1)));
  }
  if (!(expect1 == vf.g1) || !(expect2 == vf.g2)) {
    throw std::domain_error(
        "field is not rotationally symmetric: tangential or angle-dependent "
        "component detected");
  }
  return coeffs;
}

const char* to_string(BlockVerdict v) {
  switch (v) {
    case BlockVerdict::AttractorLike: return "attractor-like";
    case BlockVerdict::RepellerLike: return "repeller-like";
    case BlockVerdict::Mixed: return "mixed";
  }
  return "?";
}

BlockClassification classify_block(const ReducedVectorField& vf, double r, int samples,
                                   std::optional<double> tol, double tangent_fraction) {
  if (!(r > 0.0)) throw std::domain_error("block radius must be positive");
  if (samples < 64) throw std::domain_error("boundary needs at least 64 samples");
  if (tangent_fraction < 0.0 || tangent_fraction > 1.0) {
    throw std::domain_error("tangent fraction must lie in [0, 1]");
  }

  const PlanarFieldEval f(vf);
  BlockClassification out;
  out.lambda = to_double(vf.lambda);
  out.r = r;
  out.tol = tol.value_or(1e-12 * f.max_abs_coeff() * r * r * r);
  out.labels.reserve(static_cast<std::size_t>(samples));

  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / samples;
    const double s1 = r * std::cos(theta);
    const double s2 = r * std::sin(theta);
    const auto g = f(s1, s2);
    const double rho = (g[0] * s1 + g[1] * s2) / r;  // outward-normal speed
    SampleLabel label;
    if (std::fabs(rho) <= out.tol) {
      label = SampleLabel::Tangent;
      ++out.tangent;
    } else if (rho < 0.0) {
      label = SampleLabel::Ingress;
      ++out.ingress;
    } else {
      label = SampleLabel::Egress;
      ++out.egress;
    }
    out.labels.push_back(label);
  }

  if (out.tangent > tangent_fraction * samples) {
    out.verdict = BlockVerdict::Mixed;
  } else if (out.egress == 0 && out.ingress > 0) {
    out.verdict = BlockVerdict::AttractorLike;
  } else if (out.ingress == 0 && out.egress > 0) {
    out.verdict = BlockVerdict::RepellerLike;
  } else {
    out.verdict = BlockVerdict::Mixed;
  }
  return out;
}

std::optional<InvariantCircle> invariant_circle(const ReducedVectorField& vf,
                                                double r_max) {
  if (!(r_max > 0.0)) throw std::domain_error("search radius must be positive");
  const auto coeffs = radial_polynomial(vf);
  std::vector<double> cd(coeffs.size());
  for (std::size_t d = 0; d < coeffs.size(); ++d) cd[d] = to_double(coeffs[d]);

  const auto rho = [&](double r) {
    double acc = 0.0;
    double rp = r;
    for (std::size_t d = 1; d < cd.size(); ++d, rp *= r) {
      if (cd[d] != 0.0) acc += cd[d] * rp;
    }
    return acc;
  };

  constexpr int kGrid = 4096;
  constexpr double kWidth = 1e-12;
  std::vector<double> roots;
  double r_prev = r_max / kGrid;
  double v_prev = rho(r_prev);
  if (v_prev == 0.0) roots.push_back(r_prev);
  for (int j = 2; j <= kGrid; ++j) {
    const double r_j = r_max * j / kGrid;
    const double v_j = rho(r_j);
    if (v_j == 0.0) {
      roots.push_back(r_j);
    } else if (v_prev != 0.0 && std::signbit(v_prev) != std::signbit(v_j)) {
      double lo = r_prev, hi = r_j, v_lo = v_prev;
      while (hi - lo > kWidth) {
        const double mid = 0.5 * (lo + hi);
        const double v_mid = rho(mid);
        if (v_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(v_mid) == std::signbit(v_lo)) {
          lo = mid;
          v_lo = v_mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    r_prev = r_j;
    v_prev = v_j;
  }

  if (roots.empty()) return std::nullopt;
  InvariantCircle circle;
  circle.r_star = roots.front();
  circle.lambda = to_double(vf.lambda);
  circle.residual = std::fabs(rho(circle.r_star));
  circle.root_count = static_cast<int>(roots.size());
  return circle;
}

AttractorRepellerReport check_attractor_repeller(const ReducedVectorField& vf,
                                                 const InvariantCircle& circle,
                                                 int probes, double t_end, double dt,
                                                 double fwd_tol, double bwd_tol) {
  if (probes < 1) throw std::domain_error("need at least one probe");
  if (!(circle.r_star > 0.0)) {
    throw std::domain_error("attractor-repeller check needs an invariant circle");
  }

  ReducedVectorField reversed = vf;
  reversed.g1 *= Rational(-1);
  reversed.g2 *= Rational(-1);

  AttractorRepellerReport report;
  report.r_star = circle.r_star;
  report.probes.reserve(static_cast<std::size_t>(probes));
  report.passed = true;

  for (int i = 0; i < probes; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / probes;
    ProbeCheck probe;
    probe.start = {0.5 * circle.r_star * std::cos(theta),
                   0.5 * circle.r_star * std::sin(theta)};

    const auto fwd = integrate_reduced(vf, probe.start, t_end, dt);
    probe.forward_gap = std::fabs(norm(fwd.states.back()) - circle.r_star);
    const bool fwd_ok = !fwd.escaped && probe.forward_gap < fwd_tol;

    const auto bwd = integrate_reduced(reversed, probe.start, t_end, dt);
    probe.backward_norm = norm(bwd.states.back());
    const bool bwd_ok = !bwd.escaped && probe.backward_norm < bwd_tol;

    probe.ok = fwd_ok && bwd_ok;
    if (!probe.ok) {
      report.passed = false;
      if (report.failure.empty()) {
        report.failure = "probe " + std::to_string(i) + " failed: forward gap " +
                         std::to_string(probe.forward_gap) + ", backward norm " +
                         std::to_string(probe.backward_norm);
      }
    }
    report.probes.push_back(probe);
  }
  return report;
}

namespace {

// Exact upper bound of a rational-coefficient polynomial on [0, 1].
// Endpoints always; the vertex for quadratics; for higher degree a grid bound
// max q(j/N) + max|q'|/N, which stays a sound rational certificate.
Rational upper_bound_01(const std::vector<Rational>& q) {
  int deg = -1;
  for (int j = static_cast<int>(q.size()) - 1; j >= 0; --j) {
    if (q[static_cast<std::size_t>(j)] != 0) {
      deg = j;
      break;
    }
  }
  if (deg < 0) return Rational(0);

  const auto eval = [&](const Rational& x) {
    Rational acc(0);
    for (int j = deg; j >= 0; --j) acc = acc * x + q[static_cast<std::size_t>(j)];
    return acc;
  };

  Rational best = eval(Rational(0));
  best = std::max(best, eval(Rational(1)), std::less<Rational>{});
  if (deg == 2) {
    const Rational vertex = -q[1] / (2 * q[2]);
    if (vertex > 0 && vertex < 1) best = std::max(best, eval(vertex), std::less<Rational>{});
  } else if (deg >= 3) {
    Rational slope(0);
    for (int j = 1; j <= deg; ++j) slope += abs_val(Rational(j) * q[static_cast<std::size_t>(j)]);
    const int n = 4096;
    Rational grid_best = best;
    for (int j = 1; j < n; ++j) {
      grid_best = std::max(grid_best, eval(Rational(j, n)), std::less<Rational>{});
    }
    best = grid_best + slope / n;
  }
  return best;
}

}  // namespace

OriginCertificate certify_origin_isolated(const ReducedVectorField& vf) {
  OriginCertificate cert;

  // p = <G(s), s>, whose sign along rays is the sign of the outward speed.
  const auto p = multiply(vf.g1, PlanarPoly<Rational>::monomial({1, 0}, Rational(1))) +
                 multiply(vf.g2, PlanarPoly<Rational>::monomial({0, 1}, Rational(1)));

  for (const auto& [m, c] : p.terms()) {
    if (m.a % 2 != 0 || m.b % 2 != 0) {
      cert.detail = "outward speed has a mixed-parity monomial; outside the certified class";
      return cert;
    }
    if (m.degree() > 6) {
      cert.detail = "outward speed has degree beyond 6; outside the certified class";
      return cert;
    }
  }

  // On |s| = r with x = s1^2 / r^2 in [0, 1], the degree-2m homogeneous part
  // of p is r^(2m) q_m(x). Bound each q_m exactly from above.
  std::array<std::vector<Rational>, 4> q;
  for (auto& poly : q) poly.assign(4, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    const int mm = m.degree() / 2;
    if (mm < 1 || mm > 3) {
      cert.detail = "outward speed has a constant term; outside the certified class";
      return cert;
    }
    // c * x^(a/2) * (1-x)^(b/2), expanded into powers of x.
    const int ha = m.a / 2, hb = m.b / 2;
    std::vector<Rational> binom(static_cast<std::size_t>(hb) + 1);
    binom[0] = Rational(1);
    for (int j = 1; j <= hb; ++j) {
      binom[static_cast<std::size_t>(j)] =
          -binom[static_cast<std::size_t>(j - 1)] * Rational(hb - j + 1) / Rational(j);
    }
    for (int j = 0; j <= hb; ++j) {
      q[static_cast<std::size_t>(mm)][static_cast<std::size_t>(ha + j)] +=
          c * binom[static_cast<std::size_t>(j)];
    }
  }

  cert.c1 = upper_bound_01(q[1]);
  cert.c3 = upper_bound_01(q[2]);
  cert.c5 = upper_bound_01(q[3]);

  // With t = r^2 in (0, 1] and h(t) = c1 + c3 t + c5 t^2 >= rho(r)/r per ray:
  // c5 <= 0 gives h <= c1 + c3 t <= c3 t < 0; c5 > 0 makes h convex, so
  // h(t) <= (1-t) h(0) + t h(1) < 0 from h(0) = c1 <= 0 and h(1) < 0.
  const Rational h1 = cert.c1 + cert.c3 + cert.c5;
  if (cert.c1 > 0) {
    cert.detail = "linear bound " + rational_str(cert.c1) +
                  " r is positive; certificate covers the nonpositive-linear case only";
  } else if (!(cert.c3 < 0)) {
    cert.detail = "cubic bound " + rational_str(cert.c3) + " r^3 is not negative";
  } else if (!(h1 < 0)) {
    cert.detail = "bound at r = 1 is " + rational_str(h1) + " >= 0";
  } else {
    cert.isolated = true;
    cert.detail = "rho(r) <= (" + rational_str(cert.c1) + ") r + (" + rational_str(cert.c3) +
                  ") r^3 + (" + rational_str(cert.c5) +
                  ") r^5 < 0 on 0 < r <= 1: the linear bound is nonpositive, the cubic "
                  "bound negative, and the value at r = 1 is " +
                  rational_str(h1);
    if (cert.c5 > 0 && cert.c1 == 0) {
      cert.r2_bound = -cert.c3 / cert.c5;
      cert.detail += "; negativity extends to r^2 < " + rational_str(*cert.r2_bound);
    }
  }
  return cert;
}

}  // namespace shbif
