#include "shbif/pde.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <future>
#include <numbers>
#include <stdexcept>

#include "shbif/dynamics.hpp"
#include "shbif/manifold.hpp"

namespace shbif {

namespace {

constexpr double kEscapeRadius = 1e6;

double mode_eig(int k, double lambda) {
  const double q = 1.0 - 4.0 * k * k;
  return q * q - lambda;
}

using Cvec = std::vector<std::complex<double>>;

// Exponential coefficients of a real mean-zero state: u = sum_{|k|<=K} c_k e^{2ikx}
// with c_k = (b_k - i a_k)/2 and c_{-k} = conj(c_k).
void spectrum_from_state(const ModeState& u, Cvec& c) {
  c.assign(static_cast<std::size_t>(u.trunc) + 1, {});
  for (int k = 1; k <= u.trunc; ++k) {
    c[static_cast<std::size_t>(k)] = {0.5 * u.b[static_cast<std::size_t>(k)],
                                      -0.5 * u.a[static_cast<std::size_t>(k)]};
  }
}

std::complex<double> hat(const Cvec& c, int j) {
  return j >= 0 ? c[static_cast<std::size_t>(j)]
                : std::conj(c[static_cast<std::size_t>(-j)]);
}

// c2[m] = sum_j hat(c, j) hat(c, m - j) for 0 <= m <= 2K: the spectrum of u^2.
void self_convolve(const Cvec& c, int trunc, Cvec& c2) {
  const int K = trunc;
  c2.assign(static_cast<std::size_t>(2 * K) + 1, {});
  for (int m = 0; m <= 2 * K; ++m) {
    std::complex<double> acc{};
    for (int j = std::max(-K, m - K); j <= K; ++j) acc += hat(c, j) * hat(c, m - j);
    c2[static_cast<std::size_t>(m)] = acc;
  }
}

// Dealiased cube: the full convolution through wavenumber index 3K is formed
// implicitly and only indices 0..K are evaluated, so no aliasing can occur.
void cube_from(const Cvec& c, const Cvec& c2, int trunc, ModeState& out) {
  const int K = trunc;
  const auto hat2 = [&](int j) {
    return j >= 0 ? c2[static_cast<std::size_t>(j)]
                  : std::conj(c2[static_cast<std::size_t>(-j)]);
  };
  for (int m = 1; m <= K; ++m) {
    std::complex<double> acc{};
    for (int j = m - K; j <= m + K; ++j) acc += hat2(j) * hat(c, m - j);
    out.a[static_cast<std::size_t>(m)] = -2.0 * acc.imag();
    out.b[static_cast<std::size_t>(m)] = 2.0 * acc.real();
  }
  std::complex<double> mean{};
  for (int j = -K; j <= K; ++j) mean += hat2(j) * hat(c, -j);
  if (mean.real() != 0.0) diag::count_const_drop();
}

struct CubeWork {
  Cvec c, c2;
};

void cube_into(const ModeState& u, ModeState& out, CubeWork& w) {
  spectrum_from_state(u, w.c);
  self_convolve(w.c, u.trunc, w.c2);
  cube_from(w.c, w.c2, u.trunc, out);
}

double phi1(double z) {
  if (std::fabs(z) < 0.5) {
    // sum z^n / (n+1)!
    double term = 1.0, acc = 1.0;
    for (int n = 1; n <= 20; ++n) {
      term *= z / (n + 1);
      acc += term;
    }
    return acc;
  }
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::fabs(z) < 0.5) {
    // sum z^n / (n+2)!
    double term = 0.5, acc = 0.5;
    for (int n = 1; n <= 20; ++n) {
      term *= z / (n + 2);
      acc += term;
    }
    return acc;
  }
  return (std::expm1(z) - z) / (z * z);
}

}  // namespace

ModeState state_from_trig(const TrigF& u, int trunc) {
  ModeState s(trunc);
  for (const auto& [m, c] : u.terms()) {
    if (m.wave == Wave::Const) {
      diag::count_const_drop();
      continue;
    }
    if (m.k > trunc) {
      throw TruncationError("state mode " + mode_label(m) + " exceeds truncation K=" +
                            std::to_string(trunc));
    }
    (m.wave == Wave::Sin ? s.a : s.b)[static_cast<std::size_t>(m.k)] = c;
  }
  return s;
}

TrigF trig_from_state(const ModeState& u) {
  TrigF out(u.trunc);
  for (int k = 1; k <= u.trunc; ++k) {
    out.set(sin_mode(k), u.a[static_cast<std::size_t>(k)]);
    out.set(cos_mode(k), u.b[static_cast<std::size_t>(k)]);
  }
  return out;
}

double l2_norm(const ModeState& u) {
  double acc = 0.0;
  for (int k = 1; k <= u.trunc; ++k) {
    acc += u.a[static_cast<std::size_t>(k)] * u.a[static_cast<std::size_t>(k)] +
           u.b[static_cast<std::size_t>(k)] * u.b[static_cast<std::size_t>(k)];
  }
  return std::sqrt(acc);
}

double l2_dist(const ModeState& x, const ModeState& y) {
  if (x.trunc != y.trunc) throw std::domain_error("state truncation mismatch");
  double acc = 0.0;
  for (int k = 1; k <= x.trunc; ++k) {
    const double da = x.a[static_cast<std::size_t>(k)] - y.a[static_cast<std::size_t>(k)];
    const double db = x.b[static_cast<std::size_t>(k)] - y.b[static_cast<std::size_t>(k)];
    acc += da * da + db * db;
  }
  return std::sqrt(acc);
}

double mode1_amplitude(const ModeState& u) {
  return std::hypot(u.a[1], u.b[1]);
}

double sup_amplitude(const ModeState& u, int grid) {
  if (grid < 2) throw std::domain_error("grid must have at least 2 points");
  double best = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = std::numbers::pi * i / grid;
    double v = 0.0;
    for (int k = 1; k <= u.trunc; ++k) {
      v += u.a[static_cast<std::size_t>(k)] * std::sin(2.0 * k * x) +
           u.b[static_cast<std::size_t>(k)] * std::cos(2.0 * k * x);
    }
    best = std::max(best, std::fabs(v));
  }
  return best;
}

ModeState translate(const ModeState& u, double theta) {
  ModeState out(u.trunc);
  for (int k = 1; k <= u.trunc; ++k) {
    const double c = std::cos(2.0 * k * theta);
    const double s = std::sin(2.0 * k * theta);
    const double a = u.a[static_cast<std::size_t>(k)];
    const double b = u.b[static_cast<std::size_t>(k)];
    out.a[static_cast<std::size_t>(k)] = a * c - b * s;
    out.b[static_cast<std::size_t>(k)] = a * s + b * c;
  }
  return out;
}

ModeState cube_state(const ModeState& u) {
  ModeState out(u.trunc);
  CubeWork w;
  cube_into(u, out, w);
  return out;
}

double residual_norm(double lambda, const ModeState& u) {
  const ModeState cu = cube_state(u);
  double acc = 0.0;
  for (int k = 1; k <= u.trunc; ++k) {
    const double eig = mode_eig(k, lambda);
    const double ra = -eig * u.a[static_cast<std::size_t>(k)] - cu.a[static_cast<std::size_t>(k)];
    const double rb = -eig * u.b[static_cast<std::size_t>(k)] - cu.b[static_cast<std::size_t>(k)];
    acc += ra * ra + rb * rb;
  }
  return std::sqrt(acc);
}

double lyapunov_value(const ModeState& u, double lambda) {
  const double halfpi = 0.5 * std::numbers::pi;
  double quad = 0.0;
  for (int k = 1; k <= u.trunc; ++k) {
    const double q = 1.0 - 4.0 * k * k;
    const double e2 = u.a[static_cast<std::size_t>(k)] * u.a[static_cast<std::size_t>(k)] +
                      u.b[static_cast<std::size_t>(k)] * u.b[static_cast<std::size_t>(k)];
    quad += (0.5 * q * q - 0.5 * lambda) * e2;
  }

  // Quartic term: 1/4 int (u^2)^2 via the spectrum of u^2.
  CubeWork w;
  spectrum_from_state(u, w.c);
  self_convolve(w.c, u.trunc, w.c2);
  const double w0 = w.c2[0].real();
  double quart = std::numbers::pi * w0 * w0;
  for (int m = 1; m <= 2 * u.trunc; ++m) {
    const double ws = -2.0 * w.c2[static_cast<std::size_t>(m)].imag();
    const double wc = 2.0 * w.c2[static_cast<std::size_t>(m)].real();
    quart += halfpi * (ws * ws + wc * wc);
  }
  return halfpi * quad + 0.25 * quart;
}

double lyapunov_value(const TrigF& u, double lambda) {
  if (!u.mean_zero()) throw std::domain_error("functional is defined on the mean-zero space");
  return lyapunov_value(state_from_trig(u, u.trunc()), lambda);
}

void SimConfig::validate() const {
  if (!std::isfinite(lambda)) throw std::domain_error("lambda must be finite");
  if (trunc < 4) throw std::domain_error("truncation must be >= 4");
  if (!(dt > 0.0)) throw std::domain_error("dt must be positive");
  if (!(t_end >= dt)) throw std::domain_error("horizon must cover at least one step");
  if (!(tol > 0.0)) throw std::domain_error("tolerance must be positive");
  if (ic_count < 1) throw std::domain_error("need at least one initial condition");
  if (!(ic_radius > 0.0)) throw std::domain_error("initial radius must be positive");
}

PdeIntegrator::PdeIntegrator(double lambda, int trunc, double dt)
    : lambda_(lambda), dt_(dt), trunc_(trunc), stage_(trunc), n0_(trunc), n1_(trunc) {
  if (trunc < 1) throw std::domain_error("truncation must be >= 1");
  if (!(dt > 0.0)) throw std::domain_error("dt must be positive");
  efac_.resize(static_cast<std::size_t>(trunc) + 1);
  p1dt_.resize(static_cast<std::size_t>(trunc) + 1);
  p2dt_.resize(static_cast<std::size_t>(trunc) + 1);
  for (int k = 1; k <= trunc; ++k) {
    const double z = -mode_eig(k, lambda) * dt;
    efac_[static_cast<std::size_t>(k)] = std::exp(z);
    p1dt_[static_cast<std::size_t>(k)] = dt * phi1(z);
    p2dt_[static_cast<std::size_t>(k)] = dt * phi2(z);
  }
}

void PdeIntegrator::step(ModeState& u) {
  if (u.trunc != trunc_) throw std::domain_error("state truncation mismatch");
  static thread_local CubeWork work;
  // Nonlinearity N(u) = -P(u^3); two evaluations per step.
  cube_into(u, n0_, work);
  for (int k = 1; k <= trunc_; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    stage_.a[ks] = efac_[ks] * u.a[ks] - p1dt_[ks] * n0_.a[ks];
    stage_.b[ks] = efac_[ks] * u.b[ks] - p1dt_[ks] * n0_.b[ks];
  }
  cube_into(stage_, n1_, work);
  for (int k = 1; k <= trunc_; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    u.a[ks] = stage_.a[ks] - p2dt_[ks] * (n1_.a[ks] - n0_.a[ks]);
    u.b[ks] = stage_.b[ks] - p2dt_[ks] * (n1_.b[ks] - n0_.b[ks]);
  }
}

PdeTrajectory integrate_pde(const SimConfig& cfg, const TrigF& u0, double sample_dt) {
  cfg.validate();
  if (!u0.mean_zero()) throw std::domain_error("initial state must be mean-zero");
  if (!(sample_dt > 0.0)) throw std::domain_error("sample interval must be positive");

  ModeState u = state_from_trig(u0, cfg.trunc);
  PdeIntegrator stepper(cfg.lambda, cfg.trunc, cfg.dt);

  const auto steps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));
  const long sample_steps =
      std::max<long>(1, static_cast<long>(std::llround(sample_dt / cfg.dt)));

  PdeTrajectory out;
  out.sample_dt = sample_steps * cfg.dt;
  out.times.push_back(0.0);
  out.states.push_back(u);
  for (long i = 1; i <= steps; ++i) {
    stepper.step(u);
    if (!(l2_norm(u) <= kEscapeRadius)) {  // NaN counts as escaped
      out.escaped = true;
      out.times.push_back(i * cfg.dt);
      out.states.push_back(u);
      break;
    }
    if (i % sample_steps == 0 || i == steps) {
      out.times.push_back(i * cfg.dt);
      out.states.push_back(u);
    }
  }
  return out;
}

ModeState random_state(std::uint64_t seed, std::uint64_t index, int trunc, double radius) {
  if (trunc < 1) throw std::domain_error("truncation must be >= 1");
  if (!(radius > 0.0)) throw std::domain_error("radius must be positive");

  // splitmix64 substream per (seed, index): fully specified, platform-stable.
  std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  const auto next_u64 = [&s] {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  };
  const auto uniform = [&] {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
  };

  ModeState u(trunc);
  bool have_spare = false;
  double spare = 0.0;
  const auto gaussian = [&] {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare = r * std::sin(t);
    have_spare = true;
    return r * std::cos(t);
  };

  for (int k = 1; k <= trunc; ++k) {
    const double decay = 1.0 / (1.0 + static_cast<double>(k) * k);
    u.a[static_cast<std::size_t>(k)] = gaussian() * decay;
    u.b[static_cast<std::size_t>(k)] = gaussian() * decay;
  }
  const double target = radius * (0.3 + 0.7 * uniform());
  const double n = l2_norm(u);
  const double scale = target / n;
  for (int k = 1; k <= trunc; ++k) {
    u.a[static_cast<std::size_t>(k)] *= scale;
    u.b[static_cast<std::size_t>(k)] *= scale;
  }
  return u;
}

SettleResult settle(const SimConfig& cfg, ModeState u0) {
  cfg.validate();
  if (u0.trunc != cfg.trunc) throw std::domain_error("state truncation mismatch");

  PdeIntegrator stepper(cfg.lambda, cfg.trunc, cfg.dt);
  const long unit_steps = std::max<long>(1, static_cast<long>(std::llround(1.0 / cfg.dt)));
  const auto total_steps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));

  SettleResult res;
  res.state = u0;
  ModeState prev = u0;
  long done = 0;
  while (done < total_steps) {
    const long block = std::min(unit_steps, total_steps - done);
    for (long i = 0; i < block; ++i) stepper.step(res.state);
    done += block;
    res.t = done * cfg.dt;
    if (!(l2_norm(res.state) <= kEscapeRadius)) {
      res.escaped = true;
      return res;
    }
    res.last_delta = l2_dist(res.state, prev);
    prev = res.state;
    if (res.last_delta < cfg.tol) {
      res.residual = residual_norm(cfg.lambda, res.state);
      if (res.residual < cfg.tol) {
        res.converged = true;
        return res;
      }
    }
  }
  res.residual = residual_norm(cfg.lambda, res.state);
  return res;
}

StationaryResult stationary_amplitude(double lambda, int trunc) {
  if (trunc < 1) throw std::domain_error("truncation must be >= 1");
  StationaryResult res;
  res.profile.assign(static_cast<std::size_t>(trunc), 0.0);
  if (lambda <= 9.0) return res;

  ModeState u(trunc);
  u.a[1] = 2.0 * std::sqrt((lambda - 9.0) / 3.0);

  Eigen::MatrixXd jac(trunc, trunc);
  Eigen::VectorXd rhs(trunc);
  CubeWork w;
  ModeState cu(trunc);

  for (int iter = 0;; ++iter) {
    cube_into(u, cu, w);
    double worst = 0.0;
    for (int k = 1; k <= trunc; ++k) {
      const double f = mode_eig(k, lambda) * u.a[static_cast<std::size_t>(k)] +
                       cu.a[static_cast<std::size_t>(k)];
      rhs(k - 1) = -f;
      worst = std::max(worst, std::fabs(f));
    }
    res.iterations = iter;
    res.residual = worst;
    if (worst < 1e-12) break;
    if (iter == 50) {
      throw std::runtime_error("stationary solve did not converge: residual " +
                               std::to_string(worst));
    }

    // u is sin-only, so u^2 is a pure cosine series W(m) read off the
    // convolution; the cubic's derivative is 3/2 (W(|k-j|) - W(k+j)).
    const auto wcos = [&](int m) {
      return m <= 2 * trunc ? 2.0 * w.c2[static_cast<std::size_t>(m)].real() : 0.0;
    };
    for (int k = 1; k <= trunc; ++k) {
      for (int j = 1; j <= trunc; ++j) {
        double v = 1.5 * (wcos(std::abs(k - j)) - wcos(k + j));
        if (k == j) v += mode_eig(k, lambda);
        jac(k - 1, j - 1) = v;
      }
    }
    const Eigen::VectorXd delta = jac.partialPivLu().solve(rhs);
    for (int k = 1; k <= trunc; ++k) u.a[static_cast<std::size_t>(k)] += delta(k - 1);
  }

  res.a1 = u.a[1];
  for (int k = 1; k <= trunc; ++k) {
    res.profile[static_cast<std::size_t>(k - 1)] = u.a[static_cast<std::size_t>(k)];
  }
  res.sup = sup_amplitude(u);
  return res;
}

AttractorSample sample_attractor(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.ic_count < 8) throw std::domain_error("need at least 8 initial conditions");

  std::vector<std::future<SettleResult>> futures;
  futures.reserve(static_cast<std::size_t>(cfg.ic_count));
  for (int i = 0; i < cfg.ic_count; ++i) {
    futures.push_back(std::async(std::launch::async, [&cfg, i] {
      return settle(cfg, random_state(cfg.ic_seed, static_cast<std::uint64_t>(i),
                                      cfg.trunc, cfg.ic_radius));
    }));
  }

  AttractorSample out;
  out.lambda = cfg.lambda;
  // The trivial state is always part of the sampled set.
  std::vector<ModeState> reps;
  reps.emplace_back(cfg.trunc);
  out.states.push_back(trig_from_state(reps.front()));
  out.residuals.push_back(0.0);

  // Merge in initial-condition order for determinism.
  for (auto& fut : futures) {
    const SettleResult r = fut.get();
    if (r.escaped) {
      ++out.escaped;
      continue;
    }
    if (!r.converged) {
      ++out.excluded;
      continue;
    }
    ++out.converged;
    bool duplicate = false;
    for (const auto& rep : reps) {
      if (l2_dist(r.state, rep) < 10.0 * cfg.tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      reps.push_back(r.state);
      out.states.push_back(trig_from_state(r.state));
      out.residuals.push_back(r.residual);
    }
  }

  double dist = 0.0;
  for (const auto& rep : reps) dist = std::max(dist, l2_norm(rep));
  out.dist_h = dist;
  return out;
}

std::vector<SweepRow> bifurcation_sweep(const std::vector<double>& lambdas,
                                        const SimConfig& base, const SweepOptions& opts) {
  if (lambdas.empty()) throw std::domain_error("lambda grid is empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!std::isfinite(lambdas[i])) throw std::domain_error("lambda grid must be finite");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw std::domain_error("lambda grid must be strictly increasing");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size());
  for (const double lam : lambdas) {
    SweepRow row;
    row.lambda = lam;
    try {
      SimConfig cfg = base;
      cfg.lambda = lam;
      const AttractorSample sample = sample_attractor(cfg);
      row.dist_h = sample.dist_h;
      row.converged = sample.converged;
      row.escaped = sample.escaped;

      const auto vf = parameterized_reduction(Rational(lam), opts.order, FieldForm::Graph);
      if (const auto circle = invariant_circle(vf)) row.r_star = circle->r_star;
      row.amplitude_newton = stationary_amplitude(lam, base.trunc).a1;
      row.verdict = to_string(classify_block(vf, opts.block_r, opts.block_samples).verdict);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace shbif
