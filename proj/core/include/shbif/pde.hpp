// Full-equation integration at truncation K: exponential time differencing
// with the diagonal linear part solved exactly, attractor sampling, stationary
// Newton solves, and the Lyapunov functional.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shbif/trigpoly.hpp"

namespace shbif {

// Mode coefficients of a mean-zero state: a[k], b[k] multiply sin 2kx, cos 2kx
// for 1 <= k <= trunc; index 0 is unused padding.
struct ModeState {
  int trunc = 0;
  std::vector<double> a, b;

  explicit ModeState(int trunc_ = 1)
      : trunc(trunc_), a(static_cast<std::size_t>(trunc_) + 1, 0.0),
        b(static_cast<std::size_t>(trunc_) + 1, 0.0) {}
};

// Conversions. from_trig drops (and counts) a constant entry and refuses
// wave modes beyond the target truncation.
ModeState state_from_trig(const TrigF& u, int trunc);
TrigF trig_from_state(const ModeState& u);

// Coefficient l2 norm sqrt(sum a_k^2 + b_k^2), the state-space metric used
// for distances, convergence, and escape checks throughout.
double l2_norm(const ModeState& u);
double l2_dist(const ModeState& x, const ModeState& y);

// Amplitude of the critical pair, sqrt(a_1^2 + b_1^2).
double mode1_amplitude(const ModeState& u);

// Sup-norm amplitude max_x |u(x)| on a uniform grid over (0, pi).
double sup_amplitude(const ModeState& u, int grid = 4096);

// The translate u(. + theta), a rotation of each coefficient pair.
ModeState translate(const ModeState& u, double theta);

// u^3 projected onto the mean-zero space, by exact complex-coefficient
// convolution through wavenumber index 3K, then truncation to K. A nonzero
// constant component is discarded into the diagnostics counter.
ModeState cube_state(const ModeState& u);

// Norm of the flow right-hand side -L_lambda u - P(u^3); zero at equilibria.
double residual_norm(double lambda, const ModeState& u);

// Lyapunov functional V(u) = 1/2 int |(I+Laplacian)u|^2 - int (lambda/2 u^2 - 1/4 u^4),
// evaluated via Parseval and coefficient convolution; V(0) = 0 exactly.
double lyapunov_value(const ModeState& u, double lambda);
double lyapunov_value(const TrigF& u, double lambda);

struct SimConfig {
  double lambda = 9.0;
  int trunc = 32;            // modes 1..trunc
  double dt = 1e-3;
  double t_end = 200.0;
  std::uint64_t ic_seed = 1;
  int ic_count = 8;
  double ic_radius = 1.0;
  double tol = 1e-8;

  void validate() const;  // throws std::domain_error on bad parameters
};

// Second-order exponential time differencing: the stiff diagonal linear part
// enters through exp(-eig_k dt) exactly, the cubic through the phi1/phi2
// weights, so the only step-size restriction comes from the nonlinearity.
class PdeIntegrator {
 public:
  PdeIntegrator(double lambda, int trunc, double dt);

  void step(ModeState& u);

  double lambda() const { return lambda_; }
  int trunc() const { return trunc_; }
  double dt() const { return dt_; }

 private:
  double lambda_, dt_;
  int trunc_;
  std::vector<double> efac_, p1dt_, p2dt_;  // exp(z), dt phi1(z), dt phi2(z)
  ModeState stage_, n0_, n1_;
};

struct PdeTrajectory {
  double sample_dt = 0.0;
  std::vector<double> times;
  std::vector<ModeState> states;  // states[0] is the initial state
  bool escaped = false;
};

// Fixed-horizon integration sampling the state every sample_dt time units
// (plus the final state). Escape (norm > 1e6) truncates with a flag.
PdeTrajectory integrate_pde(const SimConfig& cfg, const TrigF& u0, double sample_dt = 1.0);

// Seeded pseudo-random smooth initial state with norm in [0.3, 1] * radius.
// Platform-stable: the generator and the normal sampling are fixed here
// rather than delegated to implementation-defined library distributions.
ModeState random_state(std::uint64_t seed, std::uint64_t index, int trunc, double radius);

struct SettleResult {
  ModeState state{1};
  bool converged = false;
  bool escaped = false;
  double t = 0.0;          // time reached
  double last_delta = 0.0; // state change over the last unit interval
  double residual = 0.0;
};

// Integrates until the state moves less than cfg.tol over a unit time
// interval (and the flow residual is below cfg.tol), or until cfg.t_end.
SettleResult settle(const SimConfig& cfg, ModeState u0);

struct StationaryResult {
  double a1 = 0.0;             // critical-mode coefficient
  double sup = 0.0;            // sup-norm amplitude of the profile
  std::vector<double> profile; // sin coefficients 1..trunc
  int iterations = 0;
  double residual = 0.0;
};

// Newton iteration for the nontrivial steady state on the sin-only slice
// (phase fixed by translation symmetry), initial guess a1 = 2 sqrt((lambda-9)/3).
// Returns the zero profile for lambda <= 9; throws std::runtime_error when 50
// iterations fail to reach residual 1e-12.
StationaryResult stationary_amplitude(double lambda, int trunc);

struct AttractorSample {
  double lambda = 0.0;
  std::vector<TrigF> states;      // deduplicated converged states; origin included
  std::vector<double> residuals;  // flow residual per state
  double dist_h = 0.0;            // max state norm = Hausdorff distance to {0}
  int converged = 0;
  int excluded = 0;               // reached t_end without converging
  int escaped = 0;
};

// Integrates cfg.ic_count seeded initial states of norm <= ic_radius in
// parallel, collects converged terminal states, deduplicates within 10 * tol,
// and always includes the trivial state. Deterministic for fixed config.
AttractorSample sample_attractor(const SimConfig& cfg);

struct SweepRow {
  double lambda = 0.0;
  std::optional<double> dist_h;
  std::optional<double> r_star;
  std::optional<double> amplitude_newton;
  std::string verdict;
  int converged = 0;
  int escaped = 0;
  std::string error;  // nonempty when this row failed; sweep continues
};

struct SweepOptions {
  int order = 5;           // reduction order for r* and the block verdict
  double block_r = 0.01;
  int block_samples = 64;
};

// Per lambda: attractor sample, invariant circle of the parameterized
// reduction (graph form), Newton amplitude, and the disk-block verdict.
// Lambdas must be finite and strictly increasing. Row failures are recorded
// in the row's error field and do not abort the sweep.
std::vector<SweepRow> bifurcation_sweep(const std::vector<double>& lambdas,
                                        const SimConfig& base,
                                        const SweepOptions& opts = {});

}  // namespace shbif
