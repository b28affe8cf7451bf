// Qualitative analysis of the reduced planar flow: time integration, radial
// structure, boundary classification of disk blocks, the bifurcated invariant
// circle, attractor-repeller verification, and exact origin-isolation
// certificates.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shbif/reduced_field.hpp"

namespace shbif {

struct PlanarState {
  double s1 = 0.0, s2 = 0.0;
};

inline double norm(PlanarState s) { return std::hypot(s.s1, s.s2); }

struct ReducedTrajectory {
  double dt = 0.0;
  std::vector<PlanarState> states;  // states[0] is the initial state
  bool escaped = false;             // stopped early after |s| exceeded 1e6
};

// Classical fourth-order one-step integration with fixed step. The trajectory
// has floor(T/dt) + 1 states unless it escapes; polynomial fields blow up in
// finite time far out, so integration stops once |s| > 1e6.
ReducedTrajectory integrate_reduced(const ReducedVectorField& vf, PlanarState s0,
                                    double t_end, double dt);

// For a rotationally symmetric field G(s) = rho(|s|) s/|s|, the odd
// coefficients of rho: result[d] multiplies r^d. Exact. Throws
// std::domain_error when the field has a tangential or angle-dependent
// component (the ansatz form at order 5 does).
std::vector<Rational> radial_polynomial(const ReducedVectorField& vf);

enum class SampleLabel : std::uint8_t { Ingress, Egress, Tangent };
enum class BlockVerdict : std::uint8_t { AttractorLike, RepellerLike, Mixed };
const char* to_string(BlockVerdict v);

struct BlockClassification {
  double lambda = 0.0;
  double r = 0.0;
  double tol = 0.0;
  std::vector<SampleLabel> labels;  // one per boundary sample, by angle
  int ingress = 0, egress = 0, tangent = 0;
  BlockVerdict verdict = BlockVerdict::Mixed;
};

// Signs of the outward-normal speed <G(s), s>/|s| at n equispaced points of
// the circle |s| = r. All ingress: attractor-like (empty exit set); all
// egress: repeller-like. Tangent samples (within tol) beyond the allowed
// fraction, or any ingress/egress mixture, give "mixed". Default tolerance is
// 1e-12 * max|coefficient| * r^3. Requires r > 0 and n >= 64.
BlockClassification classify_block(const ReducedVectorField& vf, double r, int samples,
                                   std::optional<double> tol = std::nullopt,
                                   double tangent_fraction = 0.0);

struct InvariantCircle {
  double r_star = 0.0;   // smallest positive root of rho
  double lambda = 0.0;
  double residual = 0.0; // |rho(r_star)| after bisection
  int root_count = 0;    // distinct roots found in (0, r_max]
};

// Smallest positive root of the radial polynomial on (0, r_max], located by
// sign-bracketing on a 4096-point grid and bisection to 1e-12. Returns nullopt
// when rho has no sign change there (e.g. every lambda <= 9).
std::optional<InvariantCircle> invariant_circle(const ReducedVectorField& vf,
                                                double r_max = 10.0);

struct ProbeCheck {
  PlanarState start;
  double forward_gap = 0.0;    // | |s(T)| - r* | under the forward flow
  double backward_norm = 0.0;  // |s(T)| under the time-reversed flow
  bool ok = false;
};

struct AttractorRepellerReport {
  bool passed = false;
  double r_star = 0.0;
  std::vector<ProbeCheck> probes;
  std::string failure;  // empty when passed
};

// Probes the punctured disk on |s| = r*/2 at equispaced angles: each forward
// orbit must approach the circle within fwd_tol by t_end and each orbit of the
// time-reversed field must fall into the origin within bwd_tol. Dynamical
// failures are reported, not thrown.
AttractorRepellerReport check_attractor_repeller(const ReducedVectorField& vf,
                                                 const InvariantCircle& circle,
                                                 int probes = 8, double t_end = 500.0,
                                                 double dt = 0.01, double fwd_tol = 1e-4,
                                                 double bwd_tol = 1e-6);

struct OriginCertificate {
  bool isolated = false;
  Rational c1, c3, c5;               // certified bound rho <= c1 r + c3 r^3 + c5 r^5
  std::optional<Rational> r2_bound;  // when c5 > 0: rho < 0 while 0 < r^2 < r2_bound
  std::string detail;
};

// Exact certificate that the origin is an isolated invariant set: bounds the
// outward-normal speed over every ray by an odd polynomial with rational
// coefficients and certifies its negativity on 0 < r <= 1 symbolically.
// Handles fields whose <G(s), s> is even in each coordinate (which both field
// forms are); anything else is refused with a detail message, never guessed.
OriginCertificate certify_origin_isolated(const ReducedVectorField& vf);

}  // namespace shbif
