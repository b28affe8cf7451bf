// Center-manifold reduction for the quartic-linear flow
//   u_t = -L_lambda u + g(u),  L_lambda = (I + Laplacian)^2 - lambda,
//   g(u) = -u^3,
// on the mean-zero space over (0, pi), near the first instability lambda0 = 9
// where the wavenumber-1 pair (sin 2x, cos 2x) crosses the imaginary axis.
//
// The manifold is the odd-degree map psi(s1, s2) into the stable subspace with
// Psi = O(|s|^3); the reduced field is the center projection of the flow
// restricted to u = u1 + psi(u1).
#pragma once

#include <stdexcept>

#include "shbif/centerpoly.hpp"
#include "shbif/reduced_field.hpp"

namespace shbif {

// A degree-by-degree solve hit a zero divisor: some forcing mode lies in the
// kernel of L_lambda0 and cannot be inverted away.
struct ResonanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tangency coefficients of the degree-3 manifold on the mixed-line basis:
//   psi_3 = (alpha1 s1^3 + alpha4 s1 s2^2) sin2x cos4x
//         + (alpha2 s2^3 + alpha3 s1^2 s2) cos2x cos4x.
struct CubicCoefficients {
  Rational alpha1, alpha2, alpha3, alpha4;
};

struct CenterManifoldMap {
  Rational lambda0;
  int order = 3;
  // Graph convention: every value lies in the stable subspace (wavenumbers >= 2).
  StateExpansion<Rational> terms;

  // Unvalidated constructor for tests and fault injection.
  static CenterManifoldMap raw(Rational lambda0, int order, StateExpansion<Rational> terms);

  // Checks the graph-map invariants: only odd degrees 3..order, values in the
  // stable subspace, mean-zero. Throws std::domain_error on violation.
  void validate() const;
};

// Solves L_lambda0 psi_d = forcing degree by degree on the stable subspace.
// Throws ResonanceError when a forcing mode has a zero eigenvalue. A constant
// forcing component is discarded into the diagnostics counter.
StateExpansion<Rational> diagonal_stable_solve(const StateExpansion<Rational>& rhs,
                                               const Rational& lambda);

// Tangency residual of the manifold equation through the given degree:
//   R = Dpsi(s) . Pc[-L(u1+psi) + g(u1+psi)] + L psi - Ps g(u1 + psi),
// identically zero in each monomial iff psi solves the manifold equation to
// that order.
StateExpansion<Rational> homological_residual(const CenterManifoldMap& psi,
                                              const Rational& lambda0, int order);

// Degree-by-degree construction of the manifold at lambda0 up to the given
// odd order. trunc bounds the trig truncation of the stable values.
CenterManifoldMap solve_center_manifold(const Rational& lambda0, int order,
                                        int trunc = TrigPoly<Rational>::default_trunc);

// Rewrites the degree-3 wavenumber-3 values on the mixed lines
// sin2x cos4x = (sin6x - sin2x)/2 and cos2x cos4x = (cos6x + cos2x)/2.
// The result is no longer a graph over the center pair: each mixed line
// carries a wavenumber-1 ghost alongside the intended wavenumber-3 value.
StateExpansion<Rational> ansatz_form(const StateExpansion<Rational>& psi);

// Mixed-line coefficients of the degree-3 manifold (see CubicCoefficients).
CubicCoefficients ansatz_coefficients(const CenterManifoldMap& psi);

// Builds the degree-3 manifold back from mixed-line coefficients, in graph
// convention. Exact inverse of ansatz_coefficients for degree-3 maps.
CenterManifoldMap from_ansatz_coefficients(const Rational& lambda0,
                                           const CubicCoefficients& c,
                                           int trunc = TrigPoly<Rational>::default_trunc);

// Reduced planar field at psi.lambda0 through the given odd order:
//   (G1, G2) = components of Pc[-L(u1+w) + g(u1+w)] on (sin 2x, cos 2x),
// where w is psi.terms in graph form or ansatz_form(psi.terms) in ansatz form.
ReducedVectorField reduced_vector_field(const CenterManifoldMap& psi, int order,
                                        FieldForm form = FieldForm::Ansatz);

// Reduced field at a nearby parameter lambda: the manifold is recomputed with
// the diagonal solve at lambda (same forcing recursion), then projected. The
// linear part becomes (lambda - 9) s_i at the critical pair.
ReducedVectorField parameterized_reduction(const Rational& lambda, int order,
                                           FieldForm form = FieldForm::Ansatz,
                                           int trunc = TrigPoly<Rational>::default_trunc);

}  // namespace shbif
