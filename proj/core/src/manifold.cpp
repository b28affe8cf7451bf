#include "shbif/manifold.hpp"

#include <string>

#include "shbif/spectral.hpp"

namespace shbif {

namespace {

std::string monomial_label(CenterMonomial m) {
  return "s1^" + std::to_string(m.a) + " s2^" + std::to_string(m.b);
}

// Degree-d slice of an expansion.
StateExpansion<Rational> degree_slice(const StateExpansion<Rational>& x, int d) {
  StateExpansion<Rational> out(x.trunc());
  for (const auto& [m, v] : x.terms()) {
    if (m.degree() == d) out.set(m, v);
  }
  return out;
}

}  // namespace

CenterManifoldMap CenterManifoldMap::raw(Rational lambda0, int order,
                                         StateExpansion<Rational> terms) {
  CenterManifoldMap psi;
  psi.lambda0 = std::move(lambda0);
  psi.order = order;
  psi.terms = std::move(terms);
  return psi;
}

void CenterManifoldMap::validate() const {
  if (order < 3 || order % 2 == 0) {
    throw std::domain_error("manifold order must be odd and >= 3");
  }
  for (const auto& [m, v] : terms.terms()) {
    const int d = m.degree();
    if (d < 3 || d > order || d % 2 == 0) {
      throw std::domain_error("manifold term " + monomial_label(m) +
                              " has degree outside the odd range 3.." +
                              std::to_string(order));
    }
    if (!v.mean_zero()) {
      throw std::domain_error("manifold value at " + monomial_label(m) +
                              " has a constant component");
    }
    if (!project_center(v).is_zero()) {
      throw std::domain_error("manifold value at " + monomial_label(m) +
                              " has a component along the center pair");
    }
  }
}

StateExpansion<Rational> diagonal_stable_solve(const StateExpansion<Rational>& rhs,
                                               const Rational& lambda) {
  StateExpansion<Rational> out(rhs.trunc());
  for (const auto& [m, v] : rhs.terms()) {
    TrigPoly<Rational> sol(rhs.trunc());
    for (const auto& [mode, c] : v.terms()) {
      if (mode.wave == Wave::Const) {
        diag::count_const_drop();
        continue;
      }
      const Rational eig = eigenvalue(mode.k, lambda);
      if (eig == 0) {
        throw ResonanceError("zero divisor: forcing on " + mode_label(mode) + " at " +
                             monomial_label(m) + " lies in the kernel of the linear part");
      }
      sol.set(mode, c / eig);
    }
    out.add(m, sol);
  }
  return out;
}

StateExpansion<Rational> homological_residual(const CenterManifoldMap& psi,
                                              const Rational& lambda0, int order) {
  const int trunc = psi.terms.trunc();
  const auto u1 = StateExpansion<Rational>::center_coordinates(trunc);
  const auto u = u1 + psi.terms;

  // g(u1 + psi) = -(u1 + psi)^3 through the requested degree. All wavenumbers
  // involved are odd, so no constant component arises.
  const auto gu = cube(u, order) * Rational(-1);
  const auto gc = gu.project_center();
  const PlanarPoly<Rational> f1 = gc.component(sin_mode(1));
  const PlanarPoly<Rational> f2 = gc.component(cos_mode(1));

  // The center multiplier of the tangency term uses the nonlinear center
  // component Pc g; at a critical parameter the linear center part vanishes,
  // making this the full tangency residual of the manifold equation.
  StateExpansion<Rational> r(trunc);
  r += scale_monomials(f1, psi.terms.derivative(0), order);
  r += scale_monomials(f2, psi.terms.derivative(1), order);
  r += psi.terms.apply_L(lambda0);
  r -= gu.project_stable();
  return r.truncate_degree(order);
}

CenterManifoldMap solve_center_manifold(const Rational& lambda0, int order, int trunc) {
  if (order < 3 || order % 2 == 0) {
    throw std::domain_error("manifold order must be odd and >= 3");
  }
  // The construction is a chart over the wavenumber-1 pair; demand that the
  // spectral splitting at this parameter agrees.
  const auto dec = SpectralDecomposition::make(lambda0, trunc);
  if (dec.center != std::vector<int>{1}) {
    throw std::domain_error("center set at this parameter is not the wavenumber-1 pair");
  }

  CenterManifoldMap psi = CenterManifoldMap::raw(lambda0, order, StateExpansion<Rational>(trunc));
  for (int d = 3; d <= order; d += 2) {
    // With psi solved below degree d, the residual opens at degree d and the
    // unknown enters it linearly as L psi_d.
    const auto r = homological_residual(psi, lambda0, d);
    const auto rd = degree_slice(r, d);
    psi.terms += diagonal_stable_solve(rd * Rational(-1), lambda0);
  }
  psi.validate();
  return psi;
}

StateExpansion<Rational> ansatz_form(const StateExpansion<Rational>& psi) {
  StateExpansion<Rational> out = psi;
  for (const auto& [m, v] : psi.terms()) {
    if (m.degree() != 3) continue;
    TrigPoly<Rational> rewritten = v;
    // A value c sin6x is represented as 2c sin2x cos4x, whose eigen-expansion
    // is c sin6x - c sin2x; likewise 2c cos2x cos4x = c cos6x + c cos2x. The
    // wavenumber-3 part is unchanged and a wavenumber-1 ghost rides along.
    const Rational cs = v.coeff(sin_mode(3));
    if (cs != 0) rewritten.add(sin_mode(1), -cs);
    const Rational cc = v.coeff(cos_mode(3));
    if (cc != 0) rewritten.add(cos_mode(1), cc);
    out.set(m, rewritten);
  }
  return out;
}

CubicCoefficients ansatz_coefficients(const CenterManifoldMap& psi) {
  // Mixed lines carry half their wavenumber-3 component:
  // sin2x cos4x = (sin6x - sin2x)/2, cos2x cos4x = (cos6x + cos2x)/2.
  CubicCoefficients c;
  c.alpha1 = 2 * psi.terms.value({3, 0}).coeff(sin_mode(3));
  c.alpha2 = 2 * psi.terms.value({0, 3}).coeff(cos_mode(3));
  c.alpha3 = 2 * psi.terms.value({2, 1}).coeff(cos_mode(3));
  c.alpha4 = 2 * psi.terms.value({1, 2}).coeff(sin_mode(3));
  return c;
}

CenterManifoldMap from_ansatz_coefficients(const Rational& lambda0,
                                           const CubicCoefficients& c, int trunc) {
  StateExpansion<Rational> terms(trunc);
  const Rational half(1, 2);
  terms.set({3, 0}, TrigPoly<Rational>::basis(sin_mode(3), c.alpha1 * half, trunc));
  terms.set({1, 2}, TrigPoly<Rational>::basis(sin_mode(3), c.alpha4 * half, trunc));
  terms.set({2, 1}, TrigPoly<Rational>::basis(cos_mode(3), c.alpha3 * half, trunc));
  terms.set({0, 3}, TrigPoly<Rational>::basis(cos_mode(3), c.alpha2 * half, trunc));
  return CenterManifoldMap::raw(lambda0, 3, terms);
}

ReducedVectorField reduced_vector_field(const CenterManifoldMap& psi, int order,
                                        FieldForm form) {
  if (order < 1 || order % 2 == 0) {
    throw std::domain_error("field order must be odd");
  }
  if (order > psi.order + 2) {
    throw std::domain_error("field order " + std::to_string(order) +
                            " needs manifold terms beyond order " +
                            std::to_string(psi.order));
  }
  const int trunc = psi.terms.trunc();
  const auto u1 = StateExpansion<Rational>::center_coordinates(trunc);
  const auto w = form == FieldForm::Ansatz ? ansatz_form(psi.terms) : psi.terms;
  const auto u = u1 + w;

  auto field = (u.apply_L(psi.lambda0) * Rational(-1)) - cube(u, order);
  field = field.project_center().truncate_degree(order);

  ReducedVectorField vf;
  vf.lambda = psi.lambda0;
  vf.order = order;
  vf.form = form;
  vf.g1 = field.component(sin_mode(1));
  vf.g2 = field.component(cos_mode(1));
  return vf;
}

ReducedVectorField parameterized_reduction(const Rational& lambda, int order,
                                           FieldForm form, int trunc) {
  const auto psi = solve_center_manifold(lambda, std::max(3, order - 2), trunc);
  return reduced_vector_field(psi, order, form);
}

}  // namespace shbif
