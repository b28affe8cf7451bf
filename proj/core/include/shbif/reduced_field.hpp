// The reduced planar vector field (ds1/dt, ds2/dt) = (G1, G2) with exact
// rational coefficients, plus a flattened double evaluator for integration.
#pragma once

#include <array>
#include <vector>

#include "shbif/centerpoly.hpp"

namespace shbif {

// Convention for writing the degree-3 manifold coefficients before forming
// the field. Ansatz expresses each wavenumber-3 value on the mixed lines
// sin2x cos4x and cos2x cos4x, which reintroduces a wavenumber-1 component
// and changes the reduced field at degree 5; Graph keeps the manifold as a
// genuine graph over the center pair, yielding the rotationally symmetric
// gradient field. The two agree through degree 3.
enum class FieldForm { Ansatz, Graph };

inline const char* to_string(FieldForm f) {
  return f == FieldForm::Ansatz ? "ansatz" : "graph";
}

struct ReducedVectorField {
  Rational lambda;
  int order = 3;
  FieldForm form = FieldForm::Ansatz;
  PlanarPoly<Rational> g1, g2;
};

// Double-precision view of a ReducedVectorField, cheap to evaluate in loops.
class PlanarFieldEval {
 public:
  PlanarFieldEval() = default;
  explicit PlanarFieldEval(const ReducedVectorField& vf) {
    for (const auto& [m, c] : vf.g1.terms()) g1_.push_back({m.a, m.b, to_double(c)});
    for (const auto& [m, c] : vf.g2.terms()) g2_.push_back({m.a, m.b, to_double(c)});
  }

  std::array<double, 2> operator()(double s1, double s2) const {
    return {eval_terms(g1_, s1, s2), eval_terms(g2_, s1, s2)};
  }

  double max_abs_coeff() const {
    double best = 0.0;
    for (const auto& t : g1_) best = std::max(best, std::fabs(t.c));
    for (const auto& t : g2_) best = std::max(best, std::fabs(t.c));
    return best;
  }

 private:
  struct Term {
    int a, b;
    double c;
  };

  static double eval_terms(const std::vector<Term>& ts, double s1, double s2) {
    double acc = 0.0;
    for (const auto& t : ts) {
      double v = t.c;
      for (int i = 0; i < t.a; ++i) v *= s1;
      for (int i = 0; i < t.b; ++i) v *= s2;
      acc += v;
    }
    return acc;
  }

  std::vector<Term> g1_, g2_;
};

}  // namespace shbif
