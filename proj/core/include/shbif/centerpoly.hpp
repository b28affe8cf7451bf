// Polynomial algebra in the center coordinates (s1, s2).
//
// PlanarPoly is a scalar-valued polynomial; StateExpansion maps each monomial
// s1^a s2^b to a trigonometric value, which is the working representation for
// center-manifold graphs and for fields on the full space parameterized by the
// center coordinates.
#pragma once

#include <limits>
#include <map>
#include <stdexcept>

#include "shbif/trigpoly.hpp"

namespace shbif {

// Graded order, s1-major within a degree: 1, s1, s2, s1^2, s1 s2, s2^2, ...
struct CenterMonomial {
  int a = 0;  // power of s1
  int b = 0;  // power of s2
  int degree() const { return a + b; }
  friend bool operator==(const CenterMonomial&, const CenterMonomial&) = default;
  friend bool operator<(const CenterMonomial& x, const CenterMonomial& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return x.a > y.a;
  }
};

template <class S>
class PlanarPoly {
 public:
  PlanarPoly() = default;

  static PlanarPoly constant(S v) {
    PlanarPoly p;
    p.set({0, 0}, std::move(v));
    return p;
  }
  static PlanarPoly monomial(CenterMonomial m, S v) {
    PlanarPoly p;
    p.set(m, std::move(v));
    return p;
  }

  const std::map<CenterMonomial, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
  }

  S coeff(CenterMonomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  void set(CenterMonomial m, S v) {
    if (m.a < 0 || m.b < 0) throw std::domain_error("negative monomial power");
    if (v == S(0)) {
      terms_.erase(m);
    } else {
      terms_[m] = std::move(v);
    }
  }

  void add(CenterMonomial m, const S& v) {
    if (m.a < 0 || m.b < 0) throw std::domain_error("negative monomial power");
    if (v == S(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (!inserted) {
      it->second += v;
      if (it->second == S(0)) terms_.erase(it);
    }
  }

  PlanarPoly& operator+=(const PlanarPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  PlanarPoly& operator-=(const PlanarPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, S(-c));
    return *this;
  }
  PlanarPoly& operator*=(const S& v) {
    if (v == S(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= v;
    return *this;
  }
  friend PlanarPoly operator+(PlanarPoly a, const PlanarPoly& b) { return a += b; }
  friend PlanarPoly operator-(PlanarPoly a, const PlanarPoly& b) { return a -= b; }
  friend PlanarPoly operator*(PlanarPoly a, const S& v) { return a *= v; }
  friend PlanarPoly operator*(const S& v, PlanarPoly a) { return a *= v; }
  friend bool operator==(const PlanarPoly& a, const PlanarPoly& b) {
    return a.terms_ == b.terms_;
  }

  // Product, discarding monomials above degree_cap.
  friend PlanarPoly multiply(const PlanarPoly& x, const PlanarPoly& y,
                             int degree_cap = std::numeric_limits<int>::max()) {
    PlanarPoly out;
    for (const auto& [mx, cx] : x.terms_) {
      for (const auto& [my, cy] : y.terms_) {
        if (mx.degree() + my.degree() > degree_cap) continue;
        out.add({mx.a + my.a, mx.b + my.b}, cx * cy);
      }
    }
    return out;
  }

  // Partial derivative: var 0 is s1, var 1 is s2.
  PlanarPoly derivative(int var) const {
    if (var != 0 && var != 1) throw std::domain_error("variable index must be 0 or 1");
    PlanarPoly out;
    for (const auto& [m, c] : terms_) {
      if (var == 0 && m.a > 0) out.add({m.a - 1, m.b}, c * S(m.a));
      if (var == 1 && m.b > 0) out.add({m.a, m.b - 1}, c * S(m.b));
    }
    return out;
  }

  PlanarPoly truncate_degree(int maxdeg) const {
    PlanarPoly out;
    for (const auto& [m, c] : terms_) {
      if (m.degree() <= maxdeg) out.set(m, c);
    }
    return out;
  }

  // Substitutes s1 -> q11 s1 + q12 s2, s2 -> q21 s1 + q22 s2.
  PlanarPoly compose_linear(const S& q11, const S& q12, const S& q21, const S& q22) const {
    PlanarPoly l1;
    l1.add({1, 0}, q11);
    l1.add({0, 1}, q12);
    PlanarPoly l2;
    l2.add({1, 0}, q21);
    l2.add({0, 1}, q22);
    PlanarPoly out;
    for (const auto& [m, c] : terms_) {
      PlanarPoly term = PlanarPoly::constant(c);
      for (int i = 0; i < m.a; ++i) term = multiply(term, l1);
      for (int i = 0; i < m.b; ++i) term = multiply(term, l2);
      out += term;
    }
    return out;
  }

  double evaluate(double s1, double s2) const {
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = scalar_to_double(c);
      for (int i = 0; i < m.a; ++i) t *= s1;
      for (int i = 0; i < m.b; ++i) t *= s2;
      acc += t;
    }
    return acc;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& [m, c] : terms_) {
      best = std::max(best, std::fabs(scalar_to_double(c)));
    }
    return best;
  }

 private:
  std::map<CenterMonomial, S> terms_;
};

// A trig-valued polynomial in (s1, s2): sum over monomials m of m(s1,s2) * value_m(x).
template <class S>
class StateExpansion {
 public:
  explicit StateExpansion(int trunc = TrigPoly<S>::default_trunc) : trunc_(trunc) {
    if (trunc < 1) throw std::domain_error("truncation must be >= 1");
  }

  // u1 = s1 sin 2x + s2 cos 2x, the tautological center chart.
  static StateExpansion center_coordinates(int trunc = TrigPoly<S>::default_trunc) {
    StateExpansion u(trunc);
    u.set({1, 0}, TrigPoly<S>::sine(1, trunc));
    u.set({0, 1}, TrigPoly<S>::cosine(1, trunc));
    return u;
  }

  int trunc() const { return trunc_; }
  const std::map<CenterMonomial, TrigPoly<S>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int max_degree() const {
    int deg = -1;
    for (const auto& [m, v] : terms_) deg = std::max(deg, m.degree());
    return deg;
  }

  TrigPoly<S> value(CenterMonomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? TrigPoly<S>(trunc_) : it->second;
  }

  void set(CenterMonomial m, TrigPoly<S> v) {
    if (m.a < 0 || m.b < 0) throw std::domain_error("negative monomial power");
    if (v.is_zero()) {
      terms_.erase(m);
    } else {
      terms_[m] = v.with_trunc(trunc_);
    }
  }

  void add(CenterMonomial m, const TrigPoly<S>& v) {
    if (v.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      set(m, v);
      return;
    }
    it->second += v.with_trunc(trunc_);
    if (it->second.is_zero()) terms_.erase(it);
  }

  StateExpansion& operator+=(const StateExpansion& o) {
    for (const auto& [m, v] : o.terms_) add(m, v);
    return *this;
  }
  StateExpansion& operator-=(const StateExpansion& o) {
    for (const auto& [m, v] : o.terms_) add(m, -v);
    return *this;
  }
  StateExpansion& operator*=(const S& v) {
    if (v == S(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, p] : terms_) p *= v;
    return *this;
  }
  friend StateExpansion operator+(StateExpansion a, const StateExpansion& b) { return a += b; }
  friend StateExpansion operator-(StateExpansion a, const StateExpansion& b) { return a -= b; }
  friend StateExpansion operator*(StateExpansion a, const S& v) { return a *= v; }
  friend StateExpansion operator*(const S& v, StateExpansion a) { return a *= v; }
  friend bool operator==(const StateExpansion& a, const StateExpansion& b) {
    return a.terms_ == b.terms_;
  }

  // Coefficient of one trig mode as a polynomial in (s1, s2).
  PlanarPoly<S> component(Mode mode) const {
    PlanarPoly<S> out;
    for (const auto& [m, v] : terms_) out.add(m, v.coeff(mode));
    return out;
  }

  StateExpansion truncate_degree(int maxdeg) const {
    StateExpansion out(trunc_);
    for (const auto& [m, v] : terms_) {
      if (m.degree() <= maxdeg) out.set(m, v);
    }
    return out;
  }

  // Product of expansions, discarding monomials above degree_cap. The cap is
  // applied before the trig product, so modes that only arise in discarded
  // degrees never hit the truncation guard.
  friend StateExpansion multiply(const StateExpansion& x, const StateExpansion& y,
                                 int degree_cap = std::numeric_limits<int>::max()) {
    StateExpansion out(std::max(x.trunc_, y.trunc_));
    for (const auto& [mx, vx] : x.terms_) {
      for (const auto& [my, vy] : y.terms_) {
        if (mx.degree() + my.degree() > degree_cap) continue;
        out.add({mx.a + my.a, mx.b + my.b}, shbif::multiply(vx, vy));
      }
    }
    return out;
  }

  friend StateExpansion cube(const StateExpansion& x,
                             int degree_cap = std::numeric_limits<int>::max()) {
    return multiply(multiply(x, x, degree_cap), x, degree_cap);
  }

  // w(s1,s2) * Psi, with the degree cap applied before any trig work.
  friend StateExpansion scale_monomials(const PlanarPoly<S>& w, const StateExpansion& x,
                                        int degree_cap = std::numeric_limits<int>::max()) {
    StateExpansion out(x.trunc_);
    for (const auto& [mw, cw] : w.terms()) {
      for (const auto& [mx, vx] : x.terms_) {
        if (mw.degree() + mx.degree() > degree_cap) continue;
        out.add({mw.a + mx.a, mw.b + mx.b}, vx * cw);
      }
    }
    return out;
  }

  // Partial derivative in the center coordinates: var 0 is s1, var 1 is s2.
  StateExpansion derivative(int var) const {
    if (var != 0 && var != 1) throw std::domain_error("variable index must be 0 or 1");
    StateExpansion out(trunc_);
    for (const auto& [m, v] : terms_) {
      if (var == 0 && m.a > 0) out.add({m.a - 1, m.b}, v * S(m.a));
      if (var == 1 && m.b > 0) out.add({m.a, m.b - 1}, v * S(m.b));
    }
    return out;
  }

  // Termwise projections and the linear operator.
  StateExpansion project_center() const { return map_values(&shbif::project_center<S>); }
  StateExpansion project_stable() const { return map_values(&shbif::project_stable<S>); }
  StateExpansion project_dotted() const { return map_values(&shbif::project_dotted<S>); }

  StateExpansion apply_L(const S& lambda) const {
    StateExpansion out(trunc_);
    for (const auto& [m, v] : terms_) out.add(m, shbif::apply_L(lambda, v));
    return out;
  }

 private:
  template <class F>
  StateExpansion map_values(F f) const {
    StateExpansion out(trunc_);
    for (const auto& [m, v] : terms_) out.add(m, f(v));
    return out;
  }

  int trunc_;
  std::map<CenterMonomial, TrigPoly<S>> terms_;
};

}  // namespace shbif
