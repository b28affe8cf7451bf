// Sparse trigonometric polynomials on the pi-periodic interval (0, pi).
//
// The working space is the mean-zero span of {sin 2kx, cos 2kx : k >= 1} up to
// a truncation wavenumber K. A bookkeeping slot for the constant mode exists
// because products of mean-zero functions are not mean-zero; projections that
// discard a nonzero constant increment a diagnostics counter.
//
// TrigPoly is templated on the scalar: exact rationals for the reduction
// pipeline, doubles for simulation. Mixing scalars is a compile error.
#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "shbif/diagnostics.hpp"
#include "shbif/rational.hpp"

namespace shbif {

// Thrown when an exact-arithmetic product needs a wavenumber beyond the
// truncation; silent truncation would corrupt downstream coefficients.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Wave : std::uint8_t { Const = 0, Sin = 1, Cos = 2 };

// One basis slot: sin(2kx) or cos(2kx) with k >= 1, or the constant.
struct Mode {
  int k = 0;
  Wave wave = Wave::Const;
  friend constexpr auto operator<=>(const Mode&, const Mode&) = default;
};

inline Mode sin_mode(int k) {
  if (k < 1) throw std::domain_error("sin mode needs k >= 1");
  return {k, Wave::Sin};
}
inline Mode cos_mode(int k) {
  if (k < 1) throw std::domain_error("cos mode needs k >= 1");
  return {k, Wave::Cos};
}
inline constexpr Mode const_mode() { return {0, Wave::Const}; }

inline std::string wave_label(Wave w) {
  switch (w) {
    case Wave::Const: return "const";
    case Wave::Sin: return "sin";
    case Wave::Cos: return "cos";
  }
  return "?";
}

inline std::string mode_label(Mode m) {
  switch (m.wave) {
    case Wave::Const: return "const";
    case Wave::Sin: return "sin" + std::to_string(2 * m.k) + "x";
    case Wave::Cos: return "cos" + std::to_string(2 * m.k) + "x";
  }
  return "?";
}

// Eigenvalue of L_lambda = (I + Laplacian)^2 - lambda on the 2k-th pair.
template <class S>
S eigenvalue(int k, const S& lambda) {
  if (k < 1) throw std::domain_error("eigenvalue needs k >= 1");
  const S q = S(1 - 4 * k * k);
  return q * q - lambda;
}

inline double scalar_to_double(double v) { return v; }
inline double scalar_to_double(const Rational& v) { return to_double(v); }

template <class S>
class TrigPoly {
 public:
  static constexpr int default_trunc = 8;

  explicit TrigPoly(int trunc = default_trunc) : trunc_(trunc) {
    if (trunc < 1) throw std::domain_error("truncation must be >= 1");
  }

  static TrigPoly basis(Mode m, S coeff, int trunc = default_trunc) {
    TrigPoly p(trunc);
    p.set(m, std::move(coeff));
    return p;
  }
  static TrigPoly sine(int k, int trunc = default_trunc) {
    return basis(sin_mode(k), S(1), trunc);
  }
  static TrigPoly cosine(int k, int trunc = default_trunc) {
    return basis(cos_mode(k), S(1), trunc);
  }
  static TrigPoly constant(S value, int trunc = default_trunc) {
    return basis(const_mode(), std::move(value), trunc);
  }

  int trunc() const { return trunc_; }
  const std::map<Mode, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool mean_zero() const { return !terms_.contains(const_mode()); }

  S coeff(Mode m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  void set(Mode m, S value) {
    check_mode(m);
    if (value == S(0)) {
      terms_.erase(m);
    } else {
      terms_[m] = std::move(value);
    }
  }

  void add(Mode m, const S& value) {
    check_mode(m);
    if (value == S(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, value);
    if (!inserted) {
      it->second += value;
      if (it->second == S(0)) terms_.erase(it);
    }
  }

  // Capacity changes are explicit; shrinking below a live mode is an error.
  TrigPoly with_trunc(int trunc) const {
    TrigPoly out(trunc);
    for (const auto& [m, c] : terms_) out.set(m, c);
    return out;
  }

  TrigPoly& operator+=(const TrigPoly& o) {
    if (o.trunc_ > trunc_) trunc_ = o.trunc_;
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  TrigPoly& operator-=(const TrigPoly& o) {
    if (o.trunc_ > trunc_) trunc_ = o.trunc_;
    for (const auto& [m, c] : o.terms_) add(m, S(-c));
    return *this;
  }
  TrigPoly& operator*=(const S& v) {
    if (v == S(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= v;
    return *this;
  }

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, const S& v) { return a *= v; }
  friend TrigPoly operator*(const S& v, TrigPoly a) { return a *= v; }
  friend TrigPoly operator-(TrigPoly a) { return a *= S(-1); }

  // Coefficient equality; capacity is not part of the value.
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    return a.terms_ == b.terms_;
  }

  double evaluate(double x) const {
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
      const double cd = scalar_to_double(c);
      switch (m.wave) {
        case Wave::Const: acc += cd; break;
        case Wave::Sin: acc += cd * std::sin(2.0 * m.k * x); break;
        case Wave::Cos: acc += cd * std::cos(2.0 * m.k * x); break;
      }
    }
    return acc;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& [m, c] : terms_) best = std::max(best, std::fabs(scalar_to_double(c)));
    return best;
  }

  TrigPoly<double> to_float() const {
    TrigPoly<double> out(trunc_);
    for (const auto& [m, c] : terms_) out.set(m, scalar_to_double(c));
    return out;
  }

 private:
  void check_mode(Mode m) const {
    if (m.wave == Wave::Const) {
      if (m.k != 0) throw std::domain_error("constant mode must have k = 0");
      return;
    }
    if (m.k < 1) throw std::domain_error("wave mode needs k >= 1");
    if (m.k > trunc_) {
      throw TruncationError("mode " + mode_label(m) + " exceeds truncation K=" +
                            std::to_string(trunc_));
    }
  }

  int trunc_;
  std::map<Mode, S> terms_;
};

using TrigQ = TrigPoly<Rational>;
using TrigF = TrigPoly<double>;

// Exact product via the product-to-sum rules. The result keeps the larger of
// the two capacities; a product wavenumber beyond it throws TruncationError.
template <class S>
TrigPoly<S> multiply(const TrigPoly<S>& x, const TrigPoly<S>& y) {
  const int K = std::max(x.trunc(), y.trunc());
  TrigPoly<S> out(K);
  const S half = S(1) / S(2);

  const auto guard = [K](int k) {
    if (k > K) {
      throw TruncationError("product mode k=" + std::to_string(k) +
                            " exceeds truncation K=" + std::to_string(K));
    }
  };

  for (const auto& [ma, ca] : x.terms()) {
    for (const auto& [mb, cb] : y.terms()) {
      const S c = ca * cb;
      if (ma.wave == Wave::Const && mb.wave == Wave::Const) {
        out.add(const_mode(), c);
        continue;
      }
      if (ma.wave == Wave::Const) {
        out.add(mb, c);
        continue;
      }
      if (mb.wave == Wave::Const) {
        out.add(ma, c);
        continue;
      }
      const int j = ma.k;
      const int k = mb.k;
      const S ch = c * half;
      if (ma.wave == Wave::Sin && mb.wave == Wave::Sin) {
        // sin a sin b = (cos(a-b) - cos(a+b)) / 2
        if (j == k) {
          out.add(const_mode(), ch);
        } else {
          out.add(cos_mode(std::abs(j - k)), ch);
        }
        guard(j + k);
        out.add(cos_mode(j + k), S(-ch));
      } else if (ma.wave == Wave::Cos && mb.wave == Wave::Cos) {
        // cos a cos b = (cos(a-b) + cos(a+b)) / 2
        if (j == k) {
          out.add(const_mode(), ch);
        } else {
          out.add(cos_mode(std::abs(j - k)), ch);
        }
        guard(j + k);
        out.add(cos_mode(j + k), ch);
      } else {
        // sin a cos b = (sin(a+b) + sin(a-b)) / 2, with sin of the signed gap.
        const int s = ma.wave == Wave::Sin ? j : k;  // sine wavenumber
        const int t = ma.wave == Wave::Sin ? k : j;  // cosine wavenumber
        guard(s + t);
        out.add(sin_mode(s + t), ch);
        if (s > t) {
          out.add(sin_mode(s - t), ch);
        } else if (s < t) {
          out.add(sin_mode(t - s), S(-ch));
        }
        // s == t contributes sin 0 = 0.
      }
    }
  }
  return out;
}

// Projection onto the critical pair k = 1. A nonzero constant is discarded
// and counted; wave modes with k >= 2 are dropped silently (that is the point).
template <class S>
TrigPoly<S> project_center(const TrigPoly<S>& u) {
  TrigPoly<S> out(u.trunc());
  for (const auto& [m, c] : u.terms()) {
    if (m.wave == Wave::Const) {
      diag::count_const_drop();
      continue;
    }
    if (m.k == 1) out.set(m, c);
  }
  return out;
}

// Complement of project_center inside the mean-zero space.
template <class S>
TrigPoly<S> project_stable(const TrigPoly<S>& u) {
  TrigPoly<S> out(u.trunc());
  for (const auto& [m, c] : u.terms()) {
    if (m.wave == Wave::Const) {
      diag::count_const_drop();
      continue;
    }
    if (m.k >= 2) out.set(m, c);
  }
  return out;
}

// Projection onto the mean-zero space: drops (and counts) the constant.
template <class S>
TrigPoly<S> project_dotted(const TrigPoly<S>& u) {
  TrigPoly<S> out(u.trunc());
  for (const auto& [m, c] : u.terms()) {
    if (m.wave == Wave::Const) {
      diag::count_const_drop();  // stored entries are nonzero by invariant
      continue;
    }
    out.set(m, c);
  }
  return out;
}

// L_lambda u = ((I + Laplacian)^2 - lambda) u, diagonal on the wave basis.
// Defined on the mean-zero space only.
template <class S>
TrigPoly<S> apply_L(const S& lambda, const TrigPoly<S>& u) {
  if (!u.mean_zero()) {
    throw std::domain_error("operator is defined on the mean-zero space");
  }
  TrigPoly<S> out(u.trunc());
  for (const auto& [m, c] : u.terms()) {
    out.set(m, eigenvalue(m.k, lambda) * c);
  }
  return out;
}

}  // namespace shbif
