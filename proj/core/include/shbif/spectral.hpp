// Spectral splitting of L_lambda on the truncated wave basis, and the
// transition isomorphism between nearby complementary projection pairs.
#pragma once

#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "shbif/matrix.hpp"
#include "shbif/trigpoly.hpp"

namespace shbif {

// A projection pair fails the hypotheses needed for the transition map.
struct ProjectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spectral 2-norm of a dense double matrix (largest singular value).
double op_norm2(const DenseMatrix<double>& m);

// Eigenvalue buckets for L_lambda restricted to wavenumbers 1..trunc. Every
// eigenvalue must sit inside the center window [-beta, beta] or beyond the
// stable threshold 2*beta; anything between, or any unstable eigenvalue below
// -beta, violates the spectral gap and construction fails.
struct SpectralDecomposition {
  Rational lambda;
  int trunc = 0;
  Rational beta;
  std::vector<Rational> eigs;  // eigs[k-1] = (1 - 4k^2)^2 - lambda
  std::vector<int> center;     // wavenumbers with |eig| <= beta
  std::vector<int> stable;     // wavenumbers with eig >= 2*beta

  static SpectralDecomposition make(const Rational& lambda, int trunc,
                                    const Rational& beta = Rational(100));

  bool is_center(int k) const;
  bool is_stable(int k) const;
};

// Diagonal projection matrices on the 2*trunc basis [sin 2x..sin 2Kx, cos 2x..cos 2Kx].
template <class S>
DenseMatrix<S> projection_matrix(const SpectralDecomposition& d, const std::vector<int>& ks) {
  DenseMatrix<S> p(2 * d.trunc, 2 * d.trunc);
  for (int k : ks) {
    p(k - 1, k - 1) = S(1);
    p(d.trunc + k - 1, d.trunc + k - 1) = S(1);
  }
  return p;
}
template <class S>
DenseMatrix<S> center_projection(const SpectralDecomposition& d) {
  return projection_matrix<S>(d, d.center);
}
template <class S>
DenseMatrix<S> stable_projection(const SpectralDecomposition& d) {
  return projection_matrix<S>(d, d.stable);
}

namespace detail {

template <class S>
void require_projection(const DenseMatrix<S>& p, const std::string& name) {
  if (p.rows() != p.cols()) {
    throw ProjectionError(name + " is not square");
  }
  const DenseMatrix<S> resid = p * p - p;
  if constexpr (std::is_same_v<S, Rational>) {
    if (!(resid == DenseMatrix<S>(p.rows(), p.cols()))) {
      throw ProjectionError(name + " is not idempotent");
    }
  } else {
    if (resid.max_abs() > 1e-10) {
      throw ProjectionError(name + " is not idempotent (|P^2-P| = " +
                            std::to_string(resid.max_abs()) + ")");
    }
  }
}

template <class S>
void require_complementary(const DenseMatrix<S>& p1, const DenseMatrix<S>& p2) {
  const DenseMatrix<S> resid = p1 + p2 - DenseMatrix<S>::identity(p1.rows());
  if constexpr (std::is_same_v<S, Rational>) {
    if (!(resid == DenseMatrix<S>(p1.rows(), p1.cols()))) {
      throw ProjectionError("projection pair does not sum to the identity");
    }
  } else {
    if (resid.max_abs() > 1e-10) {
      throw ProjectionError("projection pair does not sum to the identity");
    }
  }
}

}  // namespace detail

// Transition isomorphism T = P1_ref P1 + P2_ref P2 between two complementary
// projection pairs. Requires each pair to be idempotent and complementary, and
// the pairs to be strictly closer than 1 in the spectral 2-norm; T is then
// invertible and carries ran(P1) to ran(P1_ref) and ran(P2) to ran(P2_ref).
template <class S>
DenseMatrix<S> transition_isomorphism(
    const std::pair<DenseMatrix<S>, DenseMatrix<S>>& ref,
    const std::pair<DenseMatrix<S>, DenseMatrix<S>>& cur) {
  detail::require_projection(ref.first, "reference projection 1");
  detail::require_projection(ref.second, "reference projection 2");
  detail::require_projection(cur.first, "projection 1");
  detail::require_projection(cur.second, "projection 2");
  if (ref.first.rows() != cur.first.rows()) {
    throw ProjectionError("projection pairs act on different spaces");
  }
  detail::require_complementary(ref.first, ref.second);
  detail::require_complementary(cur.first, cur.second);

  const double gap1 = op_norm2((cur.first - ref.first).to_float());
  const double gap2 = op_norm2((cur.second - ref.second).to_float());
  const double gap = std::max(gap1, gap2);
  if (!(gap < 1.0)) {
    throw ProjectionError("projection pairs are too far apart (|P - P_ref| = " +
                          std::to_string(gap) + " >= 1)");
  }

  DenseMatrix<S> t = ref.first * cur.first + ref.second * cur.second;
  if (!try_inverse(t)) {
    throw ProjectionError("transition map is singular");
  }
  return t;
}

}  // namespace shbif
