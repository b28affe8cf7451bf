#include "shbif/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>

namespace shbif {

double op_norm2(const DenseMatrix<double>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::MatrixXd em(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) em(i, j) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(em);
  return svd.singularValues()(0);
}

SpectralDecomposition SpectralDecomposition::make(const Rational& lambda, int trunc,
                                                  const Rational& beta) {
  if (trunc < 1) throw std::domain_error("truncation must be >= 1");
  if (beta <= 0) throw std::domain_error("gap threshold must be positive");

  SpectralDecomposition d;
  d.lambda = lambda;
  d.trunc = trunc;
  d.beta = beta;
  d.eigs.reserve(trunc);
  for (int k = 1; k <= trunc; ++k) {
    const Rational e = eigenvalue(k, lambda);
    d.eigs.push_back(e);
    if (abs_val(e) <= beta) {
      d.center.push_back(k);
    } else if (e >= 2 * beta) {
      d.stable.push_back(k);
    } else {
      std::string text = num_str(e);
      if (den_str(e) != "1") text += "/" + den_str(e);
      throw std::domain_error("spectral gap violated: eigenvalue " + text + " at k=" +
                              std::to_string(k) +
                              (e < 0 ? " lies below the center window"
                                     : " falls between the center window and the stable "
                                       "threshold"));
    }
  }
  return d;
}

bool SpectralDecomposition::is_center(int k) const {
  return std::find(center.begin(), center.end(), k) != center.end();
}
bool SpectralDecomposition::is_stable(int k) const {
  return std::find(stable.begin(), stable.end(), k) != stable.end();
}

}  // namespace shbif
