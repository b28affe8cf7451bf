#pragma once

#include <string>

#include "exp_oracle.hpp"
#include "shbif/centerpoly.hpp"
#include "shbif/rational.hpp"

namespace testutil {

using shbif::Rational;

// "3/4864", "-9", or decimal text.
inline Rational rat(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return shbif::rational_from_decimal(s);
  return shbif::rational_from_parts(s.substr(0, slash), s.substr(slash + 1));
}

inline shbif::PlanarPoly<Rational> to_planar(const oracle::PlanarQ& q) {
  shbif::PlanarPoly<Rational> p;
  for (const auto& [m, c] : q) p.add({m.first, m.second}, c);
  return p;
}

}  // namespace testutil
