#pragma once

#include <complex>
#include <initializer_list>

#include "speclat/numeric.hpp"

namespace testing {

using speclat::Index;
using speclat::Matrixd;
using speclat::Vectord;

inline Matrixd real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Matrixd m(rows.size(), rows.begin()->size());
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline Matrixd diag(std::initializer_list<double> d) {
  Matrixd m = Matrixd::Zero(d.size(), d.size());
  Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline Vectord vec(std::initializer_list<std::complex<double>> v) {
  Vectord out(v.size());
  Index i = 0;
  for (auto c : v) out(i++) = c;
  return out;
}

inline Matrixd proj_onto(const Vectord& v) {
  const Vectord u = v.normalized();
  return u * u.adjoint();
}

inline double dist(const Matrixd& a, const Matrixd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testing
