#pragma once

// Conversions between library types and the plain containers of reference.hpp,
// plus seeded random data for property tests.

#include <random>

#include "flagcurv/algebra.hpp"
#include "reference.hpp"

namespace testing_support {

inline ref::Table table_of(const flagcurv::LieAlgebra& alg) {
  const int n = alg.dim();
  ref::Table c = ref::zero_table(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c[i][j][k] = alg.structure(i, j, k);
  return c;
}

inline ref::Mat mat_of(const flagcurv::Matrix& m) {
  ref::Mat out(static_cast<size_t>(m.rows()), ref::Vec(static_cast<size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline ref::Vec vec_of(const flagcurv::Vector& v) { return ref::Vec(v.data(), v.data() + v.size()); }

inline flagcurv::Vector to_vector(const ref::Vec& v) {
  return Eigen::Map<const flagcurv::Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline flagcurv::Vector random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  flagcurv::Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

// Symmetric positive definite with eigenvalues in [1, 100]: condition number at most 100.
inline flagcurv::Matrix random_spd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 2.0);
  flagcurv::Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = nd(rng);
  const Eigen::HouseholderQR<flagcurv::Matrix> qr(a);
  const flagcurv::Matrix q = qr.householderQ();
  flagcurv::Vector ev(n);
  for (int i = 0; i < n; ++i) ev(i) = std::pow(10.0, ud(rng));
  ev(0) = 1.0;
  flagcurv::Matrix s = q * ev.asDiagonal() * q.transpose();
  return 0.5 * (s + s.transpose());
}

}  // namespace testing_support
