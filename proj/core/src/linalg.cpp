#include "flagcurv/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "flagcurv/error.hpp"

namespace flagcurv::linalg {

namespace {

double threshold(const Vector& singular, double rel_tol) {
  const double top = singular.size() > 0 ? singular(0) : 0.0;
  return rel_tol * std::max(top, 1.0);
}

}  // namespace

Matrix null_space(const Matrix& a, double rel_tol) {
  const auto n = a.cols();
  if (a.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cut = threshold(s, rel_tol);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

int rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  const double cut = threshold(s, rel_tol);
  int r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Matrix gram_schmidt(const Matrix& vectors, const Matrix& gram, double rel_tol) {
  Matrix out(vectors.rows(), vectors.cols());
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Vector v = vectors.col(c);
    const double scale = std::sqrt(std::abs(form(gram, v, v)));
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index p = 0; p < c; ++p) v -= form(gram, out.col(p), v) * out.col(p);
    }
    const double norm = std::sqrt(std::max(form(gram, v, v), 0.0));
    if (!(norm > rel_tol * scale) || scale == 0.0) {
      throw_degenerate("gram_schmidt: vector " + std::to_string(c) +
                       " is dependent on its predecessors");
    }
    out.col(c) = v / norm;
  }
  return out;
}

double min_eigenvalue(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace flagcurv::linalg
