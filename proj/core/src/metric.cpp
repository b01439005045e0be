#include "flagcurv/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flagcurv/error.hpp"

namespace flagcurv {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << " must be a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw_input(os.str());
  }
}

void require_spd(const Matrix& m, const char* what, double threshold) {
  if (linalg::max_abs(m - m.transpose()) > 1e-12 * std::max(1.0, linalg::max_abs(m))) {
    throw_input(std::string(what) + " is not symmetric");
  }
  const double lo = linalg::min_eigenvalue(m);
  if (!(lo > threshold)) {
    std::ostringstream os;
    os << what << " is not positive definite (min eigenvalue " << lo << ")";
    throw_input(os.str());
  }
}

}  // namespace

MetricStructure::MetricStructure(Matrix g0, Matrix phi, const Tolerances& tol)
    : g0_(std::move(g0)), phi_(std::move(phi)) {
  require_square(g0_, "g0");
  require_square(phi_, "phi");
  if (phi_.rows() != g0_.rows()) throw_input("phi and g0 dimensions differ");
  require_spd(g0_, "g0", tol.positive_definite);
  const Matrix g0phi = g0_ * phi_;
  const double skew = linalg::max_abs(g0phi - g0phi.transpose());
  if (skew > 1e-12 * std::max(1.0, linalg::max_abs(g0phi))) {
    std::ostringstream os;
    os << "phi is not self-adjoint w.r.t. g0 (defect " << skew << ")";
    throw_input(os.str());
  }
  inner_ = 0.5 * (g0phi + g0phi.transpose());
  require_spd(inner_, "inner product <phi .,.>_0", tol.positive_definite);
  phi_inv_ = phi_.inverse();
}

MetricStructure MetricStructure::from_phi(const Matrix& g0, const Matrix& phi, const Tolerances& tol) {
  return MetricStructure(g0, phi, tol);
}

MetricStructure MetricStructure::from_inner(const Matrix& g0, const Matrix& inner,
                                            const Tolerances& tol) {
  require_square(g0, "g0");
  require_square(inner, "metric");
  if (inner.rows() != g0.rows()) throw_input("metric and g0 dimensions differ");
  require_spd(inner, "metric", tol.positive_definite);
  require_spd(g0, "g0", tol.positive_definite);
  return MetricStructure(g0, g0.ldlt().solve(inner), tol);
}

MetricStructure MetricStructure::identity(int dim) {
  return MetricStructure(Matrix::Identity(dim, dim), Matrix::Identity(dim, dim), kDefaultTolerances);
}

double MetricStructure::inner0(const Vector& a, const Vector& b) const {
  if (a.size() != dim() || b.size() != dim()) throw_input("inner0: dimension mismatch");
  return linalg::form(g0_, a, b);
}

double MetricStructure::inner(const Vector& a, const Vector& b) const {
  if (a.size() != dim() || b.size() != dim()) throw_input("inner: dimension mismatch");
  return linalg::form(inner_, a, b);
}

double MetricStructure::norm(const Vector& a) const { return std::sqrt(inner(a, a)); }

double MetricStructure::phi_identity_defect() const {
  return linalg::max_abs(phi_ - Matrix::Identity(dim(), dim()));
}

Matrix MetricStructure::gram_schmidt(const Matrix& vectors, InnerForm f) const {
  if (vectors.rows() != dim()) throw_input("gram_schmidt: dimension mismatch");
  return linalg::gram_schmidt(vectors, gram(f));
}

double bi_invariance_defect(const LieAlgebra& alg, const Matrix& g0) {
  const int n = alg.dim();
  double defect = 0.0;
  for (int x = 0; x < n; ++x) {
    const Matrix ad = alg.ad_matrix(alg.basis(x));
    // <ad y, z>_0 + <y, ad z>_0 = (ad^T g0 + g0 ad)_{yz}
    defect = std::max(defect, linalg::max_abs(ad.transpose() * g0 + g0 * ad));
  }
  return defect;
}

double ad_invariance_defect_h(const LieAlgebra& alg, const MetricStructure& metric,
                              const ReductiveSplit& split) {
  const Matrix& h = split.h_basis();
  const Matrix& g = metric.inner_matrix();
  double defect = 0.0;
  for (Eigen::Index a = 0; a < h.cols(); ++a) {
    const Matrix ad = alg.ad_matrix(h.col(a));
    defect = std::max(defect, linalg::max_abs(ad.transpose() * g + g * ad));
  }
  return defect;
}

double phi_split_defect(const MetricStructure& metric, const ReductiveSplit& split) {
  const Matrix& h = split.h_basis();
  const Matrix& m = split.m_basis();
  double defect = 0.0;
  if (h.cols() > 0) defect = linalg::max_abs(metric.phi() * h - h);
  if (m.cols() > 0 && h.cols() > 0)
    defect = std::max(defect, linalg::max_abs(split.projector_h() * metric.phi() * m));
  return defect;
}

}  // namespace flagcurv
