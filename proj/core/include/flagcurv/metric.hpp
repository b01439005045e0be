#pragma once

#include <vector>

#include "flagcurv/algebra.hpp"
#include "flagcurv/linalg.hpp"
#include "flagcurv/tolerances.hpp"

namespace flagcurv {

enum class InnerForm { Reference, Metric };

/// Reference inner product <.,.>_0 (matrix g0), the endomorphism phi, and
/// the induced inner product <a,b> = <phi a, b>_0 with Gram matrix g0 * phi.
class MetricStructure {
 public:
  static MetricStructure from_phi(const Matrix& g0, const Matrix& phi,
                                  const Tolerances& tol = kDefaultTolerances);
  /// phi = g0^{-1} * inner.
  static MetricStructure from_inner(const Matrix& g0, const Matrix& inner,
                                    const Tolerances& tol = kDefaultTolerances);
  static MetricStructure identity(int dim);

  int dim() const { return static_cast<int>(g0_.rows()); }
  const Matrix& g0() const { return g0_; }
  const Matrix& phi() const { return phi_; }
  const Matrix& phi_inverse() const { return phi_inv_; }
  const Matrix& inner_matrix() const { return inner_; }
  const Matrix& gram(InnerForm f) const { return f == InnerForm::Reference ? g0_ : inner_; }

  double inner0(const Vector& a, const Vector& b) const;
  double inner(const Vector& a, const Vector& b) const;
  double norm(const Vector& a) const;

  Vector apply_phi(const Vector& v) const { return phi_ * v; }
  Vector apply_phi_inverse(const Vector& v) const { return phi_inv_ * v; }

  /// max |phi - I|.
  double phi_identity_defect() const;

  /// Columns orthonormal w.r.t. the selected form, spanning the same flag of subspaces.
  Matrix gram_schmidt(const Matrix& vectors, InnerForm f) const;

 private:
  MetricStructure(Matrix g0, Matrix phi, const Tolerances& tol);

  Matrix g0_;
  Matrix phi_;
  Matrix phi_inv_;
  Matrix inner_;
};

/// max |<[x,y],z>_0 + <y,[x,z]>_0| over basis triples; zero iff g0 is bi-invariant (infinitesimally).
double bi_invariance_defect(const LieAlgebra& alg, const Matrix& g0);

/// max |<[w,x],y> + <x,[w,y]>| for w in h, x,y basis vectors.
double ad_invariance_defect_h(const LieAlgebra& alg, const MetricStructure& metric,
                              const ReductiveSplit& split);

/// Deviation of phi from the identity on h plus the h-component of phi(m).
double phi_split_defect(const MetricStructure& metric, const ReductiveSplit& split);

}  // namespace flagcurv
