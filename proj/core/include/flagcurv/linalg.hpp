#pragma once

#include <Eigen/Dense>

#include "flagcurv/tolerances.hpp"

namespace flagcurv {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace linalg {

/// Columns spanning the null space of `a`, Euclidean-orthonormal.
/// Singular values below rel_tol * max(sigma_max, 1) count as zero.
Matrix null_space(const Matrix& a, double rel_tol = kDefaultTolerances.rank);
int rank(const Matrix& a, double rel_tol = kDefaultTolerances.rank);
double max_abs(const Matrix& a);

inline double form(const Matrix& gram, const Vector& a, const Vector& b) { return a.dot(gram * b); }

/// Modified Gram-Schmidt with one re-orthogonalization pass, orthonormal w.r.t. `gram`.
/// Throws a degeneracy error when a residual norm drops below rel_tol times the input norm.
Matrix gram_schmidt(const Matrix& vectors, const Matrix& gram,
                    double rel_tol = kDefaultTolerances.gram_schmidt);

/// Smallest eigenvalue of the symmetric part of `a`.
double min_eigenvalue(const Matrix& a);

}  // namespace linalg

}  // namespace flagcurv
