#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flagcurv/linalg.hpp"
#include "flagcurv/tolerances.hpp"

namespace flagcurv {

/// Raw structure-constant table c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
/// No invariants are enforced; this is what `validate` inspects.
struct StructureConstants {
  int dim = 0;
  std::vector<double> c;  // size dim^3, index (i*dim + j)*dim + k

  explicit StructureConstants(int n);
  double& at(int i, int j, int k) { return c[(static_cast<size_t>(i) * dim + j) * dim + k]; }
  double at(int i, int j, int k) const { return c[(static_cast<size_t>(i) * dim + j) * dim + k]; }
};

/// One user-supplied bracket [e_i, e_j] = sum coefficient * e_k, i < j.
struct BracketEntry {
  int i = 0;
  int j = 0;
  std::vector<std::pair<int, double>> terms;
};

struct AlgebraValidation {
  double antisymmetry_defect = 0.0;
  double jacobi_defect = 0.0;
  double tolerance = 0.0;
  bool passes() const { return antisymmetry_defect <= tolerance && jacobi_defect <= tolerance; }
};

AlgebraValidation validate(const StructureConstants& table, double tol = kDefaultTolerances.jacobi);

class LieAlgebra {
 public:
  /// Builds the full table from entries with i < j, writing c[j][i][k] = -c[i][j][k].
  static LieAlgebra from_brackets(int dim, const std::vector<BracketEntry>& entries,
                                  std::vector<std::string> basis_names = {});

  /// Requires an exactly antisymmetric table; throws otherwise. Jacobi is not checked here.
  explicit LieAlgebra(StructureConstants table, std::vector<std::string> basis_names = {});

  int dim() const { return table_.dim; }
  const StructureConstants& table() const { return table_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  double structure(int i, int j, int k) const { return table_.at(i, j, k); }

  /// Bilinear extension of the structure constants. Exactly antisymmetric in floating point.
  Vector bracket(const Vector& a, const Vector& b) const;
  Vector basis(int i) const { return Vector::Unit(dim(), i); }

  /// Matrix of v -> [x, v].
  Matrix ad_matrix(const Vector& x) const;

  /// True when every structure constant is zero.
  bool is_abelian() const;

 private:
  void check_dim(const Vector& v, const char* what) const;

  StructureConstants table_;
  std::vector<std::string> names_;
};

AlgebraValidation validate(const LieAlgebra& alg, double tol = kDefaultTolerances.jacobi);

/// Orthonormal (Euclidean, in basis coordinates) columns spanning [g, g].
/// Singular values below tol * max(sigma_max, 1) count as zero.
Matrix derived_span(const LieAlgebra& alg, double tol = kDefaultTolerances.rank);

/// Subalgebra h and its g0-orthogonal complement m.
class ReductiveSplit {
 public:
  /// `h_vectors` may be empty (trivial split, m = g). Columns are orthonormalized w.r.t. g0.
  ReductiveSplit(const Matrix& h_vectors, const Matrix& g0);
  static ReductiveSplit trivial(const Matrix& g0);

  int dim() const { return static_cast<int>(projector_m_.rows()); }
  const Matrix& h_basis() const { return h_basis_; }  // g0-orthonormal columns
  const Matrix& m_basis() const { return m_basis_; }  // g0-orthonormal columns
  const Matrix& projector_m() const { return projector_m_; }
  const Matrix& projector_h() const { return projector_h_; }
  bool is_trivial() const { return h_basis_.cols() == 0; }

  Vector project_m(const Vector& v) const;
  Vector project_h(const Vector& v) const;

 private:
  Matrix h_basis_;
  Matrix m_basis_;
  Matrix projector_m_;
  Matrix projector_h_;
};

struct ReductiveReport {
  double subalgebra_defect = 0.0;     // max |[h_a, h_b]_m|
  double orthogonality_defect = 0.0;  // max |<h_a, m_b>_0|
  double reductivity_defect = 0.0;    // max |[h_a, m_b]_h|
  double idempotency_defect = 0.0;    // |P_m P_m - P_m|
  double self_adjoint_defect = 0.0;   // |G0 P_m - (G0 P_m)^T|
  double tolerance = 0.0;
  bool passes() const {
    return subalgebra_defect <= tolerance && orthogonality_defect <= tolerance &&
           reductivity_defect <= tolerance && idempotency_defect <= tolerance &&
           self_adjoint_defect <= tolerance;
  }
};

ReductiveReport check_reductive(const ReductiveSplit& split, const LieAlgebra& alg, const Matrix& g0,
                                double tol = kDefaultTolerances.jacobi);

}  // namespace flagcurv
