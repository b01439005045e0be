#include "flagcurv/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "flagcurv/error.hpp"

namespace flagcurv {

StructureConstants::StructureConstants(int n) : dim(n) {
  if (n <= 0) throw_input("Lie algebra dimension must be positive, got " + std::to_string(n));
  c.assign(static_cast<size_t>(n) * n * n, 0.0);
}

AlgebraValidation validate(const StructureConstants& t, double tol) {
  AlgebraValidation rep;
  rep.tolerance = tol;
  const int n = t.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        rep.antisymmetry_defect =
            std::max(rep.antisymmetry_defect, std::abs(t.at(i, j, k) + t.at(j, i, k)));

  // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]], component m
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            s += t.at(j, k, l) * t.at(i, l, m);
            s += t.at(k, i, l) * t.at(j, l, m);
            s += t.at(i, j, l) * t.at(k, l, m);
          }
          rep.jacobi_defect = std::max(rep.jacobi_defect, std::abs(s));
        }
  return rep;
}

LieAlgebra LieAlgebra::from_brackets(int dim, const std::vector<BracketEntry>& entries,
                                     std::vector<std::string> basis_names) {
  StructureConstants t(dim);
  std::vector<bool> seen(static_cast<size_t>(dim) * dim, false);
  for (const auto& e : entries) {
    if (e.i < 0 || e.j >= dim || e.i >= e.j) {
      throw_input("bracket entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                  ") must satisfy 0 <= i < j < dim");
    }
    const size_t slot = static_cast<size_t>(e.i) * dim + e.j;
    if (seen[slot]) {
      throw_input("bracket entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                  ") listed twice");
    }
    seen[slot] = true;
    for (const auto& [k, coef] : e.terms) {
      if (k < 0 || k >= dim) throw_input("bracket term index " + std::to_string(k) + " out of range");
      t.at(e.i, e.j, k) += coef;
    }
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k) t.at(j, i, k) = -t.at(i, j, k);
  return LieAlgebra(std::move(t), std::move(basis_names));
}

LieAlgebra::LieAlgebra(StructureConstants table, std::vector<std::string> basis_names)
    : table_(std::move(table)), names_(std::move(basis_names)) {
  const int n = table_.dim;
  if (!names_.empty() && static_cast<int>(names_.size()) != n) {
    throw_input("basis name list has " + std::to_string(names_.size()) +
                " entries, expected " + std::to_string(n));
  }
  if (names_.empty()) {
    for (int i = 0; i < n; ++i) names_.push_back("e" + std::to_string(i + 1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table_.at(i, j, k) != -table_.at(j, i, k)) {
          throw_input("structure constants are not antisymmetric at (" + std::to_string(i) + ", " +
                      std::to_string(j) + ", " + std::to_string(k) + ")");
        }
}

void LieAlgebra::check_dim(const Vector& v, const char* what) const {
  if (v.size() != dim()) {
    throw_input(std::string(what) + ": vector has length " + std::to_string(v.size()) +
                ", expected " + std::to_string(dim()));
  }
}

Vector LieAlgebra::bracket(const Vector& a, const Vector& b) const {
  check_dim(a, "bracket");
  check_dim(b, "bracket");
  const int n = dim();
  Vector out = Vector::Zero(n);
  // Pairing (a_i b_j - a_j b_i) keeps bracket(a,b) == -bracket(b,a) bit-for-bit.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double w = a(i) * b(j) - a(j) * b(i);
      if (w == 0.0) continue;
      for (int k = 0; k < n; ++k) out(k) += w * table_.at(i, j, k);
    }
  return out;
}

Matrix LieAlgebra::ad_matrix(const Vector& x) const {
  check_dim(x, "ad_matrix");
  Matrix m(dim(), dim());
  for (int j = 0; j < dim(); ++j) m.col(j) = bracket(x, basis(j));
  return m;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(table_.c.begin(), table_.c.end(), [](double v) { return v == 0.0; });
}

AlgebraValidation validate(const LieAlgebra& alg, double tol) { return validate(alg.table(), tol); }

Matrix derived_span(const LieAlgebra& alg, double tol) {
  const int n = alg.dim();
  const int pairs = n * (n - 1) / 2;
  if (pairs == 0) return Matrix(n, 0);
  Matrix images(n, pairs);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) images.col(col++) = alg.bracket(alg.basis(i), alg.basis(j));
  Eigen::JacobiSVD<Matrix> svd(images, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  const double cut = tol * std::max(s(0), 1.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

ReductiveSplit::ReductiveSplit(const Matrix& h_vectors, const Matrix& g0) {
  const auto n = g0.rows();
  if (h_vectors.cols() > 0 && h_vectors.rows() != n) {
    throw_input("subalgebra vectors have length " + std::to_string(h_vectors.rows()) +
                ", expected " + std::to_string(n));
  }
  h_basis_ = h_vectors.cols() > 0 ? linalg::gram_schmidt(h_vectors, g0) : Matrix(n, 0);
  projector_h_ = h_basis_ * h_basis_.transpose() * g0;
  projector_m_ = Matrix::Identity(n, n) - projector_h_;
  if (h_basis_.cols() == 0) {
    m_basis_ = linalg::gram_schmidt(Matrix::Identity(n, n), g0);
  } else {
    // m = ker(H^T G0)
    const Matrix complement = linalg::null_space(h_basis_.transpose() * g0);
    m_basis_ = linalg::gram_schmidt(complement, g0);
  }
}

ReductiveSplit ReductiveSplit::trivial(const Matrix& g0) { return ReductiveSplit(Matrix(g0.rows(), 0), g0); }

Vector ReductiveSplit::project_m(const Vector& v) const {
  if (v.size() != dim()) throw_input("project_m: dimension mismatch");
  return projector_m_ * v;
}

Vector ReductiveSplit::project_h(const Vector& v) const {
  if (v.size() != dim()) throw_input("project_h: dimension mismatch");
  return projector_h_ * v;
}

ReductiveReport check_reductive(const ReductiveSplit& split, const LieAlgebra& alg, const Matrix& g0,
                                double tol) {
  ReductiveReport rep;
  rep.tolerance = tol;
  const Matrix& h = split.h_basis();
  const Matrix& m = split.m_basis();
  for (Eigen::Index a = 0; a < h.cols(); ++a) {
    for (Eigen::Index b = 0; b < h.cols(); ++b)
      rep.subalgebra_defect = std::max(
          rep.subalgebra_defect, split.project_m(alg.bracket(h.col(a), h.col(b))).cwiseAbs().maxCoeff());
    for (Eigen::Index b = 0; b < m.cols(); ++b) {
      rep.orthogonality_defect =
          std::max(rep.orthogonality_defect, std::abs(linalg::form(g0, h.col(a), m.col(b))));
      rep.reductivity_defect = std::max(
          rep.reductivity_defect, split.project_h(alg.bracket(h.col(a), m.col(b))).cwiseAbs().maxCoeff());
    }
  }
  const Matrix& p = split.projector_m();
  rep.idempotency_defect = linalg::max_abs(p * p - p);
  const Matrix gp = g0 * p;
  rep.self_adjoint_defect = linalg::max_abs(gp - gp.transpose());
  return rep;
}

}  // namespace flagcurv
