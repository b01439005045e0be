#pragma once

#include <array>
#include <string>
#include <vector>

#include "flagcurv/algebra.hpp"
#include "flagcurv/metric.hpp"
#include "flagcurv/tolerances.hpp"

namespace flagcurv {

/// Bilinear map (a, b) -> nabla_a b on invariant fields: nabla_{e_i} e_j = sum_k gamma[i][j][k] e_k.
/// For a homogeneous space the table stores Lambda(P e_i)(P e_j) with P the projection onto m.
class ConnectionTable {
 public:
  explicit ConnectionTable(int dim);

  int dim() const { return dim_; }
  double at(int i, int j, int k) const { return gamma_[index(i, j, k)]; }
  double& at(int i, int j, int k) { return gamma_[index(i, j, k)]; }
  Vector column(int i, int j) const;
  Vector apply(const Vector& a, const Vector& b) const;

 private:
  size_t index(int i, int j, int k) const {
    return (static_cast<size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_;
  std::vector<double> gamma_;
};

/// Components r[i][j][k][l] = <R(e_i,e_j)e_k, e_l> with
/// R(A,B)C = nabla_A nabla_B C - nabla_B nabla_A C - nabla_[A,B] C.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int dim);

  int dim() const { return dim_; }
  double at(int i, int j, int k, int l) const { return r_[index(i, j, k, l)]; }
  double& at(int i, int j, int k, int l) { return r_[index(i, j, k, l)]; }
  double max_abs() const;

 private:
  size_t index(int i, int j, int k, int l) const {
    return ((static_cast<size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }
  int dim_;
  std::vector<double> r_;
};

struct ConnectionDefects {
  double torsion = 0.0;
  double compatibility = 0.0;
};

struct CurvatureSymmetryDefects {
  double antisymmetry_first_pair = 0.0;
  double antisymmetry_second_pair = 0.0;
  double pair_symmetry = 0.0;
  double bianchi = 0.0;
  double max() const;
};

/// B+(x,y) = 1/2([x,phi y] + [y,phi x]).
Vector b_plus(const LieAlgebra& alg, const MetricStructure& metric, const Vector& x, const Vector& y);
/// B-(x,y) = 1/2([phi x,y] + [x,phi y]).
Vector b_minus(const LieAlgebra& alg, const MetricStructure& metric, const Vector& x, const Vector& y);

/// Levi-Civita connection of the left-invariant metric from the Koszul formula
/// 2<nabla_U V, W> = <[U,V],W> - <[V,W],U> + <[W,U],V>.
ConnectionTable koszul_connection(const LieAlgebra& alg, const MetricStructure& metric);

/// Levi-Civita connection of the invariant metric on G/H at the origin (Nomizu map):
/// nabla_X Y = 1/2 [X,Y]_m + U(X,Y), <U(X,Y),Z> = 1/2(<[Z,X]_m,Y> + <X,[Z,Y]_m>).
ConnectionTable nomizu_connection(const LieAlgebra& alg, const MetricStructure& metric,
                                  const ReductiveSplit& split);

ConnectionDefects connection_defects(const ConnectionTable& conn, const LieAlgebra& alg,
                                     const MetricStructure& metric, const ReductiveSplit& split);

/// R(a,b)c from the connection. Arguments are projected onto m; on a homogeneous space the
/// isotropy term -[[a,b]_h, c] is included.
Vector curvature_vector(const ConnectionTable& conn, const LieAlgebra& alg, const ReductiveSplit& split,
                        const Vector& a, const Vector& b, const Vector& c);

CurvatureTensor curvature_oracle(const ConnectionTable& conn, const LieAlgebra& alg,
                                 const MetricStructure& metric, const ReductiveSplit& split);

CurvatureSymmetryDefects symmetry_defects(const CurvatureTensor& r);

/// R(x,y)z = 1/4 [z,[x,y]]; requires a bi-invariant g0 and phi = I within `tol`.
Vector biinvariant_curvature(const LieAlgebra& alg, const MetricStructure& metric, const Vector& x,
                             const Vector& y, const Vector& z, double tol = kDefaultTolerances.predicate);

/// Puttmann's expression for <R(x,y)z,w>, evaluated term by term as printed.
double puttmann_printed(const LieAlgebra& alg, const MetricStructure& metric, const ReductiveSplit& split,
                        const Vector& x, const Vector& y, const Vector& z, const Vector& w);

/// Relation puttmann_printed(v0,v1,v2,v3) = sign * <R(v[p0], v[p1]) v[p2], v[p3]> in the oracle convention.
struct SlotMapping {
  std::array<int, 4> perm{0, 1, 2, 3};
  double sign = 1.0;
  double residual = 0.0;  // worst mismatch on the pinning probes
  std::string label() const;
};

/// Determined once by searching all slot permutations and signs against the oracle on
/// su(2) with phi = diag(1,2,3).
const SlotMapping& puttmann_slot_mapping();

/// Oracle value selected by a slot mapping.
double mapped_oracle(const SlotMapping& map, const ConnectionTable& conn, const LieAlgebra& alg,
                     const MetricStructure& metric, const ReductiveSplit& split,
                     const std::array<Vector, 4>& v);

/// <R(u,y)y,u> / (<y,y><u,u> - <y,u>^2).
double sectional(const ConnectionTable& conn, const LieAlgebra& alg, const MetricStructure& metric,
                 const ReductiveSplit& split, const Vector& y, const Vector& u);

/// Matrix D with D(i,j) = b_{j|i} = <nabla_{e_i} X, e_j>.
Matrix drift_covariant_matrix(const ConnectionTable& conn, const MetricStructure& metric, const Vector& x);

}  // namespace flagcurv
