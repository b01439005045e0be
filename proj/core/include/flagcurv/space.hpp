#pragma once

#include <optional>

#include "flagcurv/algebra.hpp"
#include "flagcurv/curvature.hpp"
#include "flagcurv/metric.hpp"
#include "flagcurv/tolerances.hpp"

namespace flagcurv {

struct SpaceValidation {
  AlgebraValidation algebra;
  double g0_bi_invariance_defect = 0.0;
  std::optional<ReductiveReport> reductive;  // absent for Lie groups
  double phi_split_defect = 0.0;
  double ad_h_invariance_defect = 0.0;
  ConnectionDefects connection;
  CurvatureSymmetryDefects curvature;
};

/// Lie algebra, invariant metric and reductive split, validated together, with the
/// Levi-Civita connection and curvature tensor assembled once. A trivial split means G/{e} = G.
class HomogeneousSpace {
 public:
  HomogeneousSpace(LieAlgebra alg, MetricStructure metric, std::optional<ReductiveSplit> split = std::nullopt,
                   const Tolerances& tol = kDefaultTolerances);

  const LieAlgebra& algebra() const { return alg_; }
  const MetricStructure& metric() const { return metric_; }
  const ReductiveSplit& split() const { return split_; }
  const ConnectionTable& connection() const { return conn_; }
  const CurvatureTensor& curvature_tensor() const { return curv_; }
  const SpaceValidation& validation() const { return validation_; }
  const Tolerances& tolerances() const { return tol_; }

  int dim() const { return alg_.dim(); }
  bool is_lie_group() const { return split_.is_trivial(); }
  /// Dimension of m.
  int tangent_dim() const { return static_cast<int>(split_.m_basis().cols()); }

  Vector project(const Vector& v) const { return split_.project_m(v); }
  Vector covariant(const Vector& x, const Vector& y) const { return conn_.apply(x, y); }
  /// R(a,b)c, oracle convention.
  Vector curvature(const Vector& a, const Vector& b, const Vector& c) const;
  double curvature_form(const Vector& a, const Vector& b, const Vector& c, const Vector& d) const;
  double sectional(const Vector& y, const Vector& u) const;

  /// True when g0 is bi-invariant and phi = I within the predicate tolerance.
  bool is_biinvariant() const;

 private:
  LieAlgebra alg_;
  MetricStructure metric_;
  ReductiveSplit split_;
  Tolerances tol_;
  ConnectionTable conn_;
  CurvatureTensor curv_;
  SpaceValidation validation_;
};

}  // namespace flagcurv
