#pragma once

#include "flagcurv/space.hpp"

namespace flagcurv {

/// F(Y) = sqrt(<Y,Y>) + <X,Y> on an invariant geometry, with <X,X> < 1.
class RandersStructure {
 public:
  RandersStructure(HomogeneousSpace space, Vector drift);

  const HomogeneousSpace& space() const { return space_; }
  const MetricStructure& metric() const { return space_.metric(); }
  const Tolerances& tolerances() const { return space_.tolerances(); }
  const Vector& drift() const { return drift_; }
  double norm_bound() const { return norm_bound_; }
  bool is_riemannian() const { return norm_bound_ <= space_.tolerances().non_riemannian; }

  /// 1 - sqrt(<X,X>).
  double strong_convexity_margin() const { return 1.0 - norm_bound_; }

  double norm(const Vector& y) const;

  /// Fundamental tensor g_Y(U,V) in closed form.
  double fundamental_tensor_closed(const Vector& y, const Vector& u, const Vector& v) const;
  /// 1/2 d^2/ds dt F^2(Y + sU + tV) at 0 by a central second difference with step h |Y|.
  double fundamental_tensor_fd(const Vector& y, const Vector& u, const Vector& v, double h) const;
  double fundamental_tensor_fd(const Vector& y, const Vector& u, const Vector& v) const {
    return fundamental_tensor_fd(y, u, v, space_.tolerances().fd_step);
  }
  /// max_i |nabla_{e_i} X| measured in <.,.>; zero iff the drift is parallel.
  double drift_parallel_defect() const;
  bool is_berwald() const { return drift_parallel_defect() <= space_.tolerances().predicate; }

  /// Gram matrix of g_Y over the coordinate basis (closed form).
  Matrix fundamental_matrix(const Vector& y) const;

 private:
  HomogeneousSpace space_;
  Vector drift_;
  double norm_bound_ = 0.0;
};

}  // namespace flagcurv
