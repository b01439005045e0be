#include "flagcurv/randers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flagcurv/error.hpp"

namespace flagcurv {

RandersStructure::RandersStructure(HomogeneousSpace space, Vector drift)
    : space_(std::move(space)), drift_(std::move(drift)) {
  if (drift_.size() != space_.dim()) {
    throw_input("drift has length " + std::to_string(drift_.size()) + ", expected " +
                std::to_string(space_.dim()));
  }
  const double xx = metric().inner(drift_, drift_);
  norm_bound_ = std::sqrt(xx);
  if (!(xx < 1.0)) {
    std::ostringstream os;
    os << "strong convexity violated: <X,X> = " << xx << " must be < 1";
    throw_input(os.str());
  }
  const double tol = space_.tolerances().jacobi;
  const ReductiveSplit& split = space_.split();
  if (!split.is_trivial()) {
    const double off = split.project_h(drift_).cwiseAbs().maxCoeff();
    if (off > tol) {
      std::ostringstream os;
      os << "drift_h_component=" << off << " exceeds " << tol << " (drift must lie in m)";
      throw_input(os.str());
    }
    // Ad(h)X = X, infinitesimally [w, X] = 0 for w in h
    double inv = 0.0;
    for (Eigen::Index a = 0; a < split.h_basis().cols(); ++a)
      inv = std::max(inv, space_.algebra().bracket(split.h_basis().col(a), drift_).cwiseAbs().maxCoeff());
    if (inv > tol) {
      std::ostringstream os;
      os << "drift_isotropy_defect=" << inv << " exceeds " << tol;
      throw_input(os.str());
    }
  }
}

double RandersStructure::norm(const Vector& y) const {
  return std::sqrt(metric().inner(y, y)) + metric().inner(drift_, y);
}

double RandersStructure::fundamental_tensor_closed(const Vector& y, const Vector& u, const Vector& v) const {
  const MetricStructure& g = metric();
  const double yy = g.inner(y, y);
  if (!(yy > 0.0)) throw_degenerate("fundamental tensor undefined at Y = 0");
  const Vector& x = drift_;
  const double xu = g.inner(x, u), xv = g.inner(x, v), xy = g.inner(x, y);
  const double yu = g.inner(y, u), yv = g.inner(y, v), uv = g.inner(u, v);
  const double len = std::sqrt(yy);
  return uv + xu * xv - xy * yv * yu / (yy * len) + (xu * yv + xy * uv + xv * yu) / len;
}

double RandersStructure::fundamental_tensor_fd(const Vector& y, const Vector& u, const Vector& v,
                                               double h) const {
  const double ylen = std::sqrt(metric().inner(y, y));
  if (!(ylen > 0.0)) throw_degenerate("fundamental tensor undefined at Y = 0");
  const double step = h * ylen;
  auto f2 = [&](double s, double t) {
    const Vector p = y + s * u + t * v;
    if (!(metric().inner(p, p) > 0.0)) throw_degenerate("finite-difference stencil reaches Y = 0");
    const double f = norm(p);
    return f * f;
  };
  const double d = f2(step, step) - f2(step, -step) - f2(-step, step) + f2(-step, -step);
  return 0.5 * d / (4.0 * step * step);
}

double RandersStructure::drift_parallel_defect() const {
  double worst = 0.0;
  for (int i = 0; i < space_.dim(); ++i) {
    const Vector e = space_.project(Vector::Unit(space_.dim(), i));
    worst = std::max(worst, metric().norm(space_.covariant(e, drift_)));
  }
  return worst;
}

Matrix RandersStructure::fundamental_matrix(const Vector& y) const {
  const int n = space_.dim();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = fundamental_tensor_closed(y, Vector::Unit(n, i), Vector::Unit(n, j));
  return m;
}

}  // namespace flagcurv
