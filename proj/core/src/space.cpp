#include "flagcurv/space.hpp"

#include <sstream>

#include "flagcurv/error.hpp"

namespace flagcurv {

namespace {

ConnectionTable build_connection(const LieAlgebra& alg, const MetricStructure& metric,
                                 const ReductiveSplit& split) {
  return split.is_trivial() ? koszul_connection(alg, metric) : nomizu_connection(alg, metric, split);
}

[[noreturn]] void defect_error(const char* name, double value, double tol) {
  std::ostringstream os;
  os << name << "=" << value << " exceeds " << tol;
  throw_input(os.str());
}

}  // namespace

HomogeneousSpace::HomogeneousSpace(LieAlgebra alg, MetricStructure metric,
                                   std::optional<ReductiveSplit> split, const Tolerances& tol)
    : alg_(std::move(alg)),
      metric_(std::move(metric)),
      split_(split ? std::move(*split) : ReductiveSplit::trivial(metric_.g0())),
      tol_(tol),
      conn_(alg_.dim()),
      curv_(alg_.dim()) {
  if (metric_.dim() != alg_.dim()) throw_input("metric dimension differs from algebra dimension");
  if (split_.dim() != alg_.dim()) throw_input("split dimension differs from algebra dimension");

  validation_.algebra = validate(alg_, tol_.jacobi);
  if (validation_.algebra.antisymmetry_defect > tol_.jacobi)
    defect_error("antisymmetry_defect", validation_.algebra.antisymmetry_defect, tol_.jacobi);
  if (validation_.algebra.jacobi_defect > tol_.jacobi)
    defect_error("jacobi_defect", validation_.algebra.jacobi_defect, tol_.jacobi);

  validation_.g0_bi_invariance_defect = bi_invariance_defect(alg_, metric_.g0());
  if (!split_.is_trivial()) {
    const ReductiveReport rep = check_reductive(split_, alg_, metric_.g0(), tol_.jacobi);
    validation_.reductive = rep;
    if (rep.subalgebra_defect > tol_.jacobi) defect_error("subalgebra_defect", rep.subalgebra_defect, tol_.jacobi);
    if (rep.reductivity_defect > tol_.jacobi)
      defect_error("reductivity_defect", rep.reductivity_defect, tol_.jacobi);
    if (rep.orthogonality_defect > tol_.jacobi)
      defect_error("orthogonality_defect", rep.orthogonality_defect, tol_.jacobi);
    validation_.phi_split_defect = phi_split_defect(metric_, split_);
    if (validation_.phi_split_defect > tol_.jacobi)
      defect_error("phi_split_defect", validation_.phi_split_defect, tol_.jacobi);
    validation_.ad_h_invariance_defect = ad_invariance_defect_h(alg_, metric_, split_);
    if (validation_.ad_h_invariance_defect > tol_.jacobi)
      defect_error("ad_h_invariance_defect", validation_.ad_h_invariance_defect, tol_.jacobi);
  }

  conn_ = build_connection(alg_, metric_, split_);
  curv_ = curvature_oracle(conn_, alg_, metric_, split_);
  validation_.connection = connection_defects(conn_, alg_, metric_, split_);
  validation_.curvature = symmetry_defects(curv_);
}

Vector HomogeneousSpace::curvature(const Vector& a, const Vector& b, const Vector& c) const {
  return curvature_vector(conn_, alg_, split_, a, b, c);
}

double HomogeneousSpace::curvature_form(const Vector& a, const Vector& b, const Vector& c,
                                        const Vector& d) const {
  return metric_.inner(curvature(a, b, c), project(d));
}

double HomogeneousSpace::sectional(const Vector& y, const Vector& u) const {
  return flagcurv::sectional(conn_, alg_, metric_, split_, y, u);
}

bool HomogeneousSpace::is_biinvariant() const {
  return validation_.g0_bi_invariance_defect <= tol_.predicate &&
         metric_.phi_identity_defect() <= tol_.predicate;
}

}  // namespace flagcurv
