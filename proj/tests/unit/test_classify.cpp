#include <doctest.h>

#include <algorithm>
#include <random>

#include "bridge.hpp"
#include "flagcurv/classify.hpp"
#include "flagcurv/error.hpp"
#include "flagcurv/standard_algebras.hpp"

using namespace flagcurv;
namespace ts = testing_support;

namespace {

RandersStructure make(const LieAlgebra& alg, const Vector& x, Matrix phi = Matrix()) {
  const int n = alg.dim();
  if (phi.size() == 0) phi = Matrix::Identity(n, n);
  return RandersStructure(HomogeneousSpace(alg, MetricStructure::from_phi(Matrix::Identity(n, n), phi)), x);
}

bool fails(const YSReport& r, const std::string& name) {
  const auto f = r.failing();
  return std::find(f.begin(), f.end(), name) != f.end();
}

}  // namespace

TEST_CASE("parallel fields") {
  CHECK(parallel_space(make(standard::su2(), Vector::Zero(3)).space()).cols() == 0);
  const Matrix p = parallel_space(make(standard::u2(), Vector::Zero(4)).space());
  REQUIRE(p.cols() == 1);
  CHECK(std::abs(p(3, 0)) == doctest::Approx(1.0));
  CHECK(p.topRows(3).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(parallel_space(make(standard::abelian(3), Vector::Zero(3)).space()).cols() == 3);
  CHECK(parallel_space(make(standard::heisenberg3(), Vector::Zero(3)).space()).cols() == 0);
  // su2 x su2 has no centre, hence no parallel invariant field
  CHECK(parallel_space(make(standard::su2xsu2(), Vector::Zero(6)).space()).cols() == 0);
}

TEST_CASE("parallel fields of random metrics really are parallel") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 10; ++t) {
    const RandersStructure r = make(standard::u2(), Vector::Zero(4), ts::random_spd(rng, 4));
    const HomogeneousSpace& s = r.space();
    const Matrix p = parallel_space(s);
    for (Eigen::Index c = 0; c < p.cols(); ++c)
      for (int i = 0; i < 4; ++i) CHECK(s.metric().norm(s.covariant(Vector::Unit(4, i), p.col(c))) <= 1e-10);
  }
}

TEST_CASE("perfect algebras") {
  CHECK(is_perfect(standard::su2()));
  CHECK(is_perfect(standard::su2xsu2()));
  CHECK_FALSE(is_perfect(standard::u2()));
  CHECK_FALSE(is_perfect(standard::heisenberg3()));
  CHECK_FALSE(is_perfect(standard::abelian(2)));
}

TEST_CASE("Berwald report implications") {
  const BerwaldReport b = berwald_report(make(standard::u2(), 0.5 * Vector::Unit(4, 3)));
  CHECK(b.is_berwald);
  CHECK(b.non_riemannian);
  CHECK(b.implications_hold);
  CHECK(b.skew_defect <= 1e-10);
  CHECK(b.derived_orthogonality_defect <= 1e-10);

  const BerwaldReport t = berwald_report(make(standard::u2(), 0.5 * Vector::Unit(4, 0)));
  CHECK_FALSE(t.is_berwald);
  CHECK(t.implications_hold);
  CHECK(t.skew_defect <= 1e-10);
  CHECK(t.derived_orthogonality_defect == doctest::Approx(0.5));

  const BerwaldReport h = berwald_report(make(standard::heisenberg3(), 0.5 * Vector::Unit(3, 2)));
  CHECK_FALSE(h.is_berwald);
  CHECK(h.derived_orthogonality_defect == doctest::Approx(0.5));
}

TEST_CASE("Killing and closedness defects") {
  const RandersStructure r = make(standard::u2(), Vector::Zero(4));
  CHECK(killing_defect(r.space(), Vector::Unit(4, 0)) <= 1e-14);
  CHECK(closedness_defect(r.space(), Vector::Unit(4, 3)) == 0.0);
  CHECK(closedness_defect(r.space(), Vector::Unit(4, 0)) == doctest::Approx(1.0));
  const RandersStructure h = make(standard::heisenberg3(), Vector::Zero(3));
  CHECK(killing_defect(h.space(), Vector::Unit(3, 0)) > 0.5);
}

TEST_CASE("index convention pin") {
  const IndexConvention& c = curvature_index_convention();
  CHECK(c.label() == "R_hijk = +<R(e_h,e_i)e_j,e_k>");
}

TEST_CASE("ys-positive on a Berwald non-Riemannian metric fails the non-parallel bullet") {
  const RandersStructure r = make(standard::u2(), 0.5 * Vector::Unit(4, 3));
  for (double k : {0.1, 0.25, 1.0}) {
    const YSReport rep = ys_positive_check(r, k);
    CHECK_FALSE(rep.verdict);
    CHECK(fails(rep, "non-parallel Killing"));
    CHECK_FALSE(fails(rep, "beta = 0"));
    CHECK_FALSE(fails(rep, "Killing"));
    CHECK_FALSE(fails(rep, "constant length"));
    CHECK(rep.parallel_defect == 0.0);
  }
  CHECK_THROWS_AS(ys_positive_check(make(standard::u2(), Vector::Zero(4)), 0.25), Error);
}

TEST_CASE("ys-positive on su2 with a Killing drift") {
  const YSReport rep = ys_positive_check(make(standard::su2(), 0.6 * Vector::Unit(3, 2)), 0.25);
  CHECK_FALSE(fails(rep, "Killing"));
  CHECK_FALSE(fails(rep, "non-parallel Killing"));
  CHECK(rep.curvature_identity_defect > 1e-3);
}

TEST_CASE("ys-zero") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 5; ++t) {
    Vector x = ts::random_vector(rng, 3);
    x *= 0.9 / x.norm();
    CHECK(ys_zero_check(make(standard::abelian(3), x)).verdict);
  }
  const YSReport su2 = ys_zero_check(make(standard::su2(), Vector::Zero(3)));
  CHECK_FALSE(su2.verdict);
  CHECK(fails(su2, "flat (locally Minkowskian)"));
}

TEST_CASE("ys-negative on abelian3") {
  const YSReport rep = ys_negative_check(make(standard::abelian(3), 0.3 * Vector::Unit(3, 0)), -1.0);
  CHECK_FALSE(rep.verdict);
  CHECK(rep.sigma == 0.0);
  CHECK(rep.sigma_equation_defect == doctest::Approx(16.0));
  CHECK(fails(rep, "sigma^2 = -16K"));
  CHECK_FALSE(fails(rep, "closed"));
  CHECK_THROWS_AS(ys_negative_check(make(standard::abelian(3), Vector::Zero(3)), 0.5), Error);
}

TEST_CASE("Milnor nonnegativity on u2") {
  const HomogeneousSpace s = make(standard::u2(), Vector::Zero(4)).space();
  const MilnorReport rep = milnor_nonneg_check(s, Vector::Unit(4, 2), 400, 3);
  CHECK(rep.pass());
  CHECK(rep.image_rank == 2.0);
  CHECK(rep.equality_samples >= 200);
  CHECK(rep.characterization_mismatches == 0);
  CHECK(rep.min_sectional >= -1e-12);
  // ad(x) is not skew on the Heisenberg group
  const HomogeneousSpace h = make(standard::heisenberg3(), Vector::Zero(3)).space();
  CHECK_THROWS_AS(milnor_nonneg_check(h, Vector::Unit(3, 0), 10, 1), Error);
}

TEST_CASE("constant curvature probe") {
  const ConstantCurvatureReport su2 = constant_curvature_probe(make(standard::su2(), Vector::Zero(3)), 500, 1);
  CHECK(su2.is_constant);
  CHECK(su2.k_estimate == doctest::Approx(0.25).epsilon(1e-12));
  const ConstantCurvatureReport u2 = constant_curvature_probe(make(standard::u2(), 0.5 * Vector::Unit(4, 3)), 500, 1);
  CHECK_FALSE(u2.is_constant);
  CHECK(u2.spread > 0.2);
}
