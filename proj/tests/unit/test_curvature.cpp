#include <doctest.h>

#include <random>

#include "bridge.hpp"
#include "flagcurv/error.hpp"
#include "flagcurv/space.hpp"
#include "flagcurv/standard_algebras.hpp"

using namespace flagcurv;
namespace ts = testing_support;

namespace {

HomogeneousSpace group(const LieAlgebra& alg, const Matrix& phi) {
  const int n = alg.dim();
  return HomogeneousSpace(alg, MetricStructure::from_phi(Matrix::Identity(n, n), phi));
}

HomogeneousSpace s2() {
  return HomogeneousSpace(standard::su2(), MetricStructure::identity(3),
                          ReductiveSplit(Vector::Unit(3, 2), Matrix::Identity(3, 3)));
}

}  // namespace

TEST_CASE("Koszul connection matches the reference on random metrics") {
  std::mt19937_64 rng(21);
  for (const LieAlgebra& alg : {standard::su2(), standard::u2(), standard::heisenberg3()}) {
    const ref::Table c = ts::table_of(alg);
    for (int t = 0; t < 10; ++t) {
      const Matrix phi = ts::random_spd(rng, alg.dim());
      const MetricStructure m = MetricStructure::from_phi(Matrix::Identity(alg.dim(), alg.dim()), phi);
      const ConnectionTable conn = koszul_connection(alg, m);
      const ref::Table gamma = ref::koszul(c, ts::mat_of(m.inner_matrix()));
      for (int i = 0; i < alg.dim(); ++i)
        for (int j = 0; j < alg.dim(); ++j)
          for (int k = 0; k < alg.dim(); ++k) CHECK(conn.at(i, j, k) == doctest::Approx(gamma[i][j][k]).epsilon(1e-9));
      const ConnectionDefects d = connection_defects(conn, alg, m, ReductiveSplit::trivial(m.g0()));
      CHECK(d.torsion <= 1e-10);
      CHECK(d.compatibility <= 1e-10);
    }
  }
}

TEST_CASE("curvature matches the reference and has the tensor symmetries") {
  std::mt19937_64 rng(22);
  for (const LieAlgebra& alg : {standard::su2(), standard::u2(), standard::heisenberg3(), standard::su2xsu2()}) {
    const ref::Table c = ts::table_of(alg);
    for (int t = 0; t < 5; ++t) {
      const HomogeneousSpace s = group(alg, ts::random_spd(rng, alg.dim()));
      const ref::Table gamma = ref::koszul(c, ts::mat_of(s.metric().inner_matrix()));
      for (int p = 0; p < 5; ++p) {
        const Vector x = ts::random_vector(rng, alg.dim()), y = ts::random_vector(rng, alg.dim()),
                     z = ts::random_vector(rng, alg.dim());
        const Vector got = s.curvature(x, y, z);
        const ref::Vec want = ref::curvature(c, gamma, ts::vec_of(x), ts::vec_of(y), ts::vec_of(z));
        const double scale = 1.0 + ts::to_vector(want).cwiseAbs().maxCoeff();
        CHECK((got - ts::to_vector(want)).cwiseAbs().maxCoeff() <= 1e-9 * scale);
      }
      const CurvatureSymmetryDefects d = symmetry_defects(s.curvature_tensor());
      const double scale = 1.0 + s.curvature_tensor().max_abs();
      CHECK(d.antisymmetry_first_pair <= 1e-10 * scale);
      CHECK(d.antisymmetry_second_pair <= 1e-10 * scale);
      CHECK(d.pair_symmetry <= 1e-10 * scale);
      CHECK(d.bianchi <= 1e-10 * scale);
    }
  }
}

TEST_CASE("bi-invariant su2 has curvature 1/4 [z,[x,y]] and K = 1/4") {
  const LieAlgebra su2 = standard::su2();
  const HomogeneousSpace s = group(su2, Matrix::Identity(3, 3));
  const ref::Table c = ts::table_of(su2);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    const Vector x = ts::random_vector(rng, 3), y = ts::random_vector(rng, 3), z = ts::random_vector(rng, 3);
    const Vector want = ts::to_vector(ref::quarter_double_bracket(c, ts::vec_of(x), ts::vec_of(y), ts::vec_of(z)));
    CHECK((s.curvature(x, y, z) - want).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((biinvariant_curvature(su2, s.metric(), x, y, z) - want).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(s.sectional(x, y) == doctest::Approx(0.25).epsilon(1e-12));
  }
  CHECK(s.is_biinvariant());
}

TEST_CASE("bi-invariant closed form refuses other metrics") {
  Matrix phi = Matrix::Identity(3, 3);
  phi(0, 0) = 2.0;
  const HomogeneousSpace berger = group(standard::su2(), phi);
  CHECK_FALSE(berger.is_biinvariant());
  const Vector e = Vector::Unit(3, 0);
  CHECK_THROWS_AS(biinvariant_curvature(standard::su2(), berger.metric(), e, e, e), Error);
}

TEST_CASE("Heisenberg sectional curvatures") {
  const HomogeneousSpace h = group(standard::heisenberg3(), Matrix::Identity(3, 3));
  const Vector e1 = Vector::Unit(3, 0), e2 = Vector::Unit(3, 1), e3 = Vector::Unit(3, 2);
  CHECK(h.sectional(e1, e2) == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(h.sectional(e1, e3) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(h.sectional(e2, e3) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("abelian groups are flat") {
  std::mt19937_64 rng(24);
  const HomogeneousSpace a = group(standard::abelian(3), ts::random_spd(rng, 3));
  CHECK(a.curvature_tensor().max_abs() == 0.0);
}

TEST_CASE("degenerate planes are refused") {
  const HomogeneousSpace s = group(standard::su2(), Matrix::Identity(3, 3));
  const Vector e1 = Vector::Unit(3, 0);
  CHECK_THROWS_AS(s.sectional(e1, 2.0 * e1), Error);
}

TEST_CASE("normal homogeneous S2 has curvature 1 on the tangent plane") {
  const HomogeneousSpace s = s2();
  CHECK_FALSE(s.is_lie_group());
  CHECK(s.tangent_dim() == 2);
  const Vector e1 = Vector::Unit(3, 0), e2 = Vector::Unit(3, 1);
  CHECK(s.sectional(e1, e2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(puttmann_printed(s.algebra(), s.metric(), s.split(), e1, e2, e1, e2) == doctest::Approx(1.0).epsilon(1e-12));
  const SpaceValidation& v = s.validation();
  REQUIRE(v.reductive.has_value());
  CHECK(v.reductive->passes());
  CHECK(v.connection.torsion <= 1e-12);
  CHECK(v.connection.compatibility <= 1e-12);
}

TEST_CASE("Nomizu connection reduces to Koszul on a trivial split") {
  std::mt19937_64 rng(25);
  const LieAlgebra u2 = standard::u2();
  const MetricStructure m = MetricStructure::from_phi(Matrix::Identity(4, 4), ts::random_spd(rng, 4));
  const ConnectionTable a = koszul_connection(u2, m);
  const ConnectionTable b = nomizu_connection(u2, m, ReductiveSplit::trivial(m.g0()));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK((a.column(i, j) - b.column(i, j)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Puttmann expression agrees with the oracle under the pinned slot mapping") {
  const SlotMapping& map = puttmann_slot_mapping();
  CHECK(map.residual <= 1e-10);
  std::mt19937_64 rng(26);
  for (const LieAlgebra& alg : {standard::su2(), standard::u2(), standard::su2xsu2()}) {
    const int n = alg.dim();
    for (int t = 0; t < 5; ++t) {
      const HomogeneousSpace s = group(alg, ts::random_spd(rng, n));
      for (int p = 0; p < 5; ++p) {
        const std::array<Vector, 4> v{ts::random_vector(rng, n), ts::random_vector(rng, n),
                                      ts::random_vector(rng, n), ts::random_vector(rng, n)};
        const double printed = puttmann_printed(alg, s.metric(), s.split(), v[0], v[1], v[2], v[3]);
        const double oracle = mapped_oracle(map, s.connection(), alg, s.metric(), s.split(), v);
        CHECK(printed == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
      }
    }
  }
  // the homogeneous case: S2 with random vectors
  const HomogeneousSpace s = s2();
  for (int p = 0; p < 20; ++p) {
    const std::array<Vector, 4> v{ts::random_vector(rng, 3), ts::random_vector(rng, 3), ts::random_vector(rng, 3),
                                  ts::random_vector(rng, 3)};
    std::array<Vector, 4> pv;
    for (int i = 0; i < 4; ++i) pv[i] = s.project(v[i]);
    const double printed = puttmann_printed(s.algebra(), s.metric(), s.split(), pv[0], pv[1], pv[2], pv[3]);
    CHECK(printed == doctest::Approx(mapped_oracle(map, s.connection(), s.algebra(), s.metric(), s.split(), pv))
                         .epsilon(1e-9)
                         .scale(1.0));
  }
}

TEST_CASE("Berger spheres match the reference sectional curvature") {
  const LieAlgebra su2 = standard::su2();
  const ref::Table c = ts::table_of(su2);
  for (double lambda : {0.5, 1.0, 2.0}) {
    Matrix phi = Matrix::Identity(3, 3);
    phi(0, 0) = phi(1, 1) = lambda;
    const HomogeneousSpace s = group(su2, phi);
    const ref::Mat g = ts::mat_of(s.metric().inner_matrix());
    const ref::Table gamma = ref::koszul(c, g);
    const Vector e1 = Vector::Unit(3, 0), e2 = Vector::Unit(3, 1), e3 = Vector::Unit(3, 2);
    CHECK(s.sectional(e1, e2) == doctest::Approx(ref::sectional(c, gamma, g, ts::vec_of(e1), ts::vec_of(e2))));
    CHECK(s.sectional(e1, e3) == doctest::Approx(ref::sectional(c, gamma, g, ts::vec_of(e1), ts::vec_of(e3))));
  }
}

TEST_CASE("drift covariant matrix is zero for a central drift") {
  const HomogeneousSpace s = group(standard::u2(), Matrix::Identity(4, 4));
  const Matrix d = drift_covariant_matrix(s.connection(), s.metric(), 0.5 * Vector::Unit(4, 3));
  CHECK(d.cwiseAbs().maxCoeff() == 0.0);
  const Matrix d1 = drift_covariant_matrix(s.connection(), s.metric(), Vector::Unit(4, 0));
  CHECK(d1.cwiseAbs().maxCoeff() == doctest::Approx(0.5));
}
