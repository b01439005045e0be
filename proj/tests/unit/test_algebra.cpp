#include <doctest.h>

#include <random>

#include "bridge.hpp"
#include "flagcurv/error.hpp"
#include "flagcurv/standard_algebras.hpp"

using namespace flagcurv;
namespace ts = testing_support;

TEST_CASE("su2 brackets match the cyclic table") {
  const LieAlgebra su2 = standard::su2();
  CHECK(su2.bracket(su2.basis(0), su2.basis(1)) == su2.basis(2));
  CHECK(su2.bracket(su2.basis(1), su2.basis(2)) == su2.basis(0));
  CHECK(su2.bracket(su2.basis(2), su2.basis(0)) == su2.basis(1));
  CHECK(su2.bracket(su2.basis(0), su2.basis(2)) == -su2.basis(1));
}

TEST_CASE("bracket agrees with the naive triple loop") {
  std::mt19937_64 rng(11);
  for (const LieAlgebra& alg : {standard::su2(), standard::u2(), standard::heisenberg3(), standard::su2xsu2()}) {
    const ref::Table c = ts::table_of(alg);
    for (int t = 0; t < 20; ++t) {
      const Vector a = ts::random_vector(rng, alg.dim()), b = ts::random_vector(rng, alg.dim());
      const Vector got = alg.bracket(a, b);
      const ref::Vec want = ref::bracket(c, ts::vec_of(a), ts::vec_of(b));
      for (int k = 0; k < alg.dim(); ++k) CHECK(got(k) == doctest::Approx(want[k]).epsilon(1e-13));
    }
  }
}

TEST_CASE("bracket is exactly antisymmetric") {
  std::mt19937_64 rng(3);
  const LieAlgebra alg = standard::su2xsu2();
  for (int t = 0; t < 50; ++t) {
    const Vector a = ts::random_vector(rng, 6), b = ts::random_vector(rng, 6);
    CHECK((alg.bracket(a, b) + alg.bracket(b, a)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("validation of standard algebras is clean") {
  for (const LieAlgebra& alg : {standard::su2(), standard::u2(), standard::heisenberg3(), standard::su2xsu2(),
                                standard::abelian(3)}) {
    const AlgebraValidation v = validate(alg);
    CHECK(v.antisymmetry_defect <= 1e-12);
    CHECK(v.jacobi_defect <= 1e-12);
    CHECK(v.passes());
  }
}

TEST_CASE("raw tables report their defects") {
  StructureConstants t(3);
  t.at(0, 1, 2) = 1.0;
  t.at(1, 0, 2) = -0.5;
  CHECK(validate(t).antisymmetry_defect == doctest::Approx(0.5));
  CHECK_THROWS_AS(LieAlgebra{t}, Error);

  // [e1,e2] = e3, [e1,e3] = e1: Jacobi fails by |e3|
  const LieAlgebra broken = LieAlgebra::from_brackets(3, {{0, 1, {{2, 1.0}}}, {0, 2, {{0, 1.0}}}});
  const AlgebraValidation v = validate(broken);
  CHECK(v.antisymmetry_defect == 0.0);
  CHECK(v.jacobi_defect == doctest::Approx(1.0));
  CHECK_FALSE(v.passes());
}

TEST_CASE("from_brackets rejects malformed entries") {
  CHECK_THROWS_AS(LieAlgebra::from_brackets(3, {{1, 0, {{2, 1.0}}}}), Error);
  CHECK_THROWS_AS(LieAlgebra::from_brackets(3, {{0, 0, {{2, 1.0}}}}), Error);
  CHECK_THROWS_AS(LieAlgebra::from_brackets(3, {{0, 3, {{2, 1.0}}}}), Error);
  CHECK_THROWS_AS(LieAlgebra::from_brackets(3, {{0, 1, {{5, 1.0}}}}), Error);
  CHECK_THROWS_AS(LieAlgebra::from_brackets(3, {{0, 1, {{2, 1.0}}}, {0, 1, {{2, 1.0}}}}), Error);
  CHECK_THROWS_AS(LieAlgebra::from_brackets(0, {}), Error);
  CHECK_THROWS_AS(LieAlgebra::from_brackets(2, {}, {"a"}), Error);
}

TEST_CASE("from_brackets antisymmetrizes and names the basis") {
  const LieAlgebra h = standard::heisenberg3();
  CHECK(h.structure(1, 0, 2) == -1.0);
  CHECK(h.basis_names() == std::vector<std::string>{"e1", "e2", "e3"});
  CHECK(h.ad_matrix(h.basis(0))(2, 1) == 1.0);
  CHECK(standard::abelian(4).is_abelian());
  CHECK_FALSE(h.is_abelian());
}

TEST_CASE("derived span dimensions") {
  CHECK(derived_span(standard::su2()).cols() == 3);
  CHECK(derived_span(standard::u2()).cols() == 3);
  CHECK(derived_span(standard::heisenberg3()).cols() == 1);
  CHECK(derived_span(standard::abelian(3)).cols() == 0);
  CHECK(derived_span(standard::su2xsu2()).cols() == 6);
}

TEST_CASE("reductive split of su2 over span{e3}") {
  const LieAlgebra su2 = standard::su2();
  const Matrix g0 = Matrix::Identity(3, 3);
  const ReductiveSplit split(Vector::Unit(3, 2), g0);
  CHECK_FALSE(split.is_trivial());
  CHECK(split.m_basis().cols() == 2);
  const Vector v(Vector::Ones(3));
  CHECK((split.project_m(v) - Vector(Eigen::Vector3d(1, 1, 0))).norm() <= 1e-15);
  CHECK((split.project_h(v) - Vector::Unit(3, 2)).norm() <= 1e-15);
  CHECK(check_reductive(split, su2, g0).passes());
}

TEST_CASE("non-subalgebra and non-reductive splits are reported") {
  const LieAlgebra su2 = standard::su2();
  const Matrix g0 = Matrix::Identity(3, 3);
  Matrix h(3, 2);
  h << 1, 0, 0, 1, 0, 0;
  const ReductiveReport r = check_reductive(ReductiveSplit(h, g0), su2, g0);
  CHECK(r.subalgebra_defect == doctest::Approx(1.0));
  CHECK_FALSE(r.passes());

  // central span{e3} in the Heisenberg algebra is fine
  const LieAlgebra heis = standard::heisenberg3();
  CHECK(check_reductive(ReductiveSplit(Vector::Unit(3, 2), g0), heis, g0).passes());
  // ax+b algebra [e1,e2] = e2 with h = span{e2}: [e2, e1] = -e2 lands back in h
  const LieAlgebra axb = LieAlgebra::from_brackets(2, {{0, 1, {{1, 1.0}}}});
  const Matrix i2 = Matrix::Identity(2, 2);
  const ReductiveReport bad = check_reductive(ReductiveSplit(Vector::Unit(2, 1), i2), axb, i2);
  CHECK(bad.subalgebra_defect == 0.0);
  CHECK(bad.reductivity_defect == doctest::Approx(1.0));
}

TEST_CASE("trivial split projects onto everything") {
  const ReductiveSplit t = ReductiveSplit::trivial(Matrix::Identity(4, 4));
  CHECK(t.is_trivial());
  CHECK(t.m_basis().cols() == 4);
  CHECK((t.projector_m() - Matrix::Identity(4, 4)).norm() == 0.0);
}
