#include "flagcurv/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "flagcurv/error.hpp"
#include "flagcurv/standard_algebras.hpp"

namespace flagcurv {

Matrix parallel_space(const HomogeneousSpace& space) {
  const int n = space.dim();
  const Matrix& m = space.split().m_basis();
  const Matrix& h = space.split().h_basis();
  const auto k = m.cols();
  Matrix map(static_cast<Eigen::Index>(n) * n + static_cast<Eigen::Index>(n) * h.cols(), k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Vector v = m.col(c);
    for (int i = 0; i < n; ++i)
      map.block(static_cast<Eigen::Index>(i) * n, c, n, 1) =
          space.covariant(space.project(Vector::Unit(n, i)), v);
    for (Eigen::Index a = 0; a < h.cols(); ++a)
      map.block(static_cast<Eigen::Index>(n) * n + a * n, c, n, 1) = space.algebra().bracket(h.col(a), v);
  }
  const Matrix coeffs = linalg::null_space(map, space.tolerances().rank);
  if (coeffs.cols() == 0) return Matrix(n, 0);
  return space.metric().gram_schmidt(m * coeffs, InnerForm::Metric);
}

bool is_perfect(const LieAlgebra& alg, double tol) { return derived_span(alg, tol).cols() == alg.dim(); }

double killing_defect(const HomogeneousSpace& space, const Vector& x) {
  const int n = space.dim();
  const MetricStructure& g = space.metric();
  const LieAlgebra& alg = space.algebra();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    const Vector u = space.project(Vector::Unit(n, a));
    const Vector xu = space.project(alg.bracket(x, u));
    for (int b = 0; b < n; ++b) {
      const Vector v = space.project(Vector::Unit(n, b));
      worst = std::max(worst, std::abs(g.inner(xu, v) + g.inner(u, space.project(alg.bracket(x, v)))));
    }
  }
  return worst;
}

double closedness_defect(const HomogeneousSpace& space, const Vector& x) {
  const int n = space.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      worst = std::max(worst, std::abs(space.metric().inner(
                                  x, space.algebra().bracket(Vector::Unit(n, i), Vector::Unit(n, j)))));
  return worst;
}

BerwaldReport berwald_report(const RandersStructure& randers) {
  const HomogeneousSpace& space = randers.space();
  BerwaldReport rep;
  rep.tolerance = space.tolerances().predicate;
  rep.parallel_defect = randers.drift_parallel_defect();
  rep.skew_defect = killing_defect(space, randers.drift());
  rep.derived_orthogonality_defect = closedness_defect(space, randers.drift());
  rep.is_berwald = rep.parallel_defect <= rep.tolerance;
  rep.non_riemannian = !randers.is_riemannian();
  rep.implications_hold =
      !rep.is_berwald || (rep.skew_defect <= rep.tolerance && rep.derived_orthogonality_defect <= rep.tolerance);
  return rep;
}

Vector beta_form(const RandersStructure& randers) {
  const Matrix d = drift_covariant_matrix(randers.space().connection(), randers.metric(), randers.drift());
  const Vector& x = randers.drift();
  const auto n = x.size();
  Vector beta = Vector::Zero(n);
  // d(i, j) = b_{j|i}
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) beta(j) += x(i) * (d(i, j) - d(j, i));
  return beta;
}

std::string IndexConvention::label() const {
  static const char* names[4] = {"h", "i", "j", "k"};
  std::ostringstream os;
  os << "R_hijk = " << (sign > 0 ? "+" : "-") << "<R(e_" << names[perm[0]] << ",e_" << names[perm[1]] << ")e_"
     << names[perm[2]] << ",e_" << names[perm[3]] << ">";
  return os.str();
}

double IndexConvention::component(const CurvatureTensor& r, int h, int i, int j, int k) const {
  const std::array<int, 4> idx{h, i, j, k};
  return sign * r.at(idx[perm[0]], idx[perm[1]], idx[perm[2]], idx[perm[3]]);
}

namespace {

IndexConvention pin_index_convention() {
  const HomogeneousSpace space(standard::su2(), MetricStructure::identity(3));
  const CurvatureTensor& r = space.curvature_tensor();
  const Matrix& g = space.metric().inner_matrix();
  constexpr double kK = 0.25;
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    for (double sign : {1.0, -1.0}) {
      IndexConvention c{perm, sign};
      double worst = 0.0;
      for (int h = 0; h < 3; ++h)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              worst = std::max(worst, std::abs(c.component(r, h, i, j, k) -
                                               kK * (g(h, k) * g(i, j) - g(h, j) * g(i, k))));
      if (worst <= 1e-10) return c;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw_numerical("no index convention reproduces constant curvature on su(2)");
}

struct DriftData {
  Matrix g;    // inner-product Gram matrix
  Vector b;    // lowered drift b_h = <X, e_h>
  Matrix cov;  // cov(i, j) = b_{i|j}
  double b2 = 0.0;
};

DriftData drift_data(const RandersStructure& randers) {
  DriftData d;
  d.g = randers.metric().inner_matrix();
  d.b = d.g * randers.drift();
  d.cov = drift_covariant_matrix(randers.space().connection(), randers.metric(), randers.drift()).transpose();
  d.b2 = randers.metric().inner(randers.drift(), randers.drift());
  return d;
}

Bullet bullet(std::string name, double value, double tol, bool pass) {
  return Bullet{std::move(name), value, tol, pass};
}

void finish(YSReport& rep) {
  rep.verdict = std::all_of(rep.bullets.begin(), rep.bullets.end(), [](const Bullet& b) { return b.pass; });
}

}  // namespace

const IndexConvention& curvature_index_convention() {
  static const IndexConvention c = pin_index_convention();
  return c;
}

std::string to_string(YSCase c) {
  switch (c) {
    case YSCase::Positive: return "positive";
    case YSCase::Zero: return "zero";
    case YSCase::Negative: return "negative";
  }
  return "unknown";
}

std::vector<std::string> YSReport::failing() const {
  std::vector<std::string> out;
  for (const auto& b : bullets)
    if (!b.pass) out.push_back(b.name);
  return out;
}

YSReport ys_positive_check(const RandersStructure& randers, double k) {
  if (randers.is_riemannian()) throw_usage("ys-positive needs a non-Riemannian Randers metric (nonzero drift)");
  const HomogeneousSpace& space = randers.space();
  const double tol = space.tolerances().predicate;
  const IndexConvention& conv = curvature_index_convention();
  const DriftData d = drift_data(randers);

  YSReport rep;
  rep.case_label = YSCase::Positive;
  rep.k = k;
  rep.index_convention = conv.label();
  rep.beta_components = beta_form(randers);
  rep.beta_defect = rep.beta_components.cwiseAbs().maxCoeff();
  rep.killing_defect = killing_defect(space, randers.drift());
  rep.parallel_defect = randers.drift_parallel_defect();
  rep.constant_length_defect = 0.0;  // <X,X> is constant for an invariant field

  const int n = space.dim();
  const CurvatureTensor& r = space.curvature_tensor();
  const Matrix& g = d.g;
  const Vector& b = d.b;
  const Matrix& c = d.cov;
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < n; ++kk) {
          const double rhs = k * (1.0 - d.b2) * (g(h, kk) * g(i, j) - g(h, j) * g(i, kk)) +
                             k * (g(i, j) * b(h) * b(kk) - g(i, kk) * b(h) * b(j)) -
                             k * (g(h, j) * b(i) * b(kk) - g(h, kk) * b(i) * b(j)) - c(i, j) * c(h, kk) +
                             c(i, kk) * c(h, j) + 2.0 * c(h, i) * c(j, kk);
          rep.curvature_identity_defect =
              std::max(rep.curvature_identity_defect, std::abs(conv.component(r, h, i, j, kk) - rhs));
        }

  rep.bullets.push_back(bullet("beta = 0", rep.beta_defect, tol, rep.beta_defect <= tol));
  rep.bullets.push_back(bullet("Killing", rep.killing_defect, tol, rep.killing_defect <= tol));
  rep.bullets.push_back(bullet("non-parallel Killing", rep.parallel_defect, tol, rep.parallel_defect > tol));
  rep.bullets.push_back(bullet("constant length", rep.constant_length_defect, tol, true));
  rep.bullets.push_back(
      bullet("curvature identity", rep.curvature_identity_defect, tol, rep.curvature_identity_defect <= tol));
  finish(rep);
  return rep;
}

YSReport ys_negative_check(const RandersStructure& randers, double k) {
  if (!(k < 0.0)) throw_usage("ys-negative needs K < 0");
  const HomogeneousSpace& space = randers.space();
  const double tol = space.tolerances().predicate;
  const IndexConvention& conv = curvature_index_convention();
  const DriftData d = drift_data(randers);
  const int n = space.dim();

  YSReport rep;
  rep.case_label = YSCase::Negative;
  rep.k = k;
  rep.index_convention = conv.label();
  rep.beta_components = beta_form(randers);
  rep.beta_defect = rep.beta_components.cwiseAbs().maxCoeff();
  rep.parallel_defect = randers.drift_parallel_defect();
  rep.killing_defect = killing_defect(space, randers.drift());
  rep.closedness_defect = closedness_defect(space, randers.drift());

  // least squares for b_{i|k} = sigma/2 (g_ik - b_i b_k)
  const Matrix t = d.g - d.b * d.b.transpose();
  const double tt = t.squaredNorm();
  rep.sigma = tt > 0.0 ? 2.0 * (d.cov.cwiseProduct(t)).sum() / tt : 0.0;
  rep.sigma_residual = linalg::max_abs(d.cov - 0.5 * rep.sigma * t);
  rep.sigma_equation_defect = std::abs(rep.sigma * rep.sigma + 16.0 * k);

  const CurvatureTensor& r = space.curvature_tensor();
  const Matrix& g = d.g;
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < n; ++kk)
          rep.curvature_identity_defect =
              std::max(rep.curvature_identity_defect,
                       std::abs(conv.component(r, h, i, j, kk) - 4.0 * k * (g(i, j) * g(h, kk) - g(i, kk) * g(h, j))));

  rep.bullets.push_back(bullet("beta = 0", rep.beta_defect, tol, rep.beta_defect <= tol));
  rep.bullets.push_back(bullet("closed", rep.closedness_defect, tol, rep.closedness_defect <= tol));
  rep.bullets.push_back(bullet("covariant derivative sigma form", rep.sigma_residual, tol, rep.sigma_residual <= tol));
  rep.bullets.push_back(
      bullet("sigma^2 = -16K", rep.sigma_equation_defect, tol, rep.sigma_equation_defect <= tol));
  rep.bullets.push_back(bullet("constant sectional curvature 4K", rep.curvature_identity_defect, tol,
                               rep.curvature_identity_defect <= tol));
  finish(rep);
  return rep;
}

YSReport ys_zero_check(const RandersStructure& randers) {
  const HomogeneousSpace& space = randers.space();
  const double tol = space.tolerances().predicate;
  YSReport rep;
  rep.case_label = YSCase::Zero;
  rep.index_convention = curvature_index_convention().label();
  rep.beta_components = beta_form(randers);
  rep.beta_defect = rep.beta_components.cwiseAbs().maxCoeff();
  rep.parallel_defect = randers.drift_parallel_defect();
  rep.flatness_defect = space.curvature_tensor().max_abs();
  rep.bullets.push_back(bullet("beta = 0", rep.beta_defect, tol, rep.beta_defect <= tol));
  rep.bullets.push_back(bullet("flat (locally Minkowskian)", rep.flatness_defect, tol, rep.flatness_defect <= tol));
  finish(rep);
  return rep;
}

MilnorReport milnor_nonneg_check(const HomogeneousSpace& space, const Vector& x, int samples, std::uint64_t seed) {
  if (samples < 1) throw_usage("milnor check needs at least one sample");
  if (x.size() != space.dim()) throw_input("milnor check: dimension mismatch");
  const double tol = space.tolerances().predicate;
  const double skew = killing_defect(space, x);
  if (skew > tol) {
    std::ostringstream os;
    os << "milnor check needs ad(x) skew-adjoint (defect " << skew << " exceeds " << tol << ")";
    throw_usage(os.str());
  }
  const MetricStructure& g = space.metric();
  const int n = space.dim();
  if (!(g.norm(x) > 0.0)) throw_usage("milnor check needs x != 0");

  const Matrix ad = space.split().projector_m() * space.algebra().ad_matrix(x) * space.split().projector_m();
  const int image_rank = linalg::rank(ad, space.tolerances().rank);
  // <,>-orthonormal basis of the image [x, g] and of its orthogonal complement in m
  Matrix image_basis(n, 0);
  if (image_rank > 0) {
    Eigen::JacobiSVD<Matrix> svd(ad, Eigen::ComputeThinU);
    image_basis = g.gram_schmidt(svd.matrixU().leftCols(image_rank), InnerForm::Metric);
  }
  const Matrix& m = space.split().m_basis();
  Matrix complement(n, 0);
  {
    const Matrix constraints = image_basis.transpose() * g.inner_matrix() * m;
    const Matrix coeff = linalg::null_space(constraints, space.tolerances().rank);
    if (coeff.cols() > 0) complement = m * coeff;
  }

  MilnorReport rep;
  rep.tolerance = tol;
  rep.image_rank = image_rank;
  rep.min_sectional = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr int kRetries = 50;
  for (int s = 0; s < samples; ++s) {
    const bool structured = (s % 2 == 1) && complement.cols() > 0;
    for (int attempt = 0; attempt < kRetries; ++attempt) {
      Vector u;
      if (structured) {
        Vector c(complement.cols());
        for (Eigen::Index q = 0; q < c.size(); ++q) c(q) = normal(rng);
        u = complement * c;
      } else {
        u = Vector(n);
        for (int q = 0; q < n; ++q) u(q) = normal(rng);
        u = space.project(u);
      }
      const double xx = g.inner(x, x), uu = g.inner(u, u), xu = g.inner(x, u);
      if (!(xx * uu - xu * xu > 1e-8 * xx * uu)) continue;
      const double k = space.sectional(x, u);
      const Vector unit = u / std::sqrt(uu);
      double along = 0.0;
      for (Eigen::Index q = 0; q < image_basis.cols(); ++q) {
        const double c = g.inner(unit, image_basis.col(q));
        along += c * c;
      }
      ++rep.samples;
      rep.min_sectional = std::min(rep.min_sectional, k);
      const bool zero = std::abs(k) <= tol;
      const bool orthogonal = along <= tol;
      if (zero) ++rep.equality_samples;
      if (zero != orthogonal) ++rep.characterization_mismatches;
      break;
    }
  }
  if (rep.samples == 0) throw_numerical("milnor check: every draw was degenerate");
  rep.nonnegative = rep.min_sectional >= -tol;
  rep.equality_characterized = rep.characterization_mismatches == 0;
  return rep;
}

ConstantCurvatureReport constant_curvature_probe(const RandersStructure& randers, int samples, std::uint64_t seed,
                                                 double tol) {
  const ScanStatistics st = scan_flags(randers, samples, seed, 1);
  ConstantCurvatureReport rep;
  rep.tolerance = tol;
  rep.spread = st.max - st.min;
  rep.k_estimate = st.mean;
  rep.is_constant = rep.spread <= tol;
  return rep;
}

}  // namespace flagcurv
