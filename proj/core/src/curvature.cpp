#include "flagcurv/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "flagcurv/error.hpp"
#include "flagcurv/standard_algebras.hpp"

namespace flagcurv {

ConnectionTable::ConnectionTable(int dim) : dim_(dim), gamma_(static_cast<size_t>(dim) * dim * dim, 0.0) {}

Vector ConnectionTable::column(int i, int j) const {
  Vector v(dim_);
  for (int k = 0; k < dim_; ++k) v(k) = at(i, j, k);
  return v;
}

Vector ConnectionTable::apply(const Vector& a, const Vector& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw_input("connection: dimension mismatch");
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (a(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double w = a(i) * b(j);
      if (w == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out(k) += w * at(i, j, k);
    }
  }
  return out;
}

CurvatureTensor::CurvatureTensor(int dim)
    : dim_(dim), r_(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : r_) m = std::max(m, std::abs(v));
  return m;
}

double CurvatureSymmetryDefects::max() const {
  return std::max({antisymmetry_first_pair, antisymmetry_second_pair, pair_symmetry, bianchi});
}

Vector b_plus(const LieAlgebra& alg, const MetricStructure& metric, const Vector& x, const Vector& y) {
  return 0.5 * (alg.bracket(x, metric.apply_phi(y)) + alg.bracket(y, metric.apply_phi(x)));
}

Vector b_minus(const LieAlgebra& alg, const MetricStructure& metric, const Vector& x, const Vector& y) {
  return 0.5 * (alg.bracket(metric.apply_phi(x), y) + alg.bracket(x, metric.apply_phi(y)));
}

ConnectionTable koszul_connection(const LieAlgebra& alg, const MetricStructure& metric) {
  const int n = alg.dim();
  if (metric.dim() != n) throw_input("koszul_connection: metric and algebra dimensions differ");
  ConnectionTable conn(n);
  const auto solver = metric.inner_matrix().ldlt();
  for (int i = 0; i < n; ++i) {
    const Vector ei = alg.basis(i);
    for (int j = 0; j < n; ++j) {
      const Vector ej = alg.basis(j);
      const Vector eij = alg.bracket(ei, ej);
      Vector cov(n);
      for (int k = 0; k < n; ++k) {
        const Vector ek = alg.basis(k);
        cov(k) = 0.5 * (metric.inner(eij, ek) - metric.inner(alg.bracket(ej, ek), ei) +
                        metric.inner(alg.bracket(ek, ei), ej));
      }
      const Vector v = solver.solve(cov);
      for (int k = 0; k < n; ++k) conn.at(i, j, k) = v(k);
    }
  }
  return conn;
}

namespace {

// <,>-orthonormal basis of m.
Matrix metric_frame(const MetricStructure& metric, const ReductiveSplit& split) {
  if (split.m_basis().cols() == 0) return Matrix(metric.dim(), 0);
  return metric.gram_schmidt(split.m_basis(), InnerForm::Metric);
}

}  // namespace

ConnectionTable nomizu_connection(const LieAlgebra& alg, const MetricStructure& metric,
                                  const ReductiveSplit& split) {
  const int n = alg.dim();
  if (split.dim() != n || metric.dim() != n) throw_input("nomizu_connection: dimension mismatch");
  const Matrix frame = metric_frame(metric, split);
  ConnectionTable conn(n);
  for (int i = 0; i < n; ++i) {
    const Vector x = split.project_m(alg.basis(i));
    for (int j = 0; j < n; ++j) {
      const Vector y = split.project_m(alg.basis(j));
      Vector v = 0.5 * split.project_m(alg.bracket(x, y));
      for (Eigen::Index f = 0; f < frame.cols(); ++f) {
        const Vector z = frame.col(f);
        const double u = 0.5 * (metric.inner(split.project_m(alg.bracket(z, x)), y) +
                                metric.inner(x, split.project_m(alg.bracket(z, y))));
        v += u * z;
      }
      for (int k = 0; k < n; ++k) conn.at(i, j, k) = v(k);
    }
  }
  return conn;
}

ConnectionDefects connection_defects(const ConnectionTable& conn, const LieAlgebra& alg,
                                     const MetricStructure& metric, const ReductiveSplit& split) {
  ConnectionDefects d;
  const int n = alg.dim();
  for (int i = 0; i < n; ++i) {
    const Vector ei = split.project_m(alg.basis(i));
    for (int j = 0; j < n; ++j) {
      const Vector ej = split.project_m(alg.basis(j));
      const Vector t = conn.apply(ei, ej) - conn.apply(ej, ei) - split.project_m(alg.bracket(ei, ej));
      d.torsion = std::max(d.torsion, t.cwiseAbs().maxCoeff());
      for (int k = 0; k < n; ++k) {
        const Vector ek = split.project_m(alg.basis(k));
        const double c = metric.inner(conn.apply(ei, ej), ek) + metric.inner(ej, conn.apply(ei, ek));
        d.compatibility = std::max(d.compatibility, std::abs(c));
      }
    }
  }
  return d;
}

Vector curvature_vector(const ConnectionTable& conn, const LieAlgebra& alg, const ReductiveSplit& split,
                        const Vector& a_raw, const Vector& b_raw, const Vector& c_raw) {
  const Vector a = split.project_m(a_raw);
  const Vector b = split.project_m(b_raw);
  const Vector c = split.project_m(c_raw);
  const Vector ab = alg.bracket(a, b);
  const Vector ab_m = split.project_m(ab);
  Vector out = conn.apply(a, conn.apply(b, c)) - conn.apply(b, conn.apply(a, c)) - conn.apply(ab_m, c);
  if (!split.is_trivial()) out -= alg.bracket(split.project_h(ab), c);
  return out;
}

CurvatureTensor curvature_oracle(const ConnectionTable& conn, const LieAlgebra& alg,
                                 const MetricStructure& metric, const ReductiveSplit& split) {
  const int n = alg.dim();
  CurvatureTensor r(n);
  std::vector<Vector> e;
  Matrix lowered(n, n);  // column l: inner-product covector of P e_l
  for (int i = 0; i < n; ++i) e.push_back(split.project_m(alg.basis(i)));
  for (int l = 0; l < n; ++l) lowered.col(l) = metric.inner_matrix() * e[l];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vector v = curvature_vector(conn, alg, split, e[i], e[j], e[k]);
        for (int l = 0; l < n; ++l) r.at(i, j, k, l) = lowered.col(l).dot(v);
      }
  return r;
}

CurvatureSymmetryDefects symmetry_defects(const CurvatureTensor& r) {
  CurvatureSymmetryDefects d;
  const int n = r.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = r.at(i, j, k, l);
          d.antisymmetry_first_pair = std::max(d.antisymmetry_first_pair, std::abs(v + r.at(j, i, k, l)));
          d.antisymmetry_second_pair = std::max(d.antisymmetry_second_pair, std::abs(v + r.at(i, j, l, k)));
          d.pair_symmetry = std::max(d.pair_symmetry, std::abs(v - r.at(k, l, i, j)));
          d.bianchi = std::max(d.bianchi, std::abs(v + r.at(j, k, i, l) + r.at(k, i, j, l)));
        }
  return d;
}

Vector biinvariant_curvature(const LieAlgebra& alg, const MetricStructure& metric, const Vector& x,
                             const Vector& y, const Vector& z, double tol) {
  const double bi = bi_invariance_defect(alg, metric.g0());
  const double phi = metric.phi_identity_defect();
  if (bi > tol || phi > tol) {
    std::ostringstream os;
    os << "biinvariant_curvature requires a bi-invariant g0 and phi = I (bi-invariance defect " << bi
       << ", |phi - I| = " << phi << ", tolerance " << tol << ")";
    throw_usage(os.str());
  }
  return 0.25 * alg.bracket(z, alg.bracket(x, y));
}

double puttmann_printed(const LieAlgebra& alg, const MetricStructure& metric, const ReductiveSplit& split,
                        const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
  auto br = [&](const Vector& a, const Vector& b) { return alg.bracket(a, b); };
  auto brm = [&](const Vector& a, const Vector& b) { return split.project_m(alg.bracket(a, b)); };
  auto ip0 = [&](const Vector& a, const Vector& b) { return metric.inner0(a, b); };
  auto ip = [&](const Vector& a, const Vector& b) { return metric.inner(a, b); };
  auto bp = [&](const Vector& a, const Vector& b) { return b_plus(alg, metric, a, b); };
  auto bm = [&](const Vector& a, const Vector& b) { return b_minus(alg, metric, a, b); };
  auto phi_inv = [&](const Vector& a) { return metric.apply_phi_inverse(a); };

  const double skew = 0.5 * (ip0(bm(x, y), br(z, w)) + ip0(br(x, y), bm(z, w)));
  const double brackets = 0.25 * (ip(br(x, w), brm(y, z)) - ip(br(x, z), brm(y, w)) -
                                  2.0 * ip(br(x, y), brm(z, w)));
  const double sym = ip0(bp(x, w), phi_inv(bp(y, z))) - ip0(bp(x, z), phi_inv(bp(y, w)));
  return skew + brackets + sym;
}

std::string SlotMapping::label() const {
  static const char* names[4] = {"x", "y", "z", "w"};
  std::ostringstream os;
  os << "puttmann(x,y,z,w) = " << (sign > 0 ? "+" : "-") << "<R(" << names[perm[0]] << ","
     << names[perm[1]] << ")" << names[perm[2]] << "," << names[perm[3]] << ">";
  return os.str();
}

double mapped_oracle(const SlotMapping& map, const ConnectionTable& conn, const LieAlgebra& alg,
                     const MetricStructure& metric, const ReductiveSplit& split,
                     const std::array<Vector, 4>& v) {
  const Vector r = curvature_vector(conn, alg, split, v[map.perm[0]], v[map.perm[1]], v[map.perm[2]]);
  return map.sign * metric.inner(r, split.project_m(v[map.perm[3]]));
}

namespace {

SlotMapping pin_slot_mapping() {
  const LieAlgebra alg = standard::su2();
  Matrix phi = Matrix::Zero(3, 3);
  phi.diagonal() << 1.0, 2.0, 3.0;
  const MetricStructure metric = MetricStructure::from_phi(Matrix::Identity(3, 3), phi);
  const ReductiveSplit split = ReductiveSplit::trivial(metric.g0());
  const ConnectionTable conn = koszul_connection(alg, metric);

  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::array<Vector, 4>> probes(6);
  for (auto& p : probes)
    for (auto& v : p) v = Vector::NullaryExpr(3, [&]() { return unif(rng); });
  std::vector<double> printed;
  for (const auto& p : probes) printed.push_back(puttmann_printed(alg, metric, split, p[0], p[1], p[2], p[3]));

  SlotMapping best;
  best.residual = std::numeric_limits<double>::infinity();
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    for (double sign : {1.0, -1.0}) {
      SlotMapping cand;
      cand.perm = perm;
      cand.sign = sign;
      double worst = 0.0;
      for (size_t q = 0; q < probes.size(); ++q)
        worst = std::max(worst, std::abs(printed[q] - mapped_oracle(cand, conn, alg, metric, split, probes[q])));
      cand.residual = worst;
      if (worst < best.residual) best = cand;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.residual > 1e-10) throw_numerical("no slot mapping reproduces the printed curvature formula");
  return best;
}

}  // namespace

const SlotMapping& puttmann_slot_mapping() {
  static const SlotMapping mapping = pin_slot_mapping();
  return mapping;
}

double sectional(const ConnectionTable& conn, const LieAlgebra& alg, const MetricStructure& metric,
                 const ReductiveSplit& split, const Vector& y_raw, const Vector& u_raw) {
  const Vector y = split.project_m(y_raw);
  const Vector u = split.project_m(u_raw);
  const double yy = metric.inner(y, y);
  const double uu = metric.inner(u, u);
  const double yu = metric.inner(y, u);
  const double area2 = yy * uu - yu * yu;
  if (!(area2 > 1e-12 * yy * uu) || yy == 0.0 || uu == 0.0) {
    throw_degenerate("sectional: vectors do not span a plane");
  }
  const Vector r = curvature_vector(conn, alg, split, u, y, y);
  return metric.inner(r, u) / area2;
}

Matrix drift_covariant_matrix(const ConnectionTable& conn, const MetricStructure& metric, const Vector& x) {
  const int n = conn.dim();
  Matrix d(n, n);
  for (int i = 0; i < n; ++i) {
    const Vector nab = conn.apply(Vector::Unit(n, i), x);
    for (int j = 0; j < n; ++j) d(i, j) = metric.inner(nab, Vector::Unit(n, j));
  }
  return d;
}

}  // namespace flagcurv
