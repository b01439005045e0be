#include "flagcurv/flag.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "flagcurv/error.hpp"
#include "flagcurv/standard_algebras.hpp"

namespace flagcurv {

Flag make_flag(const HomogeneousSpace& space, const Vector& y_raw, const Vector& u_raw) {
  if (y_raw.size() != space.dim() || u_raw.size() != space.dim()) throw_input("make_flag: dimension mismatch");
  Matrix cols(space.dim(), 2);
  cols.col(0) = space.project(y_raw);
  cols.col(1) = space.project(u_raw);
  if (!space.is_lie_group()) {
    for (int c = 0; c < 2; ++c) {
      const Vector& raw = c == 0 ? y_raw : u_raw;
      if (!(cols.col(c).norm() > 1e-12 * raw.norm())) {
        throw_degenerate(std::string("make_flag: ") + (c == 0 ? "Y" : "U") + " projects to zero in m");
      }
    }
  }
  const Matrix on = space.metric().gram_schmidt(cols, InnerForm::Metric);
  return Flag{on.col(0), on.col(1)};
}

void check_flag(const HomogeneousSpace& space, const Flag& flag) {
  const MetricStructure& g = space.metric();
  const double tol = space.tolerances().structural;
  if (flag.y.size() != space.dim() || flag.u.size() != space.dim()) throw_input("flag: dimension mismatch");
  const double defect = std::max({std::abs(g.inner(flag.y, flag.y) - 1.0), std::abs(g.inner(flag.u, flag.u) - 1.0),
                                  std::abs(g.inner(flag.y, flag.u))});
  const double off_m = std::max((flag.y - space.project(flag.y)).cwiseAbs().maxCoeff(),
                                (flag.u - space.project(flag.u)).cwiseAbs().maxCoeff());
  if (defect > tol || off_m > tol) {
    std::ostringstream os;
    os << "flag is not orthonormal in m (orthonormality defect " << defect << ", m defect " << off_m << ")";
    throw_input(os.str());
  }
}

double theta(const HomogeneousSpace& space, const Flag& flag) {
  return space.metric().inner(flag.y, space.curvature(flag.u, flag.y, flag.y));
}

double flag_curvature_oracle(const RandersStructure& randers, const Flag& flag) {
  const HomogeneousSpace& space = randers.space();
  check_flag(space, flag);
  if (!randers.is_berwald()) {
    std::ostringstream os;
    os << "flag_curvature_oracle needs a parallel drift (Berwald type); parallel defect "
       << randers.drift_parallel_defect() << "; see berwald_report";
    throw_usage(os.str());
  }
  const Vector& y = flag.y;
  const Vector& u = flag.u;
  const Vector r = space.curvature(u, y, y);
  const double num = randers.fundamental_tensor_closed(y, r, u);
  const double gyy = randers.fundamental_tensor_closed(y, y, y);
  const double guu = randers.fundamental_tensor_closed(y, u, u);
  const double gyu = randers.fundamental_tensor_closed(y, y, u);
  return num / (gyy * guu - gyu * gyu);
}

namespace printed {

namespace {

struct Ops {
  const HomogeneousSpace& space;
  Vector br(const Vector& a, const Vector& b) const { return space.algebra().bracket(a, b); }
  Vector brm(const Vector& a, const Vector& b) const { return space.project(br(a, b)); }
  Vector phi(const Vector& a) const { return space.metric().apply_phi(a); }
  Vector phi_inv(const Vector& a) const { return space.metric().apply_phi_inverse(a); }
  double ip0(const Vector& a, const Vector& b) const { return space.metric().inner0(a, b); }
  double ip(const Vector& a, const Vector& b) const { return space.metric().inner(a, b); }
};

}  // namespace

double alpha_block(const HomogeneousSpace& space, const Vector& y, const Vector& u, const Vector& x) {
  const Ops o{space};
  return 0.25 * (o.ip0(o.br(o.phi(u), y) + o.br(u, o.phi(y)), o.br(y, x)) +
                 o.ip0(o.br(u, y), o.br(o.phi(y), x) + o.br(y, o.phi(x)))) +
         0.75 * o.ip(o.br(y, u), o.brm(y, x)) +
         0.5 * o.ip0(o.br(u, o.phi(x)) + o.br(x, o.phi(u)), o.phi_inv(o.br(y, o.phi(y)))) -
         0.25 * o.ip0(o.br(u, o.phi(y)) + o.br(y, o.phi(u)), o.phi_inv(o.br(y, o.phi(x)) + o.br(x, o.phi(y))));
}

namespace {

double gamma_tail(const Ops& o, const Vector& y, const Vector& u) {
  return 0.75 * o.ip(o.br(y, u), o.brm(y, u)) + o.ip0(o.br(u, o.phi(u)), o.phi_inv(o.br(y, o.phi(y)))) -
         0.25 * o.ip0(o.br(u, o.phi(y)) + o.br(y, o.phi(u)), o.phi_inv(o.br(y, o.phi(u)) + o.br(u, o.phi(y))));
}

}  // namespace

double gamma_block(const HomogeneousSpace& space, const Vector& y, const Vector& u) {
  const Ops o{space};
  return 0.5 * o.ip0(o.br(o.phi(u), y) + o.br(u, o.phi(y)), o.br(y, u)) + gamma_tail(o, y, u);
}

double gamma_statement_block(const HomogeneousSpace& space, const Vector& y, const Vector& u, const Vector& x) {
  const Ops o{space};
  return 0.5 * o.ip0(o.br(o.phi(u), y) + o.br(u, o.phi(y)), o.br(y, x)) + gamma_tail(o, y, u);
}

double basis_drift_block(const HomogeneousSpace& space, const Vector& ei, const Vector& ej, const Vector& x) {
  const Ops o{space};
  return -0.25 * (o.ip0(o.br(o.phi(ej), ei), o.br(ei, x)) + o.ip0(o.br(ej, o.phi(ei)), o.br(ei, x)) +
                  o.ip0(o.br(ej, ei), o.br(o.phi(ei), x)) + o.ip0(o.br(ej, ei), o.br(ei, o.phi(x)))) +
         0.75 * o.ip(o.br(ej, ei), o.br(ei, x)) -
         0.5 * o.ip0(o.br(ej, o.phi(x)) + o.br(x, o.phi(ej)), o.phi_inv(o.br(ei, o.phi(ei)))) +
         0.25 * o.ip0(o.br(ej, o.phi(ei)) + o.br(ei, o.phi(ej)), o.phi_inv(o.br(ei, o.phi(x)) + o.br(x, o.phi(ei))));
}

double basis_plane_block(const HomogeneousSpace& space, const Vector& ei, const Vector& ej) {
  const Ops o{space};
  return -0.5 * (o.ip0(o.br(o.phi(ej), ei), o.br(ei, ej)) + o.ip0(o.br(ej, o.phi(ei)), o.br(ei, ej))) +
         0.75 * o.ip(o.br(ej, ei), o.br(ei, ej)) -
         o.ip0(o.br(ej, o.phi(ej)), o.phi_inv(o.br(ei, o.phi(ei)))) +
         0.25 * o.ip0(o.br(ej, o.phi(ei)) + o.br(ei, o.phi(ej)), o.phi_inv(o.br(ei, o.phi(ej)) + o.br(ej, o.phi(ei))));
}

}  // namespace printed

namespace {

double pin_sign(double printed_value, double oracle_value, const char* what) {
  if (std::abs(std::abs(printed_value) - std::abs(oracle_value)) > 1e-10 || std::abs(oracle_value) < 1e-3) {
    std::ostringstream os;
    os << "cannot pin the sign of the " << what << " block (printed " << printed_value << ", oracle "
       << oracle_value << ")";
    throw_numerical(os.str());
  }
  return printed_value * oracle_value > 0 ? 1.0 : -1.0;
}

PrintedSigns pin_printed_signs() {
  Matrix phi = Matrix::Zero(3, 3);
  phi.diagonal() << 1.0, 2.0, 3.0;
  const HomogeneousSpace space(standard::su2(), MetricStructure::from_phi(Matrix::Identity(3, 3), phi));
  Vector a(3), b(3);
  a << 0.3, -0.7, 0.5;
  b << 0.9, 0.2, -0.4;
  const Flag f = make_flag(space, a, b);
  PrintedSigns s;
  const double gamma_oracle = space.curvature_form(f.u, f.y, f.y, f.u);
  s.homogeneous = pin_sign(printed::gamma_block(space, f.y, f.u), gamma_oracle, "gamma");
  Vector x(3);
  x << 0.2, 0.1, -0.3;
  const double alpha_oracle = space.metric().inner(x, space.curvature(f.u, f.y, f.y));
  if (pin_sign(printed::alpha_block(space, f.y, f.u, x), alpha_oracle, "alpha") != s.homogeneous) {
    throw_numerical("alpha and gamma blocks disagree on the sign convention");
  }
  const Matrix basis = space.metric().gram_schmidt(Matrix::Identity(3, 3), InnerForm::Metric);
  const Vector ei = basis.col(0), ej = basis.col(1);
  s.basis = pin_sign(printed::basis_plane_block(space, ei, ej), space.curvature_form(ej, ei, ei, ej), "basis plane");
  return s;
}

}  // namespace

const PrintedSigns& printed_block_signs() {
  static const PrintedSigns signs = pin_printed_signs();
  return signs;
}

FlagReport flag_curvature_printed(const RandersStructure& randers, const Flag& flag) {
  const HomogeneousSpace& space = randers.space();
  const MetricStructure& g = space.metric();
  check_flag(space, flag);
  const Vector& x = randers.drift();
  const Vector& y = flag.y;
  const Vector& u = flag.u;

  FlagReport rep;
  rep.flag = flag;
  rep.xy = g.inner(x, y);
  rep.xu = g.inner(x, u);
  const double a = rep.xy;
  if (!(std::abs(1.0 + a) > 0.0) || !(std::abs(1.0 - a) > 0.0)) throw_degenerate("<X,Y> = +-1 on the flag");

  rep.alpha = printed::alpha_block(space, y, u, x);
  rep.gamma = printed::gamma_block(space, y, u);
  rep.gamma_statement = printed::gamma_statement_block(space, y, u, x);
  const Vector r = space.curvature(u, y, y);
  rep.alpha_oracle = g.inner(x, r);
  rep.gamma_oracle = g.inner(r, u);
  rep.theta = g.inner(y, r);

  const double numerator = rep.alpha * rep.xu + rep.gamma * (1.0 + a);
  const double signed_numerator = printed_block_signs().homogeneous * numerator;
  rep.det_printed = (1.0 + a) * (1.0 + a) * (1.0 - a);
  rep.k_printed = numerator / rep.det_printed;
  rep.k_printed_signed = signed_numerator / rep.det_printed;
  rep.k_corrected = signed_numerator / ((1.0 + a) * (1.0 + a) * (1.0 + a));

  const double gyy = randers.fundamental_tensor_closed(y, y, y);
  const double guu = randers.fundamental_tensor_closed(y, u, u);
  const double gyu = randers.fundamental_tensor_closed(y, y, u);
  rep.det_fundamental = gyy * guu - gyu * gyu;

  if (randers.is_berwald()) {
    rep.k_oracle = flag_curvature_oracle(randers, flag);
    rep.discrepancy = std::abs(rep.k_printed - *rep.k_oracle);
  }
  return rep;
}

FormulaPair flag_curvature_biinvariant(const RandersStructure& randers, const Flag& flag) {
  const HomogeneousSpace& space = randers.space();
  if (!space.is_lie_group()) throw_usage("the bi-invariant formula applies to Lie groups only");
  if (!space.is_biinvariant()) {
    std::ostringstream os;
    os << "the bi-invariant formula needs a bi-invariant g0 and phi = I (bi-invariance defect "
       << space.validation().g0_bi_invariance_defect << ", |phi - I| = " << space.metric().phi_identity_defect()
       << ")";
    throw_usage(os.str());
  }
  if (!randers.is_berwald()) throw_usage("the bi-invariant formula needs a parallel drift");
  check_flag(space, flag);
  const LieAlgebra& alg = space.algebra();
  const MetricStructure& g = space.metric();
  const Vector& x = randers.drift();
  const Vector& y = flag.y;
  const Vector& u = flag.u;
  const Vector yuy = alg.bracket(y, alg.bracket(u, y));
  const double a = g.inner0(x, y);
  const double num = g.inner0(yuy, x) * g.inner0(x, u) + g.inner0(yuy, u) * (1.0 + a);
  FormulaPair out;
  out.k_printed = num / (4.0 * (1.0 + a) * (1.0 + a) * (1.0 - a));
  out.k_corrected = num / (4.0 * (1.0 + a) * (1.0 + a) * (1.0 + a));
  return out;
}

FormulaPair flag_curvature_basis(const RandersStructure& randers, int i, int j, const Matrix& basis) {
  const HomogeneousSpace& space = randers.space();
  if (!space.is_lie_group()) throw_usage("the basis formula applies to Lie groups only");
  const int n = space.dim();
  if (i == j) throw_usage("flag_curvature_basis needs i != j");
  if (i < 0 || j < 0 || i >= n || j >= n) throw_usage("flag_curvature_basis: index out of range");
  if (basis.rows() != n || basis.cols() != n) throw_input("flag_curvature_basis: basis must be dim x dim");
  const Matrix gram = basis.transpose() * space.metric().inner_matrix() * basis;
  const double defect = linalg::max_abs(gram - Matrix::Identity(n, n));
  if (defect > space.tolerances().structural) {
    std::ostringstream os;
    os << "flag_curvature_basis: basis is not <.,.>-orthonormal (defect " << defect << ")";
    throw_input(os.str());
  }
  const Vector& x = randers.drift();
  const Vector ei = basis.col(i), ej = basis.col(j);
  const double xi = space.metric().inner(x, ei);
  const double xj = space.metric().inner(x, ej);
  const double num = xj * printed::basis_drift_block(space, ei, ej, x) +
                     (1.0 + xi) * printed::basis_plane_block(space, ei, ej);
  const double signed_num = printed_block_signs().basis * num;
  FormulaPair out;
  out.k_printed = num / ((1.0 + xi) * (1.0 + xi) * (1.0 - xi));
  out.k_corrected = signed_num / ((1.0 + xi) * (1.0 + xi) * (1.0 + xi));
  return out;
}

FormulaPair flag_curvature_basis(const RandersStructure& randers, int i, int j) {
  const int n = randers.space().dim();
  return flag_curvature_basis(randers, i, j, randers.metric().gram_schmidt(Matrix::Identity(n, n), InnerForm::Metric));
}

void parallel_for(int n, unsigned threads, const std::function<void(int)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1)));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int i = static_cast<int>(t); i < n; i += static_cast<int>(threads)) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<Flag> sample_flags(const HomogeneousSpace& space, int n, std::uint64_t seed) {
  if (n < 1) throw_usage("flag sampling needs n >= 1");
  constexpr int kMaxRetries = 100;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Flag> flags;
  flags.reserve(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    bool ok = false;
    for (int attempt = 0; attempt < kMaxRetries && !ok; ++attempt) {
      Vector a(space.dim()), b(space.dim());
      for (int k = 0; k < space.dim(); ++k) a(k) = normal(rng);
      for (int k = 0; k < space.dim(); ++k) b(k) = normal(rng);
      try {
        flags.push_back(make_flag(space, a, b));
        ok = true;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Degeneracy) throw;
      }
    }
    if (!ok) throw_numerical("flag sampling: too many degenerate draws");
  }
  return flags;
}

ScanStatistics scan_flags(const RandersStructure& randers, int n, std::uint64_t seed, unsigned threads) {
  if (!randers.is_berwald()) throw_usage("scan_flags needs a parallel drift (Berwald type)");
  const std::vector<Flag> flags = sample_flags(randers.space(), n, seed);
  std::vector<double> k(flags.size()), disc(flags.size());
  parallel_for(n, threads, [&](int i) {
    const FlagReport rep = flag_curvature_printed(randers, flags[static_cast<size_t>(i)]);
    k[static_cast<size_t>(i)] = *rep.k_oracle;
    disc[static_cast<size_t>(i)] = *rep.discrepancy;
  });

  ScanStatistics st;
  st.n = n;
  st.seed = seed;
  st.min = *std::min_element(k.begin(), k.end());
  st.max = *std::max_element(k.begin(), k.end());
  double sum = 0.0;
  for (double v : k) sum += v;
  st.mean = sum / n;
  st.worst_discrepancy = *std::max_element(disc.begin(), disc.end());
  if (st.max > st.min) {
    st.histogram_lo = st.min;
    st.histogram_hi = st.max;
  } else {
    st.histogram_lo = st.min - 0.5;
    st.histogram_hi = st.min + 0.5;
  }
  const double width = (st.histogram_hi - st.histogram_lo) / kHistogramBins;
  for (double v : k) {
    int bin = static_cast<int>((v - st.histogram_lo) / width);
    bin = std::clamp(bin, 0, kHistogramBins - 1);
    ++st.histogram[static_cast<size_t>(bin)];
  }
  st.values = std::move(k);
  return st;
}

}  // namespace flagcurv
