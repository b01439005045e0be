#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flagcurv/flag.hpp"

namespace flagcurv {

/// Orthonormal (w.r.t. <.,.>) basis of the invariant vectors X in m with nabla X = 0.
Matrix parallel_space(const HomogeneousSpace& space);

bool is_perfect(const LieAlgebra& alg, double tol = kDefaultTolerances.rank);

/// max over basis pairs |<[x,u],v> + <u,[x,v]>|; zero iff ad(x) is skew-adjoint for <.,.>.
double killing_defect(const HomogeneousSpace& space, const Vector& x);

/// max over basis pairs |<X,[e_i,e_j]>|.
double closedness_defect(const HomogeneousSpace& space, const Vector& x);

struct BerwaldReport {
  double parallel_defect = 0.0;
  double skew_defect = 0.0;
  double derived_orthogonality_defect = 0.0;
  bool is_berwald = false;
  bool non_riemannian = false;
  /// parallel => skew and parallel => orthogonal to [g,g]; vacuously true when not parallel.
  bool implications_hold = true;
  double tolerance = 0.0;
};

BerwaldReport berwald_report(const RandersStructure& randers);

/// beta_j = sum_i X^i (b_{j|i} - b_{i|j}).
Vector beta_form(const RandersStructure& randers);

/// R_hijk = sign * <R(e_a,e_b)e_c,e_d> with (a,b,c,d) a permutation of (h,i,j,k).
struct IndexConvention {
  std::array<int, 4> perm{0, 1, 2, 3};
  double sign = 1.0;
  std::string label() const;
  double component(const CurvatureTensor& r, int h, int i, int j, int k) const;
};

/// Pinned on bi-invariant su(2), where R_hijk = K (g_hk g_ij - g_hj g_ik) with K = 1/4.
const IndexConvention& curvature_index_convention();

struct Bullet {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

enum class YSCase { Positive, Zero, Negative };
std::string to_string(YSCase c);

struct YSReport {
  YSCase case_label = YSCase::Positive;
  double k = 0.0;
  Vector beta_components;
  double beta_defect = 0.0;
  double killing_defect = 0.0;
  double parallel_defect = 0.0;
  double constant_length_defect = 0.0;
  double curvature_identity_defect = 0.0;
  double closedness_defect = 0.0;
  double sigma = 0.0;
  double sigma_residual = 0.0;
  double sigma_equation_defect = 0.0;  // |sigma^2 + 16 K|
  double flatness_defect = 0.0;
  std::string index_convention;
  std::vector<Bullet> bullets;
  bool verdict = false;
  std::vector<std::string> failing() const;
};

/// Positive case: drift a non-parallel Killing field of constant length, curvature identity.
YSReport ys_positive_check(const RandersStructure& randers, double k);
/// Negative case: closed drift, b_{i|k} = sigma/2 (g_ik - b_i b_k) with sigma^2 = -16K, curvature 4K.
YSReport ys_negative_check(const RandersStructure& randers, double k);
/// Zero case: beta = 0 and flat.
YSReport ys_zero_check(const RandersStructure& randers);

struct MilnorReport {
  int samples = 0;
  double min_sectional = 0.0;
  int equality_samples = 0;                // samples with sectional <= tol
  int characterization_mismatches = 0;     // (K ~ 0) != (u orthogonal to [x,g])
  double image_rank = 0.0;                 // dim [x, g]
  bool nonnegative = false;
  bool equality_characterized = false;
  bool pass() const { return nonnegative && equality_characterized; }
  double tolerance = 0.0;
};

/// K(x,u) >= 0 with equality iff u is orthogonal to [x,g]. Half of the samples are drawn from
/// the orthogonal complement of [x,g] so the equality case is exercised. Requires ad(x) skew.
MilnorReport milnor_nonneg_check(const HomogeneousSpace& space, const Vector& x, int samples, std::uint64_t seed);

struct ConstantCurvatureReport {
  bool is_constant = false;
  double k_estimate = 0.0;
  double spread = 0.0;
  double tolerance = 0.0;
};

ConstantCurvatureReport constant_curvature_probe(const RandersStructure& randers, int samples, std::uint64_t seed,
                                                 double tol = kDefaultTolerances.constancy);

}  // namespace flagcurv
