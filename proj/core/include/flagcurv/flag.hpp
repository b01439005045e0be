#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "flagcurv/randers.hpp"

namespace flagcurv {

/// Pole Y and transverse U, orthonormal w.r.t. <.,.> and tangent to m.
struct Flag {
  Vector y;
  Vector u;
};

/// Orthonormalizes (y_raw, u_raw) in that order; Y stays a positive multiple of the
/// (projected) y_raw.
Flag make_flag(const HomogeneousSpace& space, const Vector& y_raw, const Vector& u_raw);

/// Throws unless the flag is orthonormal and tangent to m within the structural tolerance.
void check_flag(const HomogeneousSpace& space, const Flag& flag);

struct FlagReport {
  Flag flag;
  std::optional<double> k_oracle;  // absent when the drift is not parallel
  double k_printed = 0.0;          // A / ((1+a)^2 (1-a)), blocks as printed
  double k_printed_signed = 0.0;   // same denominator, numerator in the oracle sign
  double k_corrected = 0.0;        // numerator in the oracle sign over (1+a)^3
  double alpha = 0.0;              // printed alpha block
  double gamma = 0.0;              // printed gamma block (proof form)
  double gamma_statement = 0.0;    // variant as stated with [Y,X] in the first term
  double alpha_oracle = 0.0;       // <X, R(U,Y)Y>
  double gamma_oracle = 0.0;       // <R(U,Y)Y, U>
  double theta = 0.0;              // <Y, R(U,Y)Y>
  double xy = 0.0;                 // a = <X,Y>
  double xu = 0.0;                 // b = <X,U>
  double det_fundamental = 0.0;    // g_Y(Y,Y) g_Y(U,U) - g_Y(Y,U)^2 from the closed g_Y
  double det_printed = 0.0;        // (1+a)^2 (1-a)
  std::optional<double> discrepancy;  // |k_printed - k_oracle|
};

/// Flag curvature g_Y(R(U,Y)Y,U) / (g_Y(Y,Y) g_Y(U,U) - g_Y(Y,U)^2) with R the Riemannian
/// curvature; valid only for parallel drift (Berwald type). Throws a usage error otherwise.
double flag_curvature_oracle(const RandersStructure& randers, const Flag& flag);

FlagReport flag_curvature_printed(const RandersStructure& randers, const Flag& flag);

/// <Y, R(U,Y)Y>.
double theta(const HomogeneousSpace& space, const Flag& flag);

/// The curvature blocks of the closed-form flag curvature formulas, evaluated verbatim.
namespace printed {

double alpha_block(const HomogeneousSpace& space, const Vector& y, const Vector& u, const Vector& x);
double gamma_block(const HomogeneousSpace& space, const Vector& y, const Vector& u);
double gamma_statement_block(const HomogeneousSpace& space, const Vector& y, const Vector& u, const Vector& x);
/// <R(e_j,e_i)e_i, X> block of the basis formula.
double basis_drift_block(const HomogeneousSpace& space, const Vector& ei, const Vector& ej, const Vector& x);
/// <R(e_j,e_i)e_i, e_j> block of the basis formula.
double basis_plane_block(const HomogeneousSpace& space, const Vector& ei, const Vector& ej);

}  // namespace printed

/// Sign turning the printed curvature blocks into oracle-convention values, pinned on
/// su(2) with phi = diag(1,2,3).
struct PrintedSigns {
  double homogeneous = 1.0;  // alpha/gamma blocks of the general formula
  double basis = 1.0;        // blocks of the orthonormal-basis formula
};
const PrintedSigns& printed_block_signs();

struct FormulaPair {
  double k_printed = 0.0;
  double k_corrected = 0.0;
};

/// Bi-invariant closed form; requires a Lie group, bi-invariant g0 with phi = I, parallel drift.
FormulaPair flag_curvature_biinvariant(const RandersStructure& randers, const Flag& flag);

/// Closed form for the flag span{e_i, e_j} with pole e_i of a <.,.>-orthonormal basis (columns).
FormulaPair flag_curvature_basis(const RandersStructure& randers, int i, int j, const Matrix& basis);
/// Same, with the basis obtained by Gram-Schmidt from the coordinate basis.
FormulaPair flag_curvature_basis(const RandersStructure& randers, int i, int j);

inline constexpr int kHistogramBins = 64;

struct ScanStatistics {
  int n = 0;
  std::uint64_t seed = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double histogram_lo = 0.0;
  double histogram_hi = 0.0;
  std::array<int, kHistogramBins> histogram{};
  double worst_discrepancy = 0.0;
  std::vector<double> values;  // oracle curvature per sample, in sample order
};

/// Samples flags from pairs of standard-normal vectors (projected to m, orthonormalized), using
/// up to `threads` workers (0: hardware concurrency). Output depends only on (randers, n, seed).
ScanStatistics scan_flags(const RandersStructure& randers, int n, std::uint64_t seed, unsigned threads = 0);

/// Draws `n` flags exactly as scan_flags does.
std::vector<Flag> sample_flags(const HomogeneousSpace& space, int n, std::uint64_t seed);

/// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(int n, unsigned threads, const std::function<void(int)>& body);

}  // namespace flagcurv
