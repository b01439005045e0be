#pragma once

namespace flagcurv {

/// Every threshold used by the library. Reports echo the record they were judged against.
struct Tolerances {
  double structural = 1e-12;        // tensor symmetries, flag orthonormality, connection defects
  double comparison = 1e-10;        // closed form vs. oracle
  double finite_difference = 1e-6;  // closed form vs. finite differences
  double jacobi = 1e-10;            // Lie algebra validation
  double rank = 1e-9;               // relative singular-value cutoff, scale floor 1
  double positive_definite = 1e-10; // minimum eigenvalue
  double gram_schmidt = 1e-12;      // relative residual signalling dependence
  double predicate = 1e-9;          // classification predicates
  double constancy = 1e-8;          // constant-curvature probe spread
  double fd_step = 1e-4;            // finite-difference step, scaled by |Y|
  double non_riemannian = 1e-12;    // |X| above which F is non-Riemannian
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace flagcurv
