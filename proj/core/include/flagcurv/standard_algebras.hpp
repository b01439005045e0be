#pragma once

#include "flagcurv/algebra.hpp"

namespace flagcurv::standard {

/// [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2.
LieAlgebra su2();
/// su(2) plus a central e4.
LieAlgebra u2();
/// Two commuting copies of su(2) on (e1,e2,e3) and (e4,e5,e6).
LieAlgebra su2xsu2();
/// [e1,e2]=e3 only.
LieAlgebra heisenberg3();
LieAlgebra abelian(int dim);

}  // namespace flagcurv::standard
