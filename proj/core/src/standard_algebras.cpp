#include "flagcurv/standard_algebras.hpp"

namespace flagcurv::standard {

namespace {

std::vector<BracketEntry> su2_entries(int offset) {
  // [e1,e3] = -e2 because [e3,e1] = e2
  return {{offset + 0, offset + 1, {{offset + 2, 1.0}}},
          {offset + 1, offset + 2, {{offset + 0, 1.0}}},
          {offset + 0, offset + 2, {{offset + 1, -1.0}}}};
}

}  // namespace

LieAlgebra su2() { return LieAlgebra::from_brackets(3, su2_entries(0)); }

LieAlgebra u2() { return LieAlgebra::from_brackets(4, su2_entries(0)); }

LieAlgebra su2xsu2() {
  auto entries = su2_entries(0);
  for (auto& e : su2_entries(3)) entries.push_back(e);
  return LieAlgebra::from_brackets(6, entries);
}

LieAlgebra heisenberg3() { return LieAlgebra::from_brackets(3, {{0, 1, {{2, 1.0}}}}); }

LieAlgebra abelian(int dim) { return LieAlgebra::from_brackets(dim, {}); }

}  // namespace flagcurv::standard
