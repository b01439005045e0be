#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flagcurv/randers.hpp"

namespace flagcurv::cli {

/// A problem file resolved into validated structures.
struct Problem {
  std::string name;
  std::string origin;  // path or "<memory>"
  std::string digest;  // fnv1a64 of the source bytes
  std::vector<int> subalgebra;
  bool g0_identity = false;
  std::optional<RandersStructure> randers;

  const RandersStructure& structure() const { return *randers; }
  const HomogeneousSpace& space() const { return randers->space(); }
};

Problem load(const std::filesystem::path& path, const Tolerances& tol = kDefaultTolerances);
Problem load_from_string(const std::string& text, const std::string& origin = "<memory>",
                         const Tolerances& tol = kDefaultTolerances);

/// Problem file for the resolved structures (phi written explicitly when not the identity).
std::string serialize(const Problem& problem);

std::string fnv1a64_hex(const std::string& bytes);

/// Comma-separated reals in basis order.
Vector parse_csv_vector(const std::string& text, int dim);

}  // namespace flagcurv::cli
