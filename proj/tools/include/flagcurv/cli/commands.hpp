#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "flagcurv/error.hpp"

#include "flagcurv/cli/problem.hpp"
#include "flagcurv/cli/records.hpp"

namespace flagcurv::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandOutput {
  std::string text;
  int exit_code = 0;
};

/// Exit codes: 0 success, 1 input/validation error, 2 usage error, 3 internal numerical failure.
int exit_code_for(const Error& e);

std::string cmd_validate(const Problem& p, Format format);
std::string cmd_flag(const Problem& p, const Vector& y, const Vector& u, Format format);
std::string cmd_scan(const Problem& p, int n, std::uint64_t seed, Format format, unsigned threads = 0);

struct CheckOptions {
  std::optional<double> k;
  std::optional<Vector> x;  // milnor direction; defaults to the drift
  int samples = 1000;
  std::uint64_t seed = 1;
};
/// predicate: berwald | perfect | ys-positive | ys-negative | ys-zero | milnor | constant
std::string cmd_check(const Problem& p, const std::string& predicate, const CheckOptions& opts, Format format);

std::string cmd_compare(const Problem& p, int n, std::uint64_t seed, Format format, unsigned threads = 0);

}  // namespace flagcurv::cli
