#pragma once

#include <stdexcept>
#include <string>

namespace flagcurv {

enum class ErrorKind {
  Input,       // malformed data or violated invariant
  Degeneracy,  // dependent vectors, zero vectors, collapsed projections
  Usage,       // operation called outside its hypotheses
  Numerical,   // internal numerical failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) { throw Error(ErrorKind::Input, msg); }
[[noreturn]] inline void throw_degenerate(const std::string& msg) {
  throw Error(ErrorKind::Degeneracy, msg);
}
[[noreturn]] inline void throw_usage(const std::string& msg) { throw Error(ErrorKind::Usage, msg); }
[[noreturn]] inline void throw_numerical(const std::string& msg) {
  throw Error(ErrorKind::Numerical, msg);
}

}  // namespace flagcurv
